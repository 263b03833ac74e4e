//! Michigan-style supervised learning classifier systems over real-valued
//! inputs with three rule encodings: crisp hyperrectangles, fuzzy
//! hypertrapezoids, and center-spread sets whose per-dimension shape
//! (rectangle or triangle) is itself evolved through a fuzzy indicator bit.
//!
//! The crate also carries the checkerboard benchmarks, a delimited-text
//! dataset loader with stratified cross-validation, and landscape renderers.

pub mod config;
pub mod dataset;
pub mod environment;
pub mod error;
pub mod evolution;
pub mod harness;
pub mod inference;
pub mod matching;
pub mod population;
pub mod render;
pub mod rng;
pub mod rule;
pub mod subsumption;
pub mod training;

pub use config::{ExperimentConfig, Representation};
pub use environment::{BenchmarkSpec, Problem};
pub use error::{Result, UcsError};
pub use population::Population;
pub use rule::{Condition, FuzzySet, Rule};
