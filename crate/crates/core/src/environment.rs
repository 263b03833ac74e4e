//! Checkerboard benchmark problems.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Result, UcsError};

/// Largest value a clamped input may take, keeping it inside `[0, 1)`.
const UPPER_CLAMP: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Axis-aligned checkerboard.
    Cb,
    /// Checkerboard rotated by 45 degrees about the center of the square.
    Rcb,
    /// Axis-aligned checkerboard with Gaussian noise on training inputs.
    Ncb,
}

impl Problem {
    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Cb => "cb",
            Problem::Rcb => "rcb",
            Problem::Ncb => "ncb",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = UcsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cb" => Ok(Problem::Cb),
            "rcb" => Ok(Problem::Rcb),
            "ncb" => Ok(Problem::Ncb),
            other => Err(UcsError::Config(format!("unknown problem `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkSpec {
    pub kind: Problem,
    pub divisions: u32,
    /// Standard deviation of training noise; used by [`Problem::Ncb`] only.
    pub sigma: f64,
}

impl BenchmarkSpec {
    pub fn new(kind: Problem) -> Self {
        BenchmarkSpec { kind, divisions: 5, sigma: 0.05 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.divisions == 0 {
            return Err(UcsError::Config("divisions must be at least 1".into()));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(UcsError::Config(format!("sigma must be non-negative, got {}", self.sigma)));
        }
        Ok(())
    }

    /// Class of a clean input.
    pub fn classify(&self, x1: f64, x2: f64) -> usize {
        match self.kind {
            Problem::Cb | Problem::Ncb => cb_classify(x1, x2, self.divisions),
            Problem::Rcb => rcb_classify(x1, x2, self.divisions),
        }
    }

    /// Uniform clean input and its class.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> ([f64; 2], usize) {
        let x = [rng.random::<f64>(), rng.random::<f64>()];
        (x, self.classify(x[0], x[1]))
    }

    /// Training sample: labelled from the clean input, then perturbed for NCB.
    pub fn training_sample<R: Rng, N: Rng>(&self, inputs: &mut R, noise: &mut N) -> ([f64; 2], usize) {
        let (x, class) = self.sample(inputs);
        match self.kind {
            Problem::Ncb => (perturb(x, self.sigma, noise), class),
            _ => (x, class),
        }
    }
}

fn cell_parity(u: f64, v: f64, divisions: u32) -> usize {
    let n = divisions as f64;
    let i = (u * n).floor() as i64;
    let j = (v * n).floor() as i64;
    (i + j).rem_euclid(2) as usize
}

/// Parity of the grid cell holding `(x1, x2)`; even cells are class 0.
pub fn cb_classify(x1: f64, x2: f64, divisions: u32) -> usize {
    cell_parity(x1, x2, divisions)
}

/// Checkerboard class after rotating the input by -45 degrees about (0.5, 0.5).
pub fn rcb_classify(x1: f64, x2: f64, divisions: u32) -> usize {
    let (d1, d2) = (x1 - 0.5, x2 - 0.5);
    let u = 0.5 + (d1 + d2) * FRAC_1_SQRT_2;
    let v = 0.5 + (d2 - d1) * FRAC_1_SQRT_2;
    cell_parity(u, v, divisions)
}

/// Add `N(0, sigma^2)` noise per dimension and clamp into `[0, 1)`.
pub fn perturb<R: Rng, const D: usize>(x: [f64; D], sigma: f64, rng: &mut R) -> [f64; D] {
    if sigma == 0.0 {
        return x;
    }
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and non-negative");
    x.map(|xi| (xi + normal.sample(rng)).clamp(0.0, UPPER_CLAMP))
}
