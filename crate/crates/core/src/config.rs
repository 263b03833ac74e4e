//! Hyperparameters and run protocol settings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, UcsError};

/// Rule condition encoding used by a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Center-spread hyperrectangles; the fuzzy indicator is pinned to all-zero.
    Crisp,
    /// Four-vertex hypertrapezoids.
    Trapezoid,
    /// Center-spread sets whose per-dimension shape (rectangle or triangle)
    /// is chosen by an evolved fuzzy indicator bit.
    Adaptive,
}

impl Representation {
    pub const ALL: [Representation; 3] = [
        Representation::Crisp,
        Representation::Trapezoid,
        Representation::Adaptive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Crisp => "crisp",
            Representation::Trapezoid => "trapezoid",
            Representation::Adaptive => "adaptive",
        }
    }

    pub fn uses_center_spread(self) -> bool {
        !matches!(self, Representation::Trapezoid)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Representation {
    type Err = UcsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "crisp" => Ok(Representation::Crisp),
            "trapezoid" => Ok(Representation::Trapezoid),
            "adaptive" => Ok(Representation::Adaptive),
            other => Err(UcsError::Config(format!("unknown representation `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Population capacity in micro rules.
    pub n: usize,
    /// Accuracy threshold for subsumption and directed generalization.
    pub f0: f64,
    /// Fitness exponent.
    pub nu: f64,
    /// Crossover probability.
    pub chi: f64,
    /// Per-gene mutation probability.
    pub p_mut: f64,
    /// Fitness fraction below which experienced rules get a deletion penalty.
    pub delta: f64,
    /// Maximum mutation magnitude.
    pub m0: f64,
    /// Maximum spread at covering.
    pub r0: f64,
    pub theta_ga: f64,
    pub theta_del: f64,
    pub theta_sub: f64,
    /// Tournament size as a fraction of the correct set's micro rules.
    pub tau: f64,
    pub theta_exploit: f64,
    pub theta_overlap: f64,
    pub representation: Representation,
    pub do_correct_set_subsumption: bool,
    pub do_ga_subsumption: bool,
    pub do_merge: bool,
    pub steps: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig::benchmark(Representation::Adaptive)
    }
}

impl ExperimentConfig {
    /// Settings used for the checkerboard benchmarks.
    pub fn benchmark(representation: Representation) -> Self {
        ExperimentConfig {
            n: 6400,
            f0: 0.99,
            nu: 10.0,
            chi: 0.8,
            p_mut: 0.04,
            delta: 0.1,
            m0: 0.1,
            r0: 0.2,
            theta_ga: 50.0,
            theta_del: 50.0,
            theta_sub: 50.0,
            tau: 0.4,
            theta_exploit: 10.0,
            theta_overlap: default_theta_overlap(representation),
            representation,
            do_correct_set_subsumption: true,
            do_ga_subsumption: true,
            do_merge: true,
            steps: 200_000,
            seed: 0,
        }
    }

    /// Benchmark settings adjusted for noisy inputs (ν=1, F₀=0.95).
    pub fn noisy_benchmark(representation: Representation) -> Self {
        ExperimentConfig {
            nu: 1.0,
            f0: 0.95,
            ..ExperimentConfig::benchmark(representation)
        }
    }

    /// Settings for dataset cross-validation (r₀=1).
    pub fn real_world(representation: Representation) -> Self {
        ExperimentConfig {
            r0: 1.0,
            ..ExperimentConfig::benchmark(representation)
        }
    }

    /// Switch representation, carrying the matching default θ_overlap along.
    pub fn with_representation(mut self, representation: Representation) -> Self {
        if self.theta_overlap == default_theta_overlap(self.representation) {
            self.theta_overlap = default_theta_overlap(representation);
        }
        self.representation = representation;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(UcsError::Config(msg));
        if self.n == 0 {
            return err("n must be positive".into());
        }
        for (name, v) in [
            ("theta_ga", self.theta_ga),
            ("theta_del", self.theta_del),
            ("theta_sub", self.theta_sub),
            ("theta_exploit", self.theta_exploit),
            ("delta", self.delta),
            ("f0", self.f0),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return err(format!("{name} must be positive, got {v}"));
            }
        }
        for (name, v) in [
            ("tau", self.tau),
            ("chi", self.chi),
            ("p_mut", self.p_mut),
            ("r0", self.r0),
            ("m0", self.m0),
            ("theta_overlap", self.theta_overlap),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return err(format!("{name} must lie in (0, 1], got {v}"));
            }
        }
        if !(self.nu >= 1.0 && self.nu.is_finite()) {
            return err(format!("nu must be >= 1, got {}", self.nu));
        }
        Ok(())
    }

    /// Set a field from its textual key and value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let key = key.trim();
        match key.to_ascii_lowercase().as_str() {
            "n" => self.n = parse(key, value)?,
            "f0" => self.f0 = parse(key, value)?,
            "nu" => self.nu = parse(key, value)?,
            "chi" => self.chi = parse(key, value)?,
            "p_mut" => self.p_mut = parse(key, value)?,
            "delta" => self.delta = parse(key, value)?,
            "m0" => self.m0 = parse(key, value)?,
            "r0" => self.r0 = parse(key, value)?,
            "theta_ga" => self.theta_ga = parse(key, value)?,
            "theta_del" => self.theta_del = parse(key, value)?,
            "theta_sub" => self.theta_sub = parse(key, value)?,
            "tau" => self.tau = parse(key, value)?,
            "theta_exploit" => self.theta_exploit = parse(key, value)?,
            "theta_overlap" => self.theta_overlap = parse(key, value)?,
            "representation" => self.representation = value.parse()?,
            "do_correct_set_subsumption" => self.do_correct_set_subsumption = parse_bool(key, value)?,
            "do_ga_subsumption" => self.do_ga_subsumption = parse_bool(key, value)?,
            "do_merge" => self.do_merge = parse_bool(key, value)?,
            "steps" => self.steps = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            _ => return Err(UcsError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Apply a flat `key=value` text on top of `self`. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                UcsError::Config(format!("line {}: expected key=value", lineno + 1))
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Render as `key=value` lines accepted by [`ExperimentConfig::apply_text`].
    pub fn to_text(&self) -> String {
        format!(
            "n={}\nf0={}\nnu={}\nchi={}\np_mut={}\ndelta={}\nm0={}\nr0={}\ntheta_ga={}\n\
             theta_del={}\ntheta_sub={}\ntau={}\ntheta_exploit={}\ntheta_overlap={}\n\
             representation={}\ndo_correct_set_subsumption={}\ndo_ga_subsumption={}\n\
             do_merge={}\nsteps={}\nseed={}\n",
            self.n,
            self.f0,
            self.nu,
            self.chi,
            self.p_mut,
            self.delta,
            self.m0,
            self.r0,
            self.theta_ga,
            self.theta_del,
            self.theta_sub,
            self.tau,
            self.theta_exploit,
            self.theta_overlap,
            self.representation,
            self.do_correct_set_subsumption,
            self.do_ga_subsumption,
            self.do_merge,
            self.steps,
            self.seed
        )
    }
}

fn default_theta_overlap(representation: Representation) -> f64 {
    match representation {
        Representation::Trapezoid => 0.8,
        _ => 0.5,
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| UcsError::Config(format!("bad value `{value}` for `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(UcsError::Config(format!("bad boolean `{value}` for `{key}`"))),
    }
}
