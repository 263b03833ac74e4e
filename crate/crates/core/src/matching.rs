//! Membership evaluation and rule matching degree.
//!
//! All intervals are half-open `[lo, hi)`. A missing input value matches
//! every set with degree 1.

use crate::error::{Result, UcsError};
use crate::rule::{Condition, FuzzySet, Rule};

/// Membership degree of `x` in `set`. `bit` is the fuzzy indicator of the
/// dimension (`Some(false)` rectangle, `Some(true)` triangle) and is ignored
/// for trapezoids; `None` on a center-spread set is read as a rectangle.
pub fn eval_membership(set: &FuzzySet, bit: Option<bool>, x: Option<f64>) -> f64 {
    let Some(x) = x else { return 1.0 };
    match *set {
        FuzzySet::CenterSpread { center, spread } => {
            let (lo, hi) = (center - spread, center + spread);
            if x < lo || x >= hi {
                0.0
            } else if bit != Some(true) || x == center {
                1.0
            } else if x < center {
                ((x - lo) / spread).min(1.0)
            } else {
                ((hi - x) / spread).min(1.0)
            }
        }
        FuzzySet::Trapezoid { a, b, c, d } => {
            if x < a || x >= d {
                0.0
            } else if x < b {
                (x - a) / (b - a)
            } else if x < c {
                1.0
            } else {
                (d - x) / (d - c)
            }
        }
    }
}

/// Product of per-dimension memberships. Stops early once the product hits 0.
pub(crate) fn condition_degree(cond: &Condition, x: &[Option<f64>]) -> f64 {
    let mut mu = 1.0;
    for (i, (set, &xi)) in cond.sets().iter().zip(x).enumerate() {
        mu *= eval_membership(set, cond.bit(i), xi);
        if mu == 0.0 {
            return 0.0;
        }
    }
    mu
}

/// Matching degree of `rule` for input `x`.
pub fn matching_degree(rule: &Rule, x: &[Option<f64>]) -> Result<f64> {
    let dims = rule.condition.dims();
    if x.len() != dims {
        return Err(UcsError::DimensionMismatch { expected: dims, got: x.len() });
    }
    Ok(condition_degree(&rule.condition, x))
}
