//! Test-mode prediction by fitness-weighted fuzzy voting.

use crate::matching::condition_degree;
use crate::population::Population;

/// Predict the class of `x`.
///
/// Each matching rule with experience above `theta_exploit` adds
/// `F * mu * num` to its class. The class with the largest vote wins (lowest
/// index on ties). With no eligible voters, `fallback_class` is returned.
pub fn predict(pop: &Population, x: &[Option<f64>], theta_exploit: f64, fallback_class: usize) -> usize {
    let mut votes = vec![0.0; pop.class_count()];
    let mut any = false;
    for rule in pop.live() {
        if rule.experience <= theta_exploit {
            continue;
        }
        let mu = condition_degree(&rule.condition, x);
        if mu > 0.0 {
            votes[rule.class] += rule.fitness * mu * rule.numerosity as f64;
            any = true;
        }
    }
    if !any || votes.iter().all(|&v| v == 0.0) {
        return fallback_class;
    }
    votes
        .iter()
        .enumerate()
        .fold((fallback_class, f64::NEG_INFINITY), |best, (j, &v)| if v > best.1 { (j, v) } else { best })
        .0
}
