//! One supervised training step: match set, correct set, covering and
//! parameter updates, followed by subsumption, the GA and deletion.

use rand::Rng;

use crate::config::{ExperimentConfig, Representation};
use crate::error::{Result, UcsError};
use crate::evolution;
use crate::matching::condition_degree;
use crate::population::Population;
use crate::rng::LearnerRng;
use crate::rule::{Condition, Rule};
use crate::subsumption;

/// A population index paired with its matching degree for the current input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matched {
    pub idx: usize,
    pub mu: f64,
}

/// Rules of `pop` matching `x` with a positive degree.
pub fn build_match_set(pop: &Population, x: &[Option<f64>]) -> Vec<Matched> {
    pop.rules()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.numerosity > 0)
        .filter_map(|(idx, r)| {
            let mu = condition_degree(&r.condition, x);
            (mu > 0.0).then_some(Matched { idx, mu })
        })
        .collect()
}

/// Members of the match set advocating `class`.
pub fn build_correct_set(pop: &Population, match_set: &[Matched], class: usize) -> Vec<Matched> {
    match_set
        .iter()
        .copied()
        .filter(|m| pop.rule(m.idx).class == class)
        .collect()
}

/// Covering fires when the correct set's summed matching degree is below 1.
pub fn needs_covering(correct_set: &[Matched]) -> bool {
    correct_set.iter().map(|m| m.mu).sum::<f64>() < 1.0
}

fn open_uniform<R: Rng>(rng: &mut R, hi: f64) -> f64 {
    loop {
        let u = rng.random_range(0.0..hi);
        if u > 0.0 {
            return u;
        }
    }
}

/// Create a rule matching `x` with degree 1, already credited with one
/// full-degree match of `class`.
pub fn cover<R: Rng>(
    x: &[Option<f64>],
    class: usize,
    class_count: usize,
    timestamp: u64,
    cfg: &ExperimentConfig,
    rng: &mut R,
) -> Rule {
    let r0 = cfg.r0;
    let condition = match cfg.representation {
        Representation::Trapezoid => {
            let quads: Vec<[f64; 4]> = x
                .iter()
                .map(|xi| match *xi {
                    Some(v) => {
                        let b = v - open_uniform(rng, r0);
                        let c = v + open_uniform(rng, r0);
                        let a = b - open_uniform(rng, r0);
                        let d = c + open_uniform(rng, r0);
                        [a, b, c, d]
                    }
                    None => [0.5 - 2.0 * r0, 0.5 - r0, 0.5 + r0, 0.5 + 2.0 * r0],
                })
                .collect();
            Condition::trapezoid(&quads)
        }
        repr => {
            let mut pairs = Vec::with_capacity(x.len());
            let mut bits = Vec::with_capacity(x.len());
            for xi in x {
                match *xi {
                    Some(v) => pairs.push((v, open_uniform(rng, r0))),
                    None => pairs.push((0.5, r0)),
                }
                let fuzzy = rng.random::<f64>() >= 0.5;
                bits.push(repr == Representation::Adaptive && fuzzy);
            }
            Condition::center_spread(&pairs, &bits)
        }
    };
    let mut rule = Rule::new(condition, class, class_count, timestamp);
    rule.record_match(1.0, class);
    rule
}

/// Credit every match-set member with its degree on an input of `class`.
pub fn update_rules(pop: &mut Population, match_set: &[Matched], class: usize) {
    for m in match_set {
        pop.rule_mut(m.idx).record_match(m.mu, class);
    }
}

/// What happened during one training step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepOutcome {
    pub covered: bool,
    pub ga_ran: bool,
}

/// Run one training step on labelled input `(x, class)` at time `t`.
pub fn train_step(
    pop: &mut Population,
    x: &[Option<f64>],
    class: usize,
    t: u64,
    cfg: &ExperimentConfig,
    rng: &mut LearnerRng,
) -> Result<StepOutcome> {
    if x.len() != pop.dims() {
        return Err(UcsError::DimensionMismatch { expected: pop.dims(), got: x.len() });
    }
    let mut outcome = StepOutcome::default();
    let match_set = build_match_set(pop, x);
    let mut correct_set = build_correct_set(pop, &match_set, class);

    if needs_covering(&correct_set) {
        let rule = cover(x, class, pop.class_count(), t, cfg, &mut rng.covering);
        let idx = pop.insert_with_duplicate_merge(rule);
        if !correct_set.iter().any(|m| m.idx == idx) {
            correct_set.push(Matched { idx, mu: 1.0 });
        }
        outcome.covered = true;
    }

    // The covered rule was credited at creation and is not in the match set.
    update_rules(pop, &match_set, class);

    if cfg.do_correct_set_subsumption {
        subsumption::correct_set_subsumption(&correct_set, pop, cfg);
        correct_set.retain(|m| pop.is_live(m.idx));
    }

    outcome.ga_ran = evolution::run_ga(&correct_set, pop, t, cfg, rng)?;
    evolution::delete_to_capacity(pop, cfg, &mut rng.deletion);
    pop.purge();
    Ok(outcome)
}
