//! Generality tests based on membership overlap area, subsumption and the
//! merge of overlapping triangular sets.

use crate::config::ExperimentConfig;
use crate::error::{Result, UcsError};
use crate::population::Population;
use crate::rule::{Condition, FuzzySet, Rule};
use crate::training::Matched;

/// Slack for floating-point comparisons of areas.
const AREA_EPS: f64 = 1e-12;

/// Linear piece of a membership function on `[x0, x1)`.
#[derive(Debug, Clone, Copy)]
struct Piece {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Piece {
    fn at(&self, x: f64) -> f64 {
        if self.x1 == self.x0 {
            return self.y0;
        }
        self.y0 + (self.y1 - self.y0) * (x - self.x0) / (self.x1 - self.x0)
    }
}

fn pieces(set: &FuzzySet, fuzzy: bool) -> Vec<Piece> {
    let raw = match *set {
        FuzzySet::CenterSpread { center, spread } if fuzzy => vec![
            Piece { x0: center - spread, x1: center, y0: 0.0, y1: 1.0 },
            Piece { x0: center, x1: center + spread, y0: 1.0, y1: 0.0 },
        ],
        FuzzySet::CenterSpread { center, spread } => {
            vec![Piece { x0: center - spread, x1: center + spread, y0: 1.0, y1: 1.0 }]
        }
        FuzzySet::Trapezoid { a, b, c, d } => vec![
            Piece { x0: a, x1: b, y0: 0.0, y1: 1.0 },
            Piece { x0: b, x1: c, y0: 1.0, y1: 1.0 },
            Piece { x0: c, x1: d, y0: 1.0, y1: 0.0 },
        ],
    };
    raw.into_iter().filter(|p| p.x1 > p.x0).collect()
}

/// Value of the function on the open interval around `mid`, extended
/// linearly to `x`.
fn value_near(pieces: &[Piece], mid: f64, x: f64) -> f64 {
    pieces
        .iter()
        .find(|p| p.x0 <= mid && mid < p.x1)
        .map_or(0.0, |p| p.at(x))
}

/// Exact area under `min(mu1, mu2)`.
///
/// `fuzzy*` are the indicator bits of the two sets (ignored for trapezoids).
pub fn overlap_area(set1: &FuzzySet, fuzzy1: bool, set2: &FuzzySet, fuzzy2: bool) -> f64 {
    let f = pieces(set1, fuzzy1);
    let g = pieces(set2, fuzzy2);
    let mut xs: Vec<f64> = f.iter().chain(&g).flat_map(|p| [p.x0, p.x1]).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut area = 0.0;
    for w in xs.windows(2) {
        let (p, q) = (w[0], w[1]);
        let mid = 0.5 * (p + q);
        let (f0, f1) = (value_near(&f, mid, p), value_near(&f, mid, q));
        let (g0, g1) = (value_near(&g, mid, p), value_near(&g, mid, q));
        let (d0, d1) = (f0 - g0, f1 - g1);
        if d0 * d1 < 0.0 {
            // The two lines cross inside the interval.
            let r = p + (q - p) * d0 / (d0 - d1);
            let yr = f0 + (f1 - f0) * (r - p) / (q - p);
            area += 0.5 * (r - p) * (f0.min(g0) + yr) + 0.5 * (q - r) * (yr + f1.min(g1));
        } else {
            area += 0.5 * (q - p) * (f0.min(g0) + f1.min(g1));
        }
    }
    area
}

/// Whether `sub` is at least as general as `tos` in every dimension.
pub fn is_more_general(sub: &Condition, tos: &Condition, theta_overlap: f64) -> bool {
    sub.sets().iter().zip(tos.sets()).enumerate().all(|(i, (s, t))| {
        let (bs, bt) = (sub.bit(i), tos.bit(i));
        let both_crisp = bs == Some(false) && bt == Some(false);
        let tos_fuzzy = bt.unwrap_or(false);
        let required = t.area(tos_fuzzy) * if both_crisp { 1.0 } else { theta_overlap };
        overlap_area(s, bs.unwrap_or(false), t, tos_fuzzy) + AREA_EPS >= required
    })
}

/// Accurate and experienced enough to subsume others.
pub fn can_subsume(rule: &Rule, cfg: &ExperimentConfig) -> bool {
    rule.fitness > cfg.f0 && rule.experience > cfg.theta_sub
}

/// Absorb `tos` into `sub`: numerosities add and `tos` is removed.
pub fn subsume(pop: &mut Population, sub: usize, tos: usize) -> Result<()> {
    if sub == tos || !pop.is_live(sub) {
        return Err(UcsError::NotInPopulation(sub));
    }
    let removed = pop.remove(tos)?;
    pop.rule_mut(sub).numerosity += removed.numerosity;
    Ok(())
}

/// Widen `sub` to the support envelope of both rules where allowed.
///
/// Only applies when `tos` is itself accurate and experienced. For
/// center-spread conditions only dimensions where both indicator bits are 1
/// are merged. Returns whether any dimension changed.
pub fn try_merge(sub: &mut Rule, tos: &Rule, cfg: &ExperimentConfig) -> bool {
    if !can_subsume(tos, cfg) {
        return false;
    }
    let tos_bits: Vec<Option<bool>> = (0..tos.condition.dims()).map(|i| tos.condition.bit(i)).collect();
    let sub_bits: Vec<Option<bool>> = (0..sub.condition.dims()).map(|i| sub.condition.bit(i)).collect();
    let mut merged = false;
    for (i, (s, t)) in sub
        .condition
        .sets_mut()
        .iter_mut()
        .zip(tos.condition.sets())
        .enumerate()
    {
        let next = match (*s, *t) {
            (FuzzySet::CenterSpread { .. }, FuzzySet::CenterSpread { .. }) => {
                if sub_bits[i] != Some(true) || tos_bits[i] != Some(true) {
                    continue;
                }
                let (l1, u1) = s.support();
                let (l2, u2) = t.support();
                let (l, u) = (l1.min(l2), u1.max(u2));
                FuzzySet::center_spread((u + l) / 2.0, (u - l) / 2.0)
            }
            (
                FuzzySet::Trapezoid { a: a1, b: b1, c: c1, d: d1 },
                FuzzySet::Trapezoid { a: a2, b: b2, c: c2, d: d2 },
            ) => FuzzySet::trapezoid([a1.min(a2), b1.min(b2), c1.max(c2), d1.max(d2)]),
            _ => continue,
        };
        if next != *s {
            *s = next;
            merged = true;
        }
    }
    merged
}

/// Let the most general qualified rule of the correct set absorb every
/// other member it is more general than.
pub fn correct_set_subsumption(correct_set: &[Matched], pop: &mut Population, cfg: &ExperimentConfig) {
    let best = correct_set
        .iter()
        .map(|m| m.idx)
        .filter(|&i| pop.is_live(i) && can_subsume(pop.rule(i), cfg))
        .map(|i| {
            let c = &pop.rule(i).condition;
            (i, c.summed_area(), c.summed_spread())
        })
        .reduce(|acc, cand| {
            let better = cand.1 > acc.1
                || (cand.1 == acc.1 && (cand.2 > acc.2 || (cand.2 == acc.2 && cand.0 < acc.0)));
            if better { cand } else { acc }
        });
    let Some((sub, _, _)) = best else { return };

    for m in correct_set {
        let tos = m.idx;
        if tos == sub || !pop.is_live(tos) {
            continue;
        }
        if !is_more_general(&pop.rule(sub).condition, &pop.rule(tos).condition, cfg.theta_overlap) {
            continue;
        }
        if cfg.do_merge {
            let tos_rule = pop.rule(tos).clone();
            try_merge(pop.rule_mut(sub), &tos_rule, cfg);
        }
        subsume(pop, sub, tos).expect("both rules are live");
    }
}

/// Absorb `child` into a parent that is qualified and more general.
/// Returns true when the child was absorbed.
pub fn ga_subsumption(
    child: &Rule,
    parents: [usize; 2],
    pop: &mut Population,
    cfg: &ExperimentConfig,
) -> bool {
    for p in parents {
        if !pop.is_live(p) {
            continue;
        }
        let parent = pop.rule(p);
        if can_subsume(parent, cfg) && is_more_general(&parent.condition, &child.condition, cfg.theta_overlap) {
            pop.rule_mut(p).numerosity += child.numerosity;
            return true;
        }
    }
    false
}
