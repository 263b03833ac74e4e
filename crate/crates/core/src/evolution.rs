//! Steady-state GA over the correct set: activation, tournament selection,
//! uniform crossover, mutation and capacity-bounded deletion.

use rand::Rng;

use crate::config::{ExperimentConfig, Representation};
use crate::error::{Result, UcsError};
use crate::population::Population;
use crate::rng::LearnerRng;
use crate::rule::{FuzzySet, Rule, VERTEX_MAX, VERTEX_MIN};
use crate::subsumption;
use crate::training::Matched;

/// Floor applied to fitness before raising it to ν in deletion votes.
const DELETION_FITNESS_FLOOR: f64 = 0.01;

/// True when the numerosity-weighted mean GA timestamp of the correct set
/// lags `t` by more than `theta_ga`.
pub fn should_run_ga(pop: &Population, correct_set: &[Matched], t: u64, theta_ga: f64) -> bool {
    let (weighted, total) = correct_set.iter().fold((0.0, 0.0), |(w, n), m| {
        let r = pop.rule(m.idx);
        let num = r.numerosity as f64;
        (w + r.ga_timestamp as f64 * num, n + num)
    });
    if total == 0.0 {
        return false;
    }
    t as f64 - weighted / total > theta_ga
}

/// Pick a parent from the correct set.
///
/// Samples `ceil(tau * micro)` micro rules with replacement from the members
/// with non-negative fitness and keeps the one maximizing `F^nu * mu`. Falls
/// back to a uniform pick when every member has negative fitness.
pub fn tournament_select<R: Rng>(
    pop: &Population,
    correct_set: &[Matched],
    nu: f64,
    tau: f64,
    rng: &mut R,
) -> Result<Matched> {
    if correct_set.is_empty() {
        return Err(UcsError::EmptyCorrectSet);
    }
    let pool: Vec<(Matched, u64)> = correct_set
        .iter()
        .filter_map(|m| {
            let r = pop.rule(m.idx);
            (r.fitness >= 0.0 && r.numerosity > 0).then_some((*m, r.numerosity as u64))
        })
        .collect();
    let total: u64 = pool.iter().map(|(_, n)| n).sum();
    if total == 0 {
        return Ok(correct_set[rng.random_range(0..correct_set.len())]);
    }
    let samples = ((tau * total as f64).ceil() as u64).max(1);
    let mut best: Option<(Matched, f64)> = None;
    for _ in 0..samples {
        let mut pick = rng.random_range(0..total);
        let m = pool
            .iter()
            .find(|(_, n)| {
                if pick < *n {
                    true
                } else {
                    pick -= n;
                    false
                }
            })
            .map(|(m, _)| *m)
            .expect("pick < total");
        let score = pop.rule(m.idx).fitness.powf(nu) * m.mu;
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((m, score));
        }
    }
    Ok(best.expect("at least one sample").0)
}

/// A child rule on its way into the population.
#[derive(Debug, Clone, PartialEq)]
pub struct Offspring {
    /// Condition and class from the parents; statistics already reset.
    pub rule: Rule,
    /// Whether crossover exchanged at least one gene.
    pub crossed: bool,
    /// Fitness of the parent the child was copied from.
    pub parent_fitness: f64,
}

fn fresh_child(parent: &Rule, timestamp: u64) -> Offspring {
    let mut rule = parent.clone();
    rule.reset_statistics(timestamp);
    Offspring { rule, crossed: false, parent_fitness: parent.fitness }
}

/// Uniform crossover. With probability `chi`, every gene (centers, spreads,
/// indicator bits, trapezoid vertices) swaps between the children with
/// probability 1/2; otherwise the children are copies of the parents.
pub fn crossover_uniform<R: Rng>(
    p1: &Rule,
    p2: &Rule,
    chi: f64,
    timestamp: u64,
    rng: &mut R,
) -> (Offspring, Offspring) {
    let mut c1 = fresh_child(p1, timestamp);
    let mut c2 = fresh_child(p2, timestamp);
    if rng.random::<f64>() >= chi {
        return (c1, c2);
    }
    let mut swapped = false;
    let dims = c1.rule.condition.dims();
    for i in 0..dims {
        let s1 = &mut c1.rule.condition.sets_mut()[i];
        let s2 = &mut c2.rule.condition.sets_mut()[i];
        match (s1, s2) {
            (
                FuzzySet::CenterSpread { center: ca, spread: sa },
                FuzzySet::CenterSpread { center: cb, spread: sb },
            ) => {
                if rng.random_bool(0.5) {
                    std::mem::swap(ca, cb);
                    swapped = true;
                }
                if rng.random_bool(0.5) {
                    std::mem::swap(sa, sb);
                    swapped = true;
                }
            }
            (
                FuzzySet::Trapezoid { a: a1, b: b1, c: cc1, d: d1 },
                FuzzySet::Trapezoid { a: a2, b: b2, c: cc2, d: d2 },
            ) => {
                for (x, y) in [(a1, a2), (b1, b2), (cc1, cc2), (d1, d2)] {
                    if rng.random_bool(0.5) {
                        std::mem::swap(x, y);
                        swapped = true;
                    }
                }
            }
            _ => unreachable!("parents share one representation"),
        }
        if let (Some(b1), Some(b2)) = (c1.rule.condition.indicator_mut(), c2.rule.condition.indicator_mut()) {
            if rng.random_bool(0.5) {
                std::mem::swap(&mut b1[i], &mut b2[i]);
                swapped = true;
            }
        }
    }
    for child in [&mut c1, &mut c2] {
        for set in child.rule.condition.sets_mut() {
            if let FuzzySet::Trapezoid { a, b, c, d } = *set {
                *set = FuzzySet::trapezoid([a, b, c, d]);
            }
        }
        child.crossed = swapped;
    }
    (c1, c2)
}

/// Mutate every gene independently with probability `p_mut`.
///
/// Centers shift by `U[-m0, m0)`. Spreads grow by `U[0, m0)` when the
/// parent was accurate (`F > F0`) and no crossover took place, otherwise
/// they shift by `U[-m0, m0)`. Indicator bits flip (adaptive only).
/// Trapezoid vertices shift by `U[-m0, m0)` and are re-sorted.
pub fn mutate<R: Rng>(child: &mut Offspring, cfg: &ExperimentConfig, rng: &mut R) {
    let m0 = cfg.m0;
    let generalize = child.parent_fitness > cfg.f0 && !child.crossed;
    let flip_bits = cfg.representation == Representation::Adaptive;
    let cond = &mut child.rule.condition;
    for i in 0..cond.dims() {
        let set = &mut cond.sets_mut()[i];
        match *set {
            FuzzySet::CenterSpread { mut center, mut spread } => {
                if rng.random::<f64>() < cfg.p_mut {
                    center += rng.random_range(-m0..m0);
                }
                if rng.random::<f64>() < cfg.p_mut {
                    spread += if generalize {
                        rng.random_range(0.0..m0)
                    } else {
                        rng.random_range(-m0..m0)
                    };
                }
                *set = FuzzySet::center_spread(center, spread);
            }
            FuzzySet::Trapezoid { a, b, c, d } => {
                let mut v = [a, b, c, d];
                for x in v.iter_mut() {
                    if rng.random::<f64>() < cfg.p_mut {
                        *x = (*x + rng.random_range(-m0..m0)).clamp(VERTEX_MIN, VERTEX_MAX);
                    }
                }
                *set = FuzzySet::trapezoid(v);
            }
        }
        if flip_bits && rng.random::<f64>() < cfg.p_mut {
            if let Some(bits) = cond.indicator_mut() {
                bits[i] = !bits[i];
            }
        }
    }
}

/// Remove micro rules until the population is within capacity.
///
/// Victims are drawn by roulette over `num * penalty`, where experienced
/// rules whose powered fitness falls below `delta` times the population
/// mean get a penalty of `mean / powered`.
pub fn delete_to_capacity<R: Rng>(pop: &mut Population, cfg: &ExperimentConfig, rng: &mut R) {
    let mut micro = pop.micro_count();
    while micro > pop.capacity() {
        let powered: Vec<f64> = pop
            .rules()
            .iter()
            .map(|r| r.fitness.max(DELETION_FITNESS_FLOOR).powf(cfg.nu))
            .collect();
        let mean = pop
            .rules()
            .iter()
            .zip(&powered)
            .map(|(r, p)| r.numerosity as f64 * p)
            .sum::<f64>()
            / micro as f64;
        let votes: Vec<f64> = pop
            .rules()
            .iter()
            .zip(&powered)
            .map(|(r, &p)| {
                let penalty = if r.experience > cfg.theta_del && p < cfg.delta * mean {
                    mean / p
                } else {
                    1.0
                };
                r.numerosity as f64 * penalty
            })
            .collect();
        let total: f64 = votes.iter().sum();
        let mut pick = rng.random_range(0.0..total);
        let mut victim = None;
        for (i, v) in votes.iter().enumerate() {
            if *v > 0.0 {
                victim = Some(i);
                if pick < *v {
                    break;
                }
                pick -= v;
            }
        }
        let victim = victim.expect("population over capacity has live rules");
        pop.rule_mut(victim).numerosity -= 1;
        micro -= 1;
    }
}

/// Run one GA invocation on the correct set if it is due. Returns whether
/// the GA ran.
pub fn run_ga(
    correct_set: &[Matched],
    pop: &mut Population,
    t: u64,
    cfg: &ExperimentConfig,
    rng: &mut LearnerRng,
) -> Result<bool> {
    if !should_run_ga(pop, correct_set, t, cfg.theta_ga) {
        return Ok(false);
    }
    for m in correct_set {
        pop.rule_mut(m.idx).ga_timestamp = t;
    }
    let p1 = tournament_select(pop, correct_set, cfg.nu, cfg.tau, &mut rng.ga)?.idx;
    let p2 = tournament_select(pop, correct_set, cfg.nu, cfg.tau, &mut rng.ga)?.idx;
    let (mut c1, mut c2) = crossover_uniform(pop.rule(p1), pop.rule(p2), cfg.chi, t, &mut rng.ga);
    mutate(&mut c1, cfg, &mut rng.ga);
    mutate(&mut c2, cfg, &mut rng.ga);
    for child in [c1, c2] {
        if cfg.do_ga_subsumption && subsumption::ga_subsumption(&child.rule, [p1, p2], pop, cfg) {
            continue;
        }
        pop.insert_with_duplicate_merge(child.rule);
    }
    delete_to_capacity(pop, cfg, &mut rng.deletion);
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Stream};
    use crate::rule::Condition;
    use proptest::prelude::*;

    fn rule_with(f: f64, num: u32, ts: u64) -> Rule {
        let mut r = Rule::new(Condition::center_spread(&[(0.5, 0.2), (0.5, 0.2)], &[false, true]), 0, 2, ts);
        r.fitness = f;
        r.numerosity = num;
        r
    }

    fn pop_of(rules: Vec<Rule>) -> (Population, Vec<Matched>) {
        let mut pop = Population::new(2, 2, 100, Representation::Adaptive);
        let set = rules
            .into_iter()
            .map(|r| Matched { idx: pop.push(r), mu: 1.0 })
            .collect();
        (pop, set)
    }

    #[test]
    fn ga_activation() {
        let (pop, set) = pop_of(vec![rule_with(1.0, 1, 500)]);
        assert!(!should_run_ga(&pop, &set, 500, 50.0));
        let (pop, set) = pop_of(vec![rule_with(1.0, 1, 400)]);
        assert!(should_run_ga(&pop, &set, 500, 50.0));
        let (pop, set) = pop_of(vec![rule_with(1.0, 1, 420), rule_with(1.0, 3, 460)]);
        assert!(!should_run_ga(&pop, &set, 500, 50.0));
        assert!(should_run_ga(&pop, &set, 501, 50.0));
        assert!(!should_run_ga(&pop, &[], 10_000, 50.0));
    }

    #[test]
    fn tournament_prefers_fitter() {
        let (pop, set) = pop_of(vec![rule_with(0.9, 1, 0), rule_with(0.5, 1, 0)]);
        let mut rng = stream(1, Stream::Ga);
        // With tau = 1 both rules are usually sampled; A must win whenever it is.
        let wins = (0..500)
            .filter(|_| tournament_select(&pop, &set, 10.0, 1.0, &mut rng).unwrap().idx == 0)
            .count();
        assert!(wins >= 350, "{wins}");
    }

    #[test]
    fn tournament_single_and_negative() {
        let (pop, set) = pop_of(vec![rule_with(0.3, 2, 0)]);
        let mut rng = stream(2, Stream::Ga);
        assert_eq!(tournament_select(&pop, &set, 10.0, 0.4, &mut rng).unwrap().idx, 0);
        let (pop, set) = pop_of(vec![rule_with(-0.3, 1, 0), rule_with(-0.5, 1, 0)]);
        let mut seen = [false; 2];
        for _ in 0..100 {
            seen[tournament_select(&pop, &set, 10.0, 0.4, &mut rng).unwrap().idx] = true;
        }
        assert_eq!(seen, [true, true]);
        assert!(matches!(
            tournament_select(&pop, &[], 10.0, 0.4, &mut rng),
            Err(UcsError::EmptyCorrectSet)
        ));
    }

    #[test]
    fn negative_fitness_never_wins_when_pool_is_nonempty() {
        let (pop, set) = pop_of(vec![rule_with(-0.9, 5, 0), rule_with(0.0, 1, 0)]);
        let mut rng = stream(3, Stream::Ga);
        for _ in 0..200 {
            assert_eq!(tournament_select(&pop, &set, 10.0, 0.4, &mut rng).unwrap().idx, 1);
        }
    }

    #[test]
    fn crossover_not_fired_clones_parents() {
        let a = rule_with(0.7, 3, 5);
        let b = Rule::new(Condition::center_spread(&[(0.1, 0.1), (0.9, 0.3)], &[true, false]), 0, 2, 5);
        let mut rng = stream(4, Stream::Ga);
        let (c1, c2) = crossover_uniform(&a, &b, 1e-12, 9, &mut rng);
        assert_eq!(c1.rule.condition, a.condition);
        assert_eq!(c2.rule.condition, b.condition);
        assert!(!c1.crossed && !c2.crossed);
        assert_eq!(c1.parent_fitness, 0.7);
        for c in [&c1, &c2] {
            assert_eq!((c.rule.numerosity, c.rule.experience, c.rule.fitness, c.rule.ga_timestamp), (1, 0.0, 1.0, 9));
            assert_eq!(c.rule.class_weights, vec![0.5, 0.5]);
        }
    }

    #[test]
    fn crossed_indicator_bits_are_complementary() {
        let a = Rule::new(Condition::center_spread(&[(0.2, 0.1), (0.2, 0.1)], &[false, false]), 0, 2, 0);
        let b = Rule::new(Condition::center_spread(&[(0.8, 0.3), (0.8, 0.3)], &[true, true]), 0, 2, 0);
        let mut rng = stream(5, Stream::Ga);
        for _ in 0..50 {
            let (c1, c2) = crossover_uniform(&a, &b, 1.0, 0, &mut rng);
            let (b1, b2) = (c1.rule.condition.indicator().unwrap(), c2.rule.condition.indicator().unwrap());
            for i in 0..2 {
                assert_ne!(b1[i], b2[i]);
            }
        }
    }

    #[test]
    fn trapezoid_crossover_keeps_vertices_sorted() {
        let a = Rule::new(Condition::trapezoid(&[[0.0, 0.1, 0.2, 0.3]]), 0, 2, 0);
        let b = Rule::new(Condition::trapezoid(&[[0.6, 0.7, 0.8, 0.9]]), 0, 2, 0);
        let mut rng = stream(6, Stream::Ga);
        for _ in 0..100 {
            let (c1, c2) = crossover_uniform(&a, &b, 1.0, 0, &mut rng);
            for c in [c1, c2] {
                let FuzzySet::Trapezoid { a, b, c, d } = c.rule.condition.sets()[0] else { panic!() };
                assert!(a <= b && b <= c && c <= d);
            }
        }
    }

    #[test]
    fn crisp_mutation_never_flips_bits() {
        let mut cfg = ExperimentConfig::benchmark(Representation::Crisp);
        cfg.p_mut = 1.0;
        let mut rng = stream(7, Stream::Ga);
        let parent = Rule::new(Condition::crisp(&[(0.5, 0.2), (0.5, 0.2)]), 0, 2, 0);
        for _ in 0..50 {
            let mut child = fresh_child(&parent, 0);
            mutate(&mut child, &cfg, &mut rng);
            assert_eq!(child.rule.condition.indicator().unwrap(), &[false, false]);
        }
    }

    #[test]
    fn accurate_uncrossed_spread_only_grows() {
        let mut cfg = ExperimentConfig::benchmark(Representation::Adaptive);
        cfg.p_mut = 1.0;
        let mut rng = stream(8, Stream::Ga);
        let parent = rule_with(1.0, 1, 0);
        let mut shrank = false;
        for _ in 0..200 {
            let mut child = fresh_child(&parent, 0);
            mutate(&mut child, &cfg, &mut rng);
            for (s, p) in child.rule.condition.sets().iter().zip(parent.condition.sets()) {
                let (FuzzySet::CenterSpread { spread: s1, .. }, FuzzySet::CenterSpread { spread: s0, .. }) = (s, p) else { panic!() };
                assert!(s1 >= s0);
            }
            let mut crossed = fresh_child(&parent, 0);
            crossed.crossed = true;
            mutate(&mut crossed, &cfg, &mut rng);
            let FuzzySet::CenterSpread { spread, .. } = crossed.rule.condition.sets()[0] else { panic!() };
            shrank |= spread < 0.2;
        }
        assert!(shrank, "crossed children must be able to specialize");
    }

    #[test]
    fn deletion_noop_under_capacity_and_exact_count_over() {
        let cfg = ExperimentConfig { n: 10, ..ExperimentConfig::default() };
        let mut pop = Population::new(2, 2, 10, Representation::Adaptive);
        pop.push(rule_with(1.0, 4, 0));
        pop.push(rule_with(0.5, 6, 0));
        let before = pop.clone();
        let mut rng = stream(9, Stream::Deletion);
        delete_to_capacity(&mut pop, &cfg, &mut rng);
        assert_eq!(pop, before);
        pop.rule_mut(0).numerosity = 7;
        delete_to_capacity(&mut pop, &cfg, &mut rng);
        assert_eq!(pop.micro_count(), 10);
    }

    /// Analytic deletion probability of the weak rule against the Monte-Carlo
    /// frequency.
    #[test]
    fn deletion_targets_weak_experienced_rules() {
        let cfg = ExperimentConfig { n: 1, delta: 0.1, theta_del: 50.0, nu: 10.0, ..ExperimentConfig::default() };
        let mut strong = rule_with(1.0, 1, 0);
        strong.experience = 100.0;
        let mut weak = rule_with(0.4, 1, 0);
        weak.experience = 100.0;
        let weak_powered = 0.4f64.powi(10);
        let mean = (1.0 + weak_powered) / 2.0;
        let p_weak = (mean / weak_powered) / (mean / weak_powered + 1.0);
        assert!(p_weak > 0.999);

        let mut rng = stream(10, Stream::Deletion);
        let mut weak_deleted = 0;
        for _ in 0..1000 {
            let mut pop = Population::new(2, 2, 1, Representation::Adaptive);
            pop.push(strong.clone());
            pop.push(weak.clone());
            delete_to_capacity(&mut pop, &cfg, &mut rng);
            weak_deleted += (pop.rule(1).numerosity == 0) as usize;
        }
        assert!(weak_deleted >= 995, "{weak_deleted}");
    }

    #[test]
    fn ga_not_due_leaves_population() {
        let cfg = ExperimentConfig::default();
        let (mut pop, set) = pop_of(vec![rule_with(1.0, 1, 100)]);
        let before = pop.clone();
        let mut rng = LearnerRng::new(0);
        assert!(!run_ga(&set, &mut pop, 120, &cfg, &mut rng).unwrap());
        assert_eq!(pop, before);
    }

    #[test]
    fn ga_children_absorbed_by_general_parents() {
        let cfg = ExperimentConfig { p_mut: 1e-12, ..ExperimentConfig::default() };
        let mut general = Rule::new(Condition::crisp(&[(0.5, 0.5), (0.5, 0.5)]), 0, 2, 0);
        general.fitness = 1.0;
        general.experience = 100.0;
        let (mut pop, set) = pop_of(vec![general.clone(), general]);
        // Two identical conditions: set up as separate macro rules on purpose.
        let mut rng = LearnerRng::new(0);
        assert!(run_ga(&set, &mut pop, 1000, &cfg, &mut rng).unwrap());
        assert_eq!(pop.macro_count(), 2);
        assert_eq!(pop.micro_count(), 4);
        assert!(pop.rules().iter().all(|r| r.ga_timestamp == 1000));
    }

    #[test]
    fn ga_respects_capacity() {
        let cfg = ExperimentConfig { n: 3, do_ga_subsumption: false, ..ExperimentConfig::default() };
        let mut pop = Population::new(2, 2, 3, Representation::Adaptive);
        let set: Vec<Matched> = [rule_with(0.9, 2, 0), rule_with(0.8, 1, 0)]
            .into_iter()
            .map(|r| Matched { idx: pop.push(r), mu: 1.0 })
            .collect();
        let mut rng = LearnerRng::new(3);
        assert!(run_ga(&set, &mut pop, 1000, &cfg, &mut rng).unwrap());
        assert!(pop.micro_count() <= 3);
    }

    proptest! {
        #[test]
        fn mutation_keeps_sets_valid(
            c in 0.0..=1.0f64, s in 0.005..=1.0f64, f in -1.0..=1.0f64, crossed: bool, seed: u64,
            v in proptest::array::uniform4(-0.5..1.5f64),
        ) {
            let mut cfg = ExperimentConfig::benchmark(Representation::Adaptive);
            cfg.p_mut = 1.0;
            cfg.m0 = 1.0;
            let mut rng = stream(seed, Stream::Ga);
            let mut child = fresh_child(&Rule::new(Condition::center_spread(&[(c, s)], &[true]), 0, 2, 0), 0);
            child.crossed = crossed;
            child.parent_fitness = f;
            mutate(&mut child, &cfg, &mut rng);
            let FuzzySet::CenterSpread { center, spread } = child.rule.condition.sets()[0] else { panic!() };
            prop_assert!((0.0..=1.0).contains(&center));
            prop_assert!((0.005..=1.0).contains(&spread));

            cfg.representation = Representation::Trapezoid;
            let mut child = fresh_child(&Rule::new(Condition::trapezoid(&[v]), 0, 2, 0), 0);
            mutate(&mut child, &cfg, &mut rng);
            let FuzzySet::Trapezoid { a, b, c, d } = child.rule.condition.sets()[0] else { panic!() };
            prop_assert!(VERTEX_MIN <= a && a <= b && b <= c && c <= d && d <= VERTEX_MAX);
        }

        #[test]
        fn directed_generalization_is_monotone(
            c in 0.0..=1.0f64, s in 0.005..=1.0f64, f in 0.9901..=1.0f64, seed: u64,
        ) {
            let mut cfg = ExperimentConfig::benchmark(Representation::Adaptive);
            cfg.p_mut = 1.0;
            let mut rng = stream(seed, Stream::Ga);
            let parent = Rule::new(Condition::center_spread(&[(c, s)], &[true]), 0, 2, 0);
            let mut child = fresh_child(&parent, 0);
            child.parent_fitness = f;
            mutate(&mut child, &cfg, &mut rng);
            prop_assert!(child.rule.condition.sets()[0].half_width() >= parent.condition.sets()[0].half_width());
        }

        #[test]
        fn double_flip_restores_indicator(bits in proptest::collection::vec(any::<bool>(), 1..6), seed: u64) {
            let mut cfg = ExperimentConfig::benchmark(Representation::Adaptive);
            cfg.p_mut = 1.0;
            cfg.m0 = 1e-300;
            let pairs = vec![(0.5, 0.2); bits.len()];
            let parent = Rule::new(Condition::center_spread(&pairs, &bits), 0, 2, 0);
            let mut child = fresh_child(&parent, 0);
            let mut rng = stream(seed, Stream::Ga);
            mutate(&mut child, &cfg, &mut rng);
            let once: Vec<bool> = child.rule.condition.indicator().unwrap().to_vec();
            prop_assert!(once.iter().zip(&bits).all(|(a, b)| a != b));
            mutate(&mut child, &cfg, &mut rng);
            prop_assert_eq!(child.rule.condition.indicator().unwrap(), &bits[..]);
        }

        #[test]
        fn selection_invariant_to_score_scaling(
            fs in proptest::collection::vec(0.0..=1.0f64, 1..8),
            mus in proptest::collection::vec(0.01..=1.0f64, 8),
            scale in 0.1..10.0f64,
            seed: u64,
        ) {
            // Scaling every mu by a constant scales every F^nu * mu score alike.
            let mut pop = Population::new(2, 2, 100, Representation::Adaptive);
            let set: Vec<Matched> = fs.iter().enumerate()
                .map(|(i, &f)| Matched { idx: pop.push(rule_with(f, 1, 0)), mu: mus[i] })
                .collect();
            let scaled: Vec<Matched> = set.iter().map(|m| Matched { idx: m.idx, mu: m.mu * scale }).collect();
            let a = tournament_select(&pop, &set, 10.0, 0.4, &mut stream(seed, Stream::Ga)).unwrap().idx;
            let b = tournament_select(&pop, &scaled, 10.0, 0.4, &mut stream(seed, Stream::Ga)).unwrap().idx;
            prop_assert_eq!(a, b);
        }
    }
}
