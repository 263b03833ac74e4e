//! Rule conditions and per-rule bookkeeping.

/// Smallest spread a center-spread set may take.
pub const MIN_SPREAD: f64 = 0.005;
/// Working range for trapezoid vertices.
pub const VERTEX_MIN: f64 = -0.5;
pub const VERTEX_MAX: f64 = 1.5;

/// A single-dimension fuzzy set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FuzzySet {
    /// Rectangle `[c-s, c+s)` or isosceles triangle with apex at `c`,
    /// depending on the fuzzy indicator bit of its dimension.
    CenterSpread { center: f64, spread: f64 },
    /// Trapezoid with vertices `a <= b <= c <= d`.
    Trapezoid { a: f64, b: f64, c: f64, d: f64 },
}

impl FuzzySet {
    pub fn center_spread(center: f64, spread: f64) -> Self {
        FuzzySet::CenterSpread {
            center: center.clamp(0.0, 1.0),
            spread: spread.clamp(MIN_SPREAD, 1.0),
        }
    }

    /// Build a trapezoid from any four values; they are sorted and clamped
    /// into the working range.
    pub fn trapezoid(mut v: [f64; 4]) -> Self {
        for x in v.iter_mut() {
            *x = x.clamp(VERTEX_MIN, VERTEX_MAX);
        }
        v.sort_by(f64::total_cmp);
        FuzzySet::Trapezoid { a: v[0], b: v[1], c: v[2], d: v[3] }
    }

    /// Lower and upper end of the support.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            FuzzySet::CenterSpread { center, spread } => (center - spread, center + spread),
            FuzzySet::Trapezoid { a, d, .. } => (a, d),
        }
    }

    /// Area under the membership function. `fuzzy` selects the triangle
    /// shape for center-spread sets and is ignored for trapezoids.
    pub fn area(&self, fuzzy: bool) -> f64 {
        match *self {
            FuzzySet::CenterSpread { spread, .. } if fuzzy => spread,
            FuzzySet::CenterSpread { spread, .. } => 2.0 * spread,
            FuzzySet::Trapezoid { a, b, c, d } => ((d - a) + (c - b)) / 2.0,
        }
    }

    /// Half-width of the support.
    pub fn half_width(&self) -> f64 {
        let (lo, hi) = self.support();
        (hi - lo) / 2.0
    }

    fn bits_eq(&self, other: &FuzzySet) -> bool {
        match (self, other) {
            (
                FuzzySet::CenterSpread { center: c1, spread: s1 },
                FuzzySet::CenterSpread { center: c2, spread: s2 },
            ) => c1.to_bits() == c2.to_bits() && s1.to_bits() == s2.to_bits(),
            (
                FuzzySet::Trapezoid { a: a1, b: b1, c: c1, d: d1 },
                FuzzySet::Trapezoid { a: a2, b: b2, c: c2, d: d2 },
            ) => [a1, b1, c1, d1]
                .iter()
                .zip([a2, b2, c2, d2])
                .all(|(x, y)| x.to_bits() == y.to_bits()),
            _ => false,
        }
    }
}

/// Per-dimension fuzzy sets plus the optional fuzzy indicator.
///
/// Center-spread conditions always carry an indicator; trapezoid
/// conditions never do.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    sets: Vec<FuzzySet>,
    indicator: Option<Vec<bool>>,
}

impl Condition {
    /// Center-spread condition from `(center, spread)` pairs and indicator bits.
    pub fn center_spread(sets: &[(f64, f64)], indicator: &[bool]) -> Self {
        assert_eq!(sets.len(), indicator.len(), "indicator length must equal dims");
        Condition {
            sets: sets.iter().map(|&(c, s)| FuzzySet::center_spread(c, s)).collect(),
            indicator: Some(indicator.to_vec()),
        }
    }

    /// Crisp center-spread condition (indicator all zero).
    pub fn crisp(sets: &[(f64, f64)]) -> Self {
        Condition::center_spread(sets, &vec![false; sets.len()])
    }

    pub fn trapezoid(sets: &[[f64; 4]]) -> Self {
        Condition {
            sets: sets.iter().map(|&v| FuzzySet::trapezoid(v)).collect(),
            indicator: None,
        }
    }

    pub fn dims(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[FuzzySet] {
        &self.sets
    }

    pub(crate) fn sets_mut(&mut self) -> &mut [FuzzySet] {
        &mut self.sets
    }

    pub fn indicator(&self) -> Option<&[bool]> {
        self.indicator.as_deref()
    }

    pub(crate) fn indicator_mut(&mut self) -> Option<&mut [bool]> {
        self.indicator.as_deref_mut()
    }

    /// Fuzzy indicator bit of dimension `i`, `None` for trapezoids.
    pub fn bit(&self, i: usize) -> Option<bool> {
        self.indicator.as_ref().map(|b| b[i])
    }

    pub fn is_trapezoid(&self) -> bool {
        self.indicator.is_none()
    }

    /// Bit-for-bit equality of every numeric field and indicator bit.
    pub fn same_as(&self, other: &Condition) -> bool {
        self.indicator == other.indicator
            && self.sets.len() == other.sets.len()
            && self.sets.iter().zip(&other.sets).all(|(a, b)| a.bits_eq(b))
    }

    /// Summed half-width of the supports over all dimensions.
    pub fn summed_spread(&self) -> f64 {
        self.sets.iter().map(FuzzySet::half_width).sum()
    }

    /// Summed membership area over all dimensions.
    pub fn summed_area(&self) -> f64 {
        self.sets
            .iter()
            .enumerate()
            .map(|(i, s)| s.area(self.bit(i).unwrap_or(false)))
            .sum()
    }
}

/// A macro rule: condition, predicted class and learning statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub condition: Condition,
    pub class: usize,
    /// Highest class weight; reported only, never used for inference.
    pub weight: f64,
    pub fitness: f64,
    pub experience: f64,
    pub numerosity: u32,
    pub correct_matchings: Vec<f64>,
    pub class_weights: Vec<f64>,
    pub ga_timestamp: u64,
}

impl Rule {
    /// A rule with no experience: uniform class weights, fitness 1.
    pub fn new(condition: Condition, class: usize, class_count: usize, timestamp: u64) -> Self {
        assert!(class < class_count, "class {class} out of range for {class_count} classes");
        let uniform = 1.0 / class_count as f64;
        Rule {
            condition,
            class,
            weight: uniform,
            fitness: 1.0,
            experience: 0.0,
            numerosity: 1,
            correct_matchings: vec![0.0; class_count],
            class_weights: vec![uniform; class_count],
            ga_timestamp: timestamp,
        }
    }

    pub fn class_count(&self) -> usize {
        self.class_weights.len()
    }

    /// Credit one match of degree `mu` on an input labelled `class`.
    ///
    /// Experience and the correct-matching sum of `class` grow by `mu`;
    /// weights, fitness, predicted class and weight are recomputed from them.
    pub fn record_match(&mut self, mu: f64, class: usize) {
        self.experience += mu;
        self.correct_matchings[class] += mu;
        if self.experience <= 0.0 {
            return;
        }
        let exp = self.experience;
        for (v, cm) in self.class_weights.iter_mut().zip(&self.correct_matchings) {
            *v = cm / exp;
        }
        // Lowest index wins ties.
        let (best, v_max) = self
            .class_weights
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (j, v)| if v > acc.1 { (j, v) } else { acc });
        let others: f64 = self
            .class_weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != best)
            .map(|(_, v)| v)
            .sum();
        self.fitness = v_max - others;
        self.class = best;
        self.weight = v_max;
    }

    /// Clear learning statistics, keeping condition and class.
    pub fn reset_statistics(&mut self, timestamp: u64) {
        let m = self.class_count();
        let uniform = 1.0 / m as f64;
        self.weight = uniform;
        self.fitness = 1.0;
        self.experience = 0.0;
        self.numerosity = 1;
        self.correct_matchings = vec![0.0; m];
        self.class_weights = vec![uniform; m];
        self.ga_timestamp = timestamp;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_constructor_sorts_and_clamps() {
        let s = FuzzySet::trapezoid([0.7, -3.0, 0.3, 0.9]);
        assert_eq!(s, FuzzySet::Trapezoid { a: -0.5, b: 0.3, c: 0.7, d: 0.9 });
    }

    #[test]
    fn center_spread_clamps_spread_floor() {
        assert_eq!(
            FuzzySet::center_spread(1.2, 0.0),
            FuzzySet::CenterSpread { center: 1.0, spread: MIN_SPREAD }
        );
    }

    #[test]
    fn areas() {
        let s = FuzzySet::center_spread(0.5, 0.2);
        assert!((s.area(false) - 0.4).abs() < 1e-15);
        assert!((s.area(true) - 0.2).abs() < 1e-15);
        let t = FuzzySet::trapezoid([0.1, 0.3, 0.7, 0.9]);
        assert!((t.area(false) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn update_from_fresh_cover() {
        let mut r = Rule::new(Condition::crisp(&[(0.5, 0.1)]), 0, 2, 0);
        r.record_match(1.0, 0);
        assert_eq!((r.experience, r.fitness, r.class), (1.0, 1.0, 0));
        r.record_match(1.0, 1);
        assert_eq!(r.experience, 2.0);
        assert_eq!(r.class_weights, vec![0.5, 0.5]);
        assert_eq!(r.fitness, 0.0);
        assert_eq!(r.class, 0);
    }

    #[test]
    fn three_class_weights() {
        let mut r = Rule::new(Condition::crisp(&[(0.5, 0.1)]), 0, 3, 0);
        r.correct_matchings = vec![8.0, 1.5, 0.0];
        r.experience = 9.5;
        r.record_match(0.5, 2);
        assert!((r.class_weights[0] - 0.8).abs() < 1e-12);
        assert!((r.class_weights[1] - 0.15).abs() < 1e-12);
        assert!((r.class_weights[2] - 0.05).abs() < 1e-12);
        assert!((r.fitness - 0.6).abs() < 1e-12);
        assert!((r.weight - 0.8).abs() < 1e-12);
    }

    #[test]
    fn prediction_switches_to_majority_class() {
        let mut r = Rule::new(Condition::crisp(&[(0.5, 0.1)]), 0, 2, 0);
        r.record_match(0.4, 0);
        r.record_match(0.9, 1);
        assert_eq!(r.class, 1);
        assert!((r.fitness - (2.0 * 0.9 / 1.3 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn same_as_distinguishes_indicator() {
        let a = Condition::center_spread(&[(0.5, 0.1), (0.2, 0.3)], &[true, false]);
        let b = Condition::center_spread(&[(0.5, 0.1), (0.2, 0.3)], &[true, true]);
        assert!(a.same_as(&a.clone()));
        assert!(!a.same_as(&b));
    }
}
