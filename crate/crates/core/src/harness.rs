//! Experiment protocols: alternating train/test benchmark runs and
//! epoch-based cross-validation, plus metrics CSV output.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Representation};
use crate::dataset::{cv_split, Dataset, Fold};
use crate::environment::BenchmarkSpec;
use crate::error::{Result, UcsError};
use crate::inference::predict;
use crate::population::Population;
use crate::rng::{stream, LearnerRng, Stream};
use crate::training::train_step;

/// Fraction of the run, counted from the end, used for convergence accuracy.
pub const CONVERGENCE_FRACTION: f64 = 0.05;

/// CSV header shared by benchmark and cross-validation output.
pub const METRICS_HEADER: &str =
    "trial_seed,system,problem_or_fold,overall_acc_pct,convergence_acc_pct,macro_rules,micro_rules,steps,wall_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct TrialMetrics {
    pub trial_seed: u64,
    pub system: Representation,
    pub problem: String,
    pub steps: usize,
    /// Correctness of every test step, in order.
    pub correct: Vec<bool>,
    pub overall_acc_pct: f64,
    pub convergence_acc_pct: f64,
    pub macro_rules: usize,
    pub micro_rules: usize,
    pub wall: Duration,
}

impl TrialMetrics {
    pub fn convergence_window(steps: usize) -> usize {
        if steps == 0 {
            0
        } else {
            ((steps as f64 * CONVERGENCE_FRACTION).ceil() as usize).max(1)
        }
    }

    /// Accuracy in percent over consecutive windows of `window` test steps.
    pub fn windowed_accuracy(&self, window: usize) -> Vec<f64> {
        self.correct.chunks(window.max(1)).map(accuracy_pct).collect()
    }

    pub fn row(&self) -> MetricsRow {
        MetricsRow {
            trial_seed: self.trial_seed,
            system: self.system,
            problem_or_fold: self.problem.clone(),
            overall_acc_pct: self.overall_acc_pct,
            convergence_acc_pct: self.convergence_acc_pct,
            macro_rules: self.macro_rules,
            micro_rules: self.micro_rules,
            steps: self.steps,
            wall_ms: self.wall.as_millis(),
        }
    }
}

fn accuracy_pct(bits: &[bool]) -> f64 {
    if bits.is_empty() {
        return 0.0;
    }
    100.0 * bits.iter().filter(|&&b| b).count() as f64 / bits.len() as f64
}

/// One line of the metrics CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub trial_seed: u64,
    pub system: Representation,
    pub problem_or_fold: String,
    pub overall_acc_pct: f64,
    pub convergence_acc_pct: f64,
    pub macro_rules: usize,
    pub micro_rules: usize,
    pub steps: usize,
    pub wall_ms: u128,
}

/// Write rows under [`METRICS_HEADER`]. With `include_timing` off the
/// `wall_ms` column is written as 0 so identical runs give identical bytes.
pub fn write_metrics_csv<W: Write>(rows: &[MetricsRow], include_timing: bool, mut out: W) -> Result<()> {
    writeln!(out, "{METRICS_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{:.4},{:.4},{},{},{},{}",
            r.trial_seed,
            r.system,
            r.problem_or_fold,
            r.overall_acc_pct,
            r.convergence_acc_pct,
            r.macro_rules,
            r.micro_rules,
            r.steps,
            if include_timing { r.wall_ms } else { 0 }
        )?;
    }
    Ok(())
}

/// Write per-window accuracy for a set of trials: one row per window.
pub fn write_window_csv<W: Write>(trials: &[TrialMetrics], window: usize, mut out: W) -> Result<()> {
    writeln!(out, "trial_seed,system,problem,window_end,acc_pct")?;
    for t in trials {
        for (k, acc) in t.windowed_accuracy(window).iter().enumerate() {
            let end = ((k + 1) * window).min(t.correct.len());
            writeln!(out, "{},{},{},{},{:.4}", t.trial_seed, t.system, t.problem, end, acc)?;
        }
    }
    Ok(())
}

/// Result of one benchmark trial.
#[derive(Debug, Clone)]
pub struct BenchmarkRun {
    pub metrics: TrialMetrics,
    pub population: Population,
}

/// Alternate one training step and one test step `cfg.steps` times.
pub fn run_benchmark(spec: &BenchmarkSpec, cfg: &ExperimentConfig) -> Result<BenchmarkRun> {
    cfg.validate()?;
    spec.validate()?;
    let start = Instant::now();
    let mut pop = Population::new(2, 2, cfg.n, cfg.representation);
    let mut learner = LearnerRng::new(cfg.seed);
    let mut train_inputs = stream(cfg.seed, Stream::TrainInputs);
    let mut noise = stream(cfg.seed, Stream::Noise);
    let mut test_inputs = stream(cfg.seed, Stream::TestInputs);
    let mut seen = [0usize; 2];
    let mut correct = Vec::with_capacity(cfg.steps);

    for t in 1..=cfg.steps as u64 {
        let (x, class) = spec.training_sample(&mut train_inputs, &mut noise);
        seen[class] += 1;
        train_step(&mut pop, &[Some(x[0]), Some(x[1])], class, t, cfg, &mut learner)?;

        let (x, class) = spec.sample(&mut test_inputs);
        let fallback = if seen[1] > seen[0] { 1 } else { 0 };
        let predicted = predict(&pop, &[Some(x[0]), Some(x[1])], cfg.theta_exploit, fallback);
        correct.push(predicted == class);
    }

    let window = TrialMetrics::convergence_window(cfg.steps);
    let metrics = TrialMetrics {
        trial_seed: cfg.seed,
        system: cfg.representation,
        problem: spec.kind.to_string(),
        steps: cfg.steps,
        overall_acc_pct: accuracy_pct(&correct),
        convergence_acc_pct: accuracy_pct(&correct[correct.len() - window..]),
        correct,
        macro_rules: pop.macro_count(),
        micro_rules: pop.micro_count(),
        wall: start.elapsed(),
    };
    Ok(BenchmarkRun { metrics, population: pop })
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    builder.build().map_err(|e| UcsError::Config(format!("worker pool: {e}")))
}

/// Run one trial per seed on a bounded worker pool; results come back in
/// seed order.
pub fn run_benchmark_trials(
    spec: &BenchmarkSpec,
    cfg: &ExperimentConfig,
    seeds: &[u64],
    jobs: Option<usize>,
) -> Result<Vec<BenchmarkRun>> {
    cfg.validate()?;
    pool(jobs)?.install(|| {
        seeds
            .par_iter()
            .map(|&seed| run_benchmark(spec, &ExperimentConfig { seed, ..cfg.clone() }))
            .collect()
    })
}

/// Train a fresh population for `epochs` shuffled passes over `indices`.
pub fn train_epochs(
    data: &Dataset,
    indices: &[usize],
    cfg: &ExperimentConfig,
    epochs: usize,
    seed: u64,
) -> Result<Population> {
    let mut pop = Population::new(data.dims(), data.class_count(), cfg.n, cfg.representation);
    let mut learner = LearnerRng::new(seed);
    let mut order_rng = stream(seed, Stream::TrainInputs);
    let mut order = indices.to_vec();
    let mut t = 0u64;
    for _ in 0..epochs {
        order.shuffle(&mut order_rng);
        for &i in &order {
            t += 1;
            train_step(&mut pop, &data.instances[i], data.labels[i], t, cfg, &mut learner)?;
        }
    }
    Ok(pop)
}

/// Percentage of `indices` predicted correctly.
pub fn accuracy_on(pop: &Population, data: &Dataset, indices: &[usize], theta_exploit: f64, fallback: usize) -> f64 {
    let hits: Vec<bool> = indices
        .iter()
        .map(|&i| predict(pop, &data.instances[i], theta_exploit, fallback) == data.labels[i])
        .collect();
    accuracy_pct(&hits)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvMetrics {
    pub trial_seed: u64,
    pub system: Representation,
    pub dataset: String,
    pub repeat: usize,
    pub fold: usize,
    pub train_acc_pct: f64,
    pub test_acc_pct: f64,
    pub macro_rules: usize,
    pub micro_rules: usize,
    /// Training updates performed.
    pub steps: usize,
    pub wall: Duration,
}

impl CvMetrics {
    /// CSV row: test accuracy goes in the overall column, training accuracy
    /// in the convergence column.
    pub fn row(&self) -> MetricsRow {
        MetricsRow {
            trial_seed: self.trial_seed,
            system: self.system,
            problem_or_fold: format!("{}/r{}f{}", self.dataset, self.repeat, self.fold),
            overall_acc_pct: self.test_acc_pct,
            convergence_acc_pct: self.train_acc_pct,
            macro_rules: self.macro_rules,
            micro_rules: self.micro_rules,
            steps: self.steps,
            wall_ms: self.wall.as_millis(),
        }
    }
}

/// Evaluate one fold: train for `epochs`, then score both partitions.
pub fn run_fold(data: &Dataset, fold: &Fold, cfg: &ExperimentConfig, epochs: usize, seed: u64) -> Result<CvMetrics> {
    let start = Instant::now();
    let pop = train_epochs(data, &fold.train, cfg, epochs, seed)?;
    let fallback = data.majority_class(&fold.train);
    Ok(CvMetrics {
        trial_seed: seed,
        system: cfg.representation,
        dataset: data.name.clone(),
        repeat: fold.repeat,
        fold: fold.fold,
        train_acc_pct: accuracy_on(&pop, data, &fold.train, cfg.theta_exploit, fallback),
        test_acc_pct: accuracy_on(&pop, data, &fold.test, cfg.theta_exploit, fallback),
        macro_rules: pop.macro_count(),
        micro_rules: pop.micro_count(),
        steps: epochs * fold.train.len(),
        wall: start.elapsed(),
    })
}

/// `repeats x folds` stratified cross-validation. Fold `k` (in split order)
/// trains with seed `cfg.seed + k`.
pub fn run_cv(
    data: &Dataset,
    cfg: &ExperimentConfig,
    folds: usize,
    repeats: usize,
    epochs: usize,
    jobs: Option<usize>,
) -> Result<Vec<CvMetrics>> {
    cfg.validate()?;
    if folds < 2 {
        return Err(UcsError::Config("need at least 2 folds".into()));
    }
    let mut rng = stream(cfg.seed, Stream::CvShuffle);
    let splits = cv_split(&data.labels, data.class_count(), folds, repeats, &mut rng);
    pool(jobs)?.install(|| {
        splits
            .par_iter()
            .enumerate()
            .map(|(k, fold)| run_fold(data, fold, cfg, epochs, cfg.seed.wrapping_add(k as u64)))
            .collect()
    })
}

/// Mean of a slice, 0 when empty.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}
