use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ucs_core::dataset::load_dataset;
use ucs_core::harness::{self, mean, write_metrics_csv, write_window_csv};
use ucs_core::render::{render_class_landscape, render_matching_landscape};
use ucs_core::{BenchmarkSpec, ExperimentConfig, Population, Problem, Representation};

#[derive(Parser)]
#[command(name = "ucs", version, about = "Supervised learning fuzzy-classifier systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checkerboard benchmark trials.
    Bench(BenchArgs),
    /// Cross-validate on a delimited dataset file.
    Cv(CvArgs),
    /// Render a landscape from a ruleset snapshot.
    Render(RenderArgs),
}

#[derive(Args)]
struct Common {
    /// crisp, trapezoid or adaptive.
    #[arg(long)]
    system: Option<Representation>,
    /// Master seed (default 0); trial k uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    /// Flat key=value file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
    /// Worker threads (defaults to available cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write wall_ms as 0 so output bytes depend only on seed and config.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    problem: Problem,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// Test steps per row of windows.csv.
    #[arg(long, default_value_t = 1000)]
    window: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CvArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 20)]
    epochs: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    snapshot: PathBuf,
    /// Render predicted classes.
    #[arg(long, conflicts_with = "matching")]
    classes: bool,
    /// Render matching degrees of these rule indices (per-pixel max).
    #[arg(long, num_args = 1..)]
    matching: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    resolution: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 10.0)]
    theta_exploit: f64,
    /// Class used where no experienced rule matches.
    #[arg(long, default_value_t = 0)]
    fallback: usize,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Bench(args) => bench(args),
        Command::Cv(args) => cv(args),
        Command::Render(args) => render(args),
    }
}

/// Representation named in a config file, if any.
fn file_representation(text: &str) -> Result<Option<Representation>> {
    for line in text.lines() {
        if let Some((k, v)) = line.split_once('=') {
            if k.trim().eq_ignore_ascii_case("representation") {
                return Ok(Some(v.parse()?));
            }
        }
    }
    Ok(None)
}

/// Preset for the chosen representation, then the config file, then flags.
fn build_config(common: &Common, preset: fn(Representation) -> ExperimentConfig) -> Result<ExperimentConfig> {
    let text = match &common.config {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => String::new(),
    };
    let representation = common
        .system
        .or(file_representation(&text)?)
        .unwrap_or(Representation::Adaptive);
    let mut cfg = preset(representation);
    cfg.apply_text(&text)?;
    cfg.representation = representation;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn bench(args: BenchArgs) -> Result<()> {
    let preset = match args.problem {
        Problem::Ncb => ExperimentConfig::noisy_benchmark,
        _ => ExperimentConfig::benchmark,
    };
    let mut cfg = build_config(&args.common, preset)?;
    if let Some(steps) = args.steps {
        cfg.steps = steps;
    }
    cfg.validate()?;
    let spec = BenchmarkSpec::new(args.problem);
    let seeds: Vec<u64> = (0..args.trials).map(|k| cfg.seed.wrapping_add(k)).collect();
    let runs = harness::run_benchmark_trials(&spec, &cfg, &seeds, args.common.jobs)?;

    let out = &args.common.out_dir;
    fs::create_dir_all(out)?;
    let rows: Vec<_> = runs.iter().map(|r| r.metrics.row()).collect();
    write_metrics_csv(&rows, !args.common.no_timing, create(&out.join("metrics.csv"))?)?;
    let trials: Vec<_> = runs.iter().map(|r| r.metrics.clone()).collect();
    write_window_csv(&trials, args.window, create(&out.join("windows.csv"))?)?;
    for run in &runs {
        let name = format!("{}_{}_seed{}.rules", args.problem, cfg.representation, run.metrics.trial_seed);
        run.population.write_snapshot(create(&out.join(name))?)?;
    }
    let conv: Vec<f64> = trials.iter().map(|t| t.convergence_acc_pct).collect();
    let overall: Vec<f64> = trials.iter().map(|t| t.overall_acc_pct).collect();
    let macros: Vec<f64> = trials.iter().map(|t| t.macro_rules as f64).collect();
    println!(
        "{} {} over {} trial(s): overall {:.2}%  convergence {:.2}%  macro rules {:.1}",
        args.problem,
        cfg.representation,
        trials.len(),
        mean(&overall),
        mean(&conv),
        mean(&macros)
    );
    Ok(())
}

fn cv(args: CvArgs) -> Result<()> {
    let cfg = build_config(&args.common, ExperimentConfig::real_world)?;
    cfg.validate()?;
    let data = load_dataset(&args.data)?;
    let results = harness::run_cv(&data, &cfg, args.folds, args.repeats, args.epochs, args.common.jobs)?;
    fs::create_dir_all(&args.common.out_dir)?;
    let rows: Vec<_> = results.iter().map(|m| m.row()).collect();
    write_metrics_csv(&rows, !args.common.no_timing, create(&args.common.out_dir.join("metrics.csv"))?)?;
    let train: Vec<f64> = results.iter().map(|m| m.train_acc_pct).collect();
    let test: Vec<f64> = results.iter().map(|m| m.test_acc_pct).collect();
    println!(
        "{} {} over {} fold(s): train {:.2}%  test {:.2}%",
        data.name,
        cfg.representation,
        results.len(),
        mean(&train),
        mean(&test)
    );
    Ok(())
}

fn render(args: RenderArgs) -> Result<()> {
    let file = File::open(&args.snapshot).with_context(|| format!("opening {}", args.snapshot.display()))?;
    let pop = Population::read_snapshot(BufReader::new(file))?;
    if pop.dims() != 2 {
        bail!("landscapes need a 2-input ruleset, snapshot has {} inputs", pop.dims());
    }
    if args.resolution == 0 {
        bail!("resolution must be positive");
    }
    let img = if args.classes {
        render_class_landscape(&pop, args.resolution, args.theta_exploit, args.fallback)
    } else if !args.matching.is_empty() {
        let rules = args
            .matching
            .iter()
            .map(|&i| {
                pop.rules()
                    .get(i)
                    .cloned()
                    .with_context(|| format!("rule index {i} out of range ({} rules)", pop.rules().len()))
            })
            .collect::<Result<Vec<_>>>()?;
        render_matching_landscape(&rules, args.resolution)
    } else {
        bail!("pass --classes or --matching RULE_INDEX...");
    };
    img.write_pgm(create(&args.out)?)?;
    Ok(())
}
