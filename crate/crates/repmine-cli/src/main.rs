//! Command-line frontend: configures a mining run, an estimator benchmark,
//! or a weight sweep over a CSV dataset, and emits one JSON document.
//!
//! Output on stdout (or `--out`) is byte-identical across repeated runs
//! with the same configuration and seed; all diagnostics, including real
//! wall-clock timings, go to stderr.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use serde::Serialize;

use repmine_core::dataset::{
    build_population, discretize, infer_specs, load_csv, stratify, Population,
};
use repmine_core::error::{Error, Result};
use repmine_core::estimators::EstimatorKind;
use repmine_core::search::{mine_topk, MineConfig, ResultEntry, SearchStats};
use repmine_core::selection::{generate_propositions, Proposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Mine the top-k subgroups at one weight.
    Mine,
    /// Mine once per requested estimator and report their effort side by side.
    Bench,
    /// Mine the top subgroup at each weight in {0, 0.1, ..., 0.9}.
    Sweep,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Mine => "mine",
            Mode::Bench => "bench",
            Mode::Sweep => "sweep",
        }
    }
}

/// Representative subgroup discovery on tabular CSV data.
#[derive(Parser, Debug)]
#[command(name = "repmine", version, disable_help_subcommand = true)]
struct Args {
    /// Input CSV file (comma-separated, UTF-8, header row).
    #[arg(long)]
    input: PathBuf,

    /// Name of the numeric target column.
    #[arg(long)]
    target: String,

    /// Name of the binary control column.
    #[arg(long)]
    control: String,

    /// Equal-frequency bin count for numeric attributes.
    #[arg(long, default_value_t = 4)]
    bins: usize,

    /// Balance weight `a` in [0, 1); required for mine and bench modes.
    #[arg(long)]
    weight: Option<f64>,

    /// Number of subgroups to mine.
    #[arg(long, default_value_t = 5)]
    topk: usize,

    /// Approximation factor in (0, 1]; 1 mines exactly.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,

    /// Maximum conjunction length.
    #[arg(long, default_value_t = 3)]
    max_depth: usize,

    /// Optimistic estimator: naive, brig, or rawr (bench mode accepts a
    /// comma-separated list).
    #[arg(long, default_value = "rawr")]
    estimator: String,

    /// Seed for the stratified downsampling draw.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Node-expansion budget for each mining run.
    #[arg(long, default_value_t = 50_000_000)]
    budget: usize,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// What to run.
    #[arg(long, value_enum, default_value_t = Mode::Mine)]
    mode: Mode,
}

/// Configuration echo embedded in every output document.
#[derive(Serialize)]
struct ConfigOut {
    input: String,
    target: String,
    control: String,
    bins: usize,
    weight: Option<f64>,
    topk: usize,
    alpha: f64,
    max_depth: usize,
    estimator: String,
    seed: u64,
    budget: usize,
    out: Option<String>,
    mode: &'static str,
}

impl ConfigOut {
    fn from_args(args: &Args) -> Self {
        ConfigOut {
            input: args.input.display().to_string(),
            target: args.target.clone(),
            control: args.control.clone(),
            bins: args.bins,
            weight: args.weight,
            topk: args.topk,
            alpha: args.alpha,
            max_depth: args.max_depth,
            estimator: args.estimator.clone(),
            seed: args.seed,
            budget: args.budget,
            out: args.out.as_ref().map(|p| p.display().to_string()),
            mode: args.mode.name(),
        }
    }
}

#[derive(Serialize)]
struct ResultOut {
    descriptor: String,
    coverage: f64,
    tendency: f64,
    covcent: f64,
    repr: f64,
    f: f64,
    m1: usize,
    m2: usize,
    size: usize,
}

impl From<&ResultEntry<f64>> for ResultOut {
    fn from(entry: &ResultEntry<f64>) -> Self {
        ResultOut {
            descriptor: entry.descriptor.clone(),
            coverage: entry.scores.coverage,
            tendency: entry.scores.tendency,
            covcent: entry.scores.covcent,
            repr: entry.scores.repr,
            f: entry.scores.f,
            m1: entry.m1,
            m2: entry.m2,
            size: entry.size,
        }
    }
}

/// Effort counters as written to the document. Wall time is environment
/// noise, so the file always records 0 to stay byte-reproducible; the real
/// measurement is reported on stderr.
#[derive(Serialize)]
struct StatsOut {
    nodes_expanded: usize,
    nodes_pruned: usize,
    estimator_calls: usize,
    fccs_evals: usize,
    wall_ms: u64,
}

impl From<&SearchStats> for StatsOut {
    fn from(stats: &SearchStats) -> Self {
        StatsOut {
            nodes_expanded: stats.nodes_expanded,
            nodes_pruned: stats.nodes_pruned,
            estimator_calls: stats.estimator_calls,
            fccs_evals: stats.fccs_evals,
            wall_ms: 0,
        }
    }
}

#[derive(Serialize)]
struct MineDoc {
    version: u32,
    config: ConfigOut,
    results: Vec<ResultOut>,
    stats: StatsOut,
}

#[derive(Serialize)]
struct BenchRun {
    estimator: String,
    results: Vec<ResultOut>,
    stats: StatsOut,
}

#[derive(Serialize)]
struct BenchDoc {
    version: u32,
    config: ConfigOut,
    runs: Vec<BenchRun>,
}

#[derive(Serialize)]
struct SweepPoint {
    weight: f64,
    repr: Option<f64>,
    covcent: Option<f64>,
}

#[derive(Serialize)]
struct SweepDoc {
    version: u32,
    config: ConfigOut,
    sweep: Vec<SweepPoint>,
}

const FORMAT_VERSION: u32 = 1;

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(&args) {
        Ok(false) => 0,
        Ok(true) => {
            eprintln!("repmine: node budget exhausted; results are best-effort");
            3
        }
        Err(e) => {
            eprintln!("repmine: error: {e}");
            if e.is_config() {
                1
            } else {
                2
            }
        }
    };
    std::process::exit(code);
}

/// Executes the requested mode; returns whether any run hit its budget.
fn run(args: &Args) -> Result<bool> {
    let (population, language) = prepare(args)?;
    eprintln!(
        "repmine: {} items ({} per class), {} propositions",
        population.n(),
        population.class_count(1),
        language.len()
    );

    let (document, exhausted) = match args.mode {
        Mode::Mine => mine_document(args, &population, &language)?,
        Mode::Bench => bench_document(args, &population, &language)?,
        Mode::Sweep => sweep_document(args, &population, &language)?,
    };
    emit(args.out.as_deref(), &document)?;
    Ok(exhausted)
}

/// Loads, discretizes, stratifies, and indexes the dataset.
fn prepare(args: &Args) -> Result<(Population<f64>, Vec<Proposition>)> {
    let specs = infer_specs(&args.input, &args.target, &args.control, args.bins)?;
    let raw = load_csv(&args.input, &specs)?;
    let table = discretize::<f64>(&raw, &specs)?;
    let table = stratify(table, args.seed)?;
    let population = build_population(&table)?;
    let language = generate_propositions(&population);
    Ok((population, language))
}

fn required_weight(args: &Args) -> Result<f64> {
    args.weight.ok_or_else(|| {
        Error::InvalidConfig(format!("--weight is required for mode {}", args.mode.name()))
    })
}

fn mine_config(args: &Args, weight: f64, estimator: EstimatorKind) -> MineConfig<f64> {
    MineConfig {
        weight,
        k: args.topk,
        alpha: args.alpha,
        max_depth: args.max_depth,
        estimator,
        node_budget: args.budget,
    }
}

fn report(label: &str, stats: &SearchStats) {
    eprintln!(
        "repmine: [{label}] expanded {} nodes, pruned {}, {} estimator calls, \
         {} surface evals, {} ms",
        stats.nodes_expanded,
        stats.nodes_pruned,
        stats.estimator_calls,
        stats.fccs_evals,
        stats.wall.as_millis()
    );
}

fn mine_document(
    args: &Args,
    population: &Population<f64>,
    language: &[Proposition],
) -> Result<(String, bool)> {
    let weight = required_weight(args)?;
    let config = mine_config(args, weight, args.estimator.parse()?);
    let (results, stats) = mine_topk(population, language, &config)?;
    report(&args.estimator, &stats);
    let document = MineDoc {
        version: FORMAT_VERSION,
        config: ConfigOut::from_args(args),
        results: results.iter().map(ResultOut::from).collect(),
        stats: StatsOut::from(&stats),
    };
    Ok((to_json(&document), stats.budget_exhausted))
}

fn bench_document(
    args: &Args,
    population: &Population<f64>,
    language: &[Proposition],
) -> Result<(String, bool)> {
    let weight = required_weight(args)?;
    let kinds: Vec<EstimatorKind> = args
        .estimator
        .split(',')
        .map(|name| name.parse())
        .collect::<Result<_>>()?;
    let mut runs = Vec::with_capacity(kinds.len());
    let mut exhausted = false;
    for kind in kinds {
        let config = mine_config(args, weight, kind);
        let (results, stats) = mine_topk(population, language, &config)?;
        report(&kind.to_string(), &stats);
        exhausted |= stats.budget_exhausted;
        runs.push(BenchRun {
            estimator: kind.to_string(),
            results: results.iter().map(ResultOut::from).collect(),
            stats: StatsOut::from(&stats),
        });
    }
    let document = BenchDoc {
        version: FORMAT_VERSION,
        config: ConfigOut::from_args(args),
        runs,
    };
    Ok((to_json(&document), exhausted))
}

fn sweep_document(
    args: &Args,
    population: &Population<f64>,
    language: &[Proposition],
) -> Result<(String, bool)> {
    let estimator: EstimatorKind = args.estimator.parse()?;
    let mut sweep = Vec::with_capacity(10);
    let mut exhausted = false;
    for tenths in 0..10 {
        let weight = f64::from(tenths) / 10.0;
        let config = MineConfig { k: 1, ..mine_config(args, weight, estimator) };
        let (results, stats) = mine_topk(population, language, &config)?;
        report(&format!("a={weight}"), &stats);
        exhausted |= stats.budget_exhausted;
        let top = results.first();
        sweep.push(SweepPoint {
            weight,
            repr: top.map(|e| e.scores.repr),
            covcent: top.map(|e| e.scores.covcent),
        });
    }
    let document = SweepDoc {
        version: FORMAT_VERSION,
        config: ConfigOut::from_args(args),
        sweep,
    };
    Ok((to_json(&document), exhausted))
}

fn to_json<T: Serialize>(document: &T) -> String {
    let mut text = serde_json::to_string_pretty(document).expect("documents are serializable");
    text.push('\n');
    text
}

fn emit(out: Option<&Path>, document: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, document).map_err(|e| Error::UnreadableFile {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{document}");
            Ok(())
        }
    }
}
