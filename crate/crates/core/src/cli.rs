//! Command-line front end.
//!
//! Exit codes: 0 success, 1 search stopped by a budget, 2 usage error,
//! 3 data error, 4 internal invariant violation.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};

use crate::bounds::{EstimatorKind, DEFAULT_GENERAL_CAP};
use crate::dataset::{build_propositions, load_csv, Binning, DataTable, PropositionPool};
use crate::error::{Error, Result};
use crate::evalstats::{epsilon_defined, GlobalLcb, SubgroupReport, DEFAULT_DELTA};
use crate::fixtures::{bundled_fixtures, planted_table, PlantedSpec};
use crate::objectives::{GlobalStats, Objective, ObjectiveKind};
use crate::report::{
    DatasetSummary, DiscoveryReport, GlobalSummary, OutputFormat, RunSummary, SearchSummary,
};
use crate::search::{Language, Search, SearchConfig, Trace};
use crate::selfcheck::{run_checks, CheckParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPLETE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "subdisc",
    version,
    about = "Optimal subgroup discovery for numeric targets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the best subgroups of a CSV file.
    Discover(DiscoverArgs),
    /// Compare node counts and run times of the two estimators for the dispersion-corrected objective.
    Bench(BenchArgs),
    /// Run randomized comparisons against exhaustive references.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Impact,
    F0,
    F1,
    Dcb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LanguageArg {
    Cnj,
    Ccj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Top,
    General,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BinningArg {
    EqualFrequency,
    EqualWidth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// CSV file with a header row.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Name of the numeric target column.
    #[arg(long, requires = "input")]
    pub target: Option<String>,
    /// Cut points per numeric attribute.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub cuts: u64,
    #[arg(long, value_enum, default_value_t = BinningArg::EqualFrequency)]
    pub binning: BinningArg,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value_t = LanguageArg::Ccj)]
    pub language: LanguageArg,
    /// Approximation factor in (0, 1].
    #[arg(long = "a", default_value_t = 1.0)]
    pub a: f64,
    /// Maximum number of refinement steps.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: Option<u64>,
    /// Stop after expanding this many nodes.
    #[arg(long)]
    pub node_budget: Option<usize>,
    /// Stop after this many seconds.
    #[arg(long)]
    pub time_budget: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DiscoverArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::F1)]
    pub objective: ObjectiveArg,
    /// Defaults to the tightest estimator for the objective.
    #[arg(long, value_enum)]
    pub estimator: Option<EstimatorArg>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub top_k: u64,
    /// Confidence parameter of the Chebyshev bound.
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write the expansion log as JSON lines.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Without `--input`, the bundled planted-pattern fixtures are used.
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Added to the seeds of the bundled fixtures.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Largest multiset compared against subset enumeration (at most 20).
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=20))]
    pub max_size: u64,
    /// Largest multiset in the linear-versus-quadratic comparison.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..=5000))]
    pub window_max_size: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::bounds::WINDOW_RADIUS, hide = true)]
    pub window_radius: usize,
}

/// Exit status for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_)
        | Error::EstimatorMismatch { .. }
        | Error::CapExceeded { .. } => EXIT_USAGE,
        Error::Io { .. }
        | Error::Csv(_)
        | Error::MissingColumn(_)
        | Error::NoRows
        | Error::DegenerateTarget(_)
        | Error::EmptyInput => EXIT_DATA,
        Error::IndexOutOfRange(_) | Error::UnknownProposition(_) | Error::Invariant(_) => {
            EXIT_INVARIANT
        }
    }
}

impl From<ObjectiveArg> for ObjectiveKind {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Impact => ObjectiveKind::Impact,
            ObjectiveArg::F0 => ObjectiveKind::CovMds,
            ObjectiveArg::F1 => ObjectiveKind::DccMds,
            ObjectiveArg::Dcb => ObjectiveKind::Dcb,
        }
    }
}

impl From<EstimatorArg> for EstimatorKind {
    fn from(e: EstimatorArg) -> Self {
        match e {
            EstimatorArg::Top => EstimatorKind::TopSequence,
            EstimatorArg::General => EstimatorKind::MedianGeneral,
            EstimatorArg::Linear => EstimatorKind::MedianLinear,
        }
    }
}

impl From<BinningArg> for Binning {
    fn from(b: BinningArg) -> Self {
        match b {
            BinningArg::EqualFrequency => Binning::EqualFrequency,
            BinningArg::EqualWidth => Binning::EqualWidth,
        }
    }
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

fn language_name(l: Language) -> &'static str {
    match l {
        Language::Cnj => "cnj",
        Language::Ccj => "ccj",
    }
}

fn binning_name(b: BinningArg) -> &'static str {
    match b {
        BinningArg::EqualFrequency => "equal-frequency",
        BinningArg::EqualWidth => "equal-width",
    }
}

impl SearchArgs {
    fn config(&self, estimator: Option<EstimatorKind>, top_k: usize) -> Result<SearchConfig> {
        let time_budget = match self.time_budget {
            Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
            Some(t) => {
                return Err(Error::InvalidParameter(format!(
                    "time budget must be positive, got {t}"
                )))
            }
            None => None,
        };
        let cfg = SearchConfig {
            approximation: self.a,
            depth_limit: self.depth.map(|d| d as usize),
            top_k,
            language: match self.language {
                LanguageArg::Cnj => Language::Cnj,
                LanguageArg::Ccj => Language::Ccj,
            },
            estimator,
            node_budget: self.node_budget,
            time_budget,
            general_cap: DEFAULT_GENERAL_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

struct Loaded {
    input: String,
    table: DataTable,
    dropped: usize,
    pool: PropositionPool,
}

fn load(data: &DataArgs) -> Result<Loaded> {
    let (Some(input), Some(target)) = (&data.input, &data.target) else {
        return Err(Error::InvalidParameter(
            "--input and --target are required".into(),
        ));
    };
    let (table, summary) = load_csv(input, target, &HashMap::new())?;
    if summary.dropped_rows > 0 {
        warn!(
            "dropped {} rows with a missing or non-numeric target",
            summary.dropped_rows
        );
    }
    let pool = build_propositions(&table, data.cuts as usize, data.binning.into())?;
    info!("{} rows, {} propositions", table.rows(), pool.len());
    Ok(Loaded {
        input: input.display().to_string(),
        table,
        dropped: summary.dropped_rows,
        pool,
    })
}

fn write_trace(path: &PathBuf, trace: &Trace) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.clone(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    trace.write_json_lines(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

/// Runs `discover` and returns the report with a completion flag.
pub fn discover(args: &DiscoverArgs) -> Result<(DiscoveryReport, Trace)> {
    let loaded = load(&args.data)?;
    let targets = loaded.table.target();
    let global = GlobalStats::from_targets(targets)?;
    let objective = Objective::new(args.objective.into(), global)?;
    let cfg = args
        .search
        .config(args.estimator.map(Into::into), args.top_k as usize)?;
    let estimator = cfg
        .estimator
        .unwrap_or_else(|| EstimatorKind::best_for(&objective));
    let language = cfg.language;
    let lcb = match GlobalLcb::from_targets(targets, args.delta) {
        Ok(lcb) => Some(lcb),
        Err(Error::DegenerateTarget(reason)) => {
            warn!("no confidence bound: {reason}");
            None
        }
        Err(e) if epsilon_defined(targets.len(), args.delta) => return Err(e),
        Err(_) if args.delta > 0.0 && args.delta < 1.0 => {
            warn!(
                "no confidence bound: {} rows are too few for delta = {}",
                targets.len(),
                args.delta
            );
            None
        }
        Err(e) => return Err(e),
    };
    let (results, trace) = Search::new(&loaded.pool, targets, &objective, cfg)?.run()?;
    if let Some(path) = &args.trace {
        write_trace(path, &trace)?;
    }
    let subgroups = results
        .iter()
        .map(|r| {
            let q = r.selector.extension().sorted_values(targets);
            match &lcb {
                Some(lcb) => SubgroupReport::new(r.description.clone(), r.value, &q, lcb),
                None => SubgroupReport::without_bound(
                    r.description.clone(),
                    r.value,
                    &q,
                    targets.len(),
                    args.delta,
                ),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let report = DiscoveryReport {
        dataset: DatasetSummary {
            input: loaded.input,
            target: loaded.table.target_name().to_owned(),
            rows: loaded.table.rows(),
            dropped_rows: loaded.dropped,
            propositions: loaded.pool.len(),
        },
        run: RunSummary {
            objective: objective.name().to_owned(),
            language: language_name(language).to_owned(),
            estimator: estimator.name().to_owned(),
            approximation: args.search.a,
            depth_limit: args.search.depth.map(|d| d as usize),
            top_k: args.top_k as usize,
            cuts: args.data.cuts as usize,
            binning: binning_name(args.data.binning).to_owned(),
            delta: args.delta,
        },
        global: GlobalSummary {
            size: global.n,
            median: global.median,
            amd: global.amd,
            mean: global.mean,
            max: global.max,
        },
        subgroups,
        search: SearchSummary {
            nodes_expanded: trace.nodes_expanded,
            nodes_enqueued: trace.nodes_enqueued,
            nodes_pruned: trace.nodes_pruned,
            wall_time_seconds: trace.wall_time.as_secs_f64(),
            complete: trace.complete,
        },
    };
    Ok((report, trace))
}

/// One row of the `bench` table.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub dataset: String,
    pub estimator: EstimatorKind,
    pub optimum: f64,
    pub nodes_expanded: usize,
    pub nodes_enqueued: usize,
    pub wall_time_seconds: f64,
    pub complete: bool,
}

pub const BENCH_COLUMNS: [&str; 7] = [
    "dataset",
    "estimator",
    "optimum",
    "nodes_expanded",
    "nodes_enqueued",
    "wall_time_seconds",
    "complete",
];

/// Optimizes the dispersion-corrected objective with both the top-sequence
/// bound of its dominating level-1 objective and its own tight bound.
pub fn bench_dataset(
    name: &str,
    table: &DataTable,
    pool: &PropositionPool,
    search: &SearchArgs,
) -> Result<[BenchRow; 2]> {
    let objective = Objective::new(
        ObjectiveKind::DccMds,
        GlobalStats::from_targets(table.target())?,
    )?;
    let run = |est: EstimatorKind| -> Result<BenchRow> {
        let start = Instant::now();
        let (res, trace) = Search::new(
            pool,
            table.target(),
            &objective,
            search.config(Some(est), 1)?,
        )?
        .run()?;
        Ok(BenchRow {
            dataset: name.to_owned(),
            estimator: est,
            optimum: res[0].value,
            nodes_expanded: trace.nodes_expanded,
            nodes_enqueued: trace.nodes_enqueued,
            wall_time_seconds: start.elapsed().as_secs_f64(),
            complete: trace.complete,
        })
    };
    Ok([
        run(EstimatorKind::TopSequence)?,
        run(EstimatorKind::MedianLinear)?,
    ])
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let mut datasets = Vec::new();
    if args.data.input.is_some() {
        let loaded = load(&args.data)?;
        datasets.push((loaded.input, loaded.table, loaded.pool));
    } else {
        info!("bench seed {}", args.seed);
        for (name, spec) in bundled_fixtures() {
            let spec = PlantedSpec {
                seed: spec.seed.wrapping_add(args.seed),
                ..spec
            };
            let table = planted_table(&spec)?;
            let pool =
                build_propositions(&table, args.data.cuts as usize, args.data.binning.into())?;
            datasets.push((name, table, pool));
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_COLUMNS)?;
    let mut status = EXIT_OK;
    for (name, table, pool) in &datasets {
        let rows = bench_dataset(name, table, pool, &args.search)?;
        for r in &rows {
            w.write_record([
                r.dataset.clone(),
                r.estimator.name().to_owned(),
                r.optimum.to_string(),
                r.nodes_expanded.to_string(),
                r.nodes_enqueued.to_string(),
                r.wall_time_seconds.to_string(),
                r.complete.to_string(),
            ])?;
        }
        if rows.iter().any(|r| !r.complete) {
            status = status.max(EXIT_INCOMPLETE);
        } else if rows[0].optimum != rows[1].optimum {
            eprintln!(
                "error: optima differ on {name}: {} with {}, {} with {}",
                rows[0].optimum,
                rows[0].estimator.name(),
                rows[1].optimum,
                rows[1].estimator.name()
            );
            status = EXIT_INVARIANT;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Invariant(e.to_string()))?;
    out.write_all(&bytes).map_err(|source| Error::Io {
        path: "<stdout>".into(),
        source,
    })?;
    Ok(status)
}

fn check(args: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    if args.trials == 0 {
        warn!("0 trials requested; nothing is checked");
    }
    let report = run_checks(&CheckParams {
        trials: args.trials,
        max_size: args.max_size as usize,
        window_max_size: args.window_max_size as usize,
        seed: args.seed,
        window_radius: args.window_radius,
    })?;
    let io_err = |source| Error::Io {
        path: "<stdout>".into(),
        source,
    };
    writeln!(out, "seed {}", report.seed).map_err(io_err)?;
    for s in &report.suites {
        writeln!(out, "{s}").map_err(io_err)?;
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    })
}

/// Executes a parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Discover(args) => {
            let (report, trace) = discover(args)?;
            report.write(args.format.into(), &mut *out)?;
            Ok(if trace.complete {
                EXIT_OK
            } else {
                EXIT_INCOMPLETE
            })
        }
        Command::Bench(args) => bench(args, out),
        Command::Check(args) => check(args, out),
    }
}

/// Parses `std::env::args`, runs the command and returns the exit status.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
