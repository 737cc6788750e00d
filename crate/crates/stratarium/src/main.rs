//! Command-line front end: generate point sets, measure them, run the
//! benchmark harnesses.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Serialize;

use stratarium::bench::{
    run_integration_experiment, run_optimization_experiment, run_variant_comparison, DesignSpec,
    ExperimentReport, FunctionFamily, NormalTransform, PssKind, TestFunction,
};
use stratarium::error::Error;
use stratarium::latinize::{lh_violations, WarmStart};
use stratarium::metrics::{
    covering_radius_bounds, discrepancy_t, expected_discrepancy_sq, separation_distance,
};
use stratarium::sample::{read_points_csv, write_points_csv, BatesParameter};
use stratarium::stratify::{stratification_from_json, stratification_to_json};
use stratarium::{Result, RngStream};

#[derive(Parser)]
#[command(name = "stratarium", version, about = "Stratified and quasirandom point sets in the unit hypercube")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set and write it as CSV.
    Sample(SampleArgs),
    /// Measure a CSV point set: discrepancy, covering-radius bounds, separation.
    Measure(MeasureArgs),
    /// Run benchmark harnesses.
    Bench {
        #[command(subcommand)]
        command: BenchCommand,
    },
}

#[derive(Args)]
struct SampleArgs {
    /// One of: srs, lhs, gss, algss, lgss, pss, algpss, lgpss, sukharev,
    /// grid, halton, korobov, lkorobov.
    #[arg(long)]
    method: String,
    /// Dimension of the points.
    #[arg(long)]
    n: usize,
    /// Number of points.
    #[arg(long = "N")]
    num_points: usize,
    /// Bates parameter for stratified methods: a positive integer or "inf".
    #[arg(long, default_value = "1")]
    b: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Group spec for padded designs, e.g. "2x50" or "4x1+1x2".
    #[arg(long)]
    groups: Option<String>,
    /// Lattice candidates for korobov methods.
    #[arg(long, default_value_t = 30)]
    trials: usize,
    /// Avoid splits giving two odd child counts (stratified methods).
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    avoid_odd: bool,
    /// Warm start for exact latinization: "cog" or "greedy".
    #[arg(long, default_value = "cog")]
    warm_start: String,
    /// Sequence offset for halton.
    #[arg(long, default_value_t = 0)]
    start_index: u64,
    /// Also write the underlying stratification as JSON.
    #[arg(long, value_name = "PATH")]
    emit_strata: Option<PathBuf>,
    /// Emit a "x0,x1,..." header line.
    #[arg(long)]
    header: bool,
    /// Output path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureArgs {
    /// CSV point set in the unit hypercube.
    input: PathBuf,
    /// Stratification JSON to use for the covering-radius upper bound;
    /// without it the partition is rebuilt around the points.
    #[arg(long, value_name = "PATH")]
    strata: Option<PathBuf>,
    /// Restarts of the retroactive partitioning.
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    /// Monte Carlo test points for the lower bound (default 10^4 * 2n).
    #[arg(long)]
    mc_samples: Option<usize>,
    /// Use 10 N Monte Carlo test points instead of the default.
    #[arg(long)]
    mc_10n: bool,
    /// Also report Latin hypercube violations per dimension.
    #[arg(long)]
    lh: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Mean-estimation experiment: std deviation of the estimate across
    /// replications, per design.
    Integrate(IntegrateArgs),
    /// Worst-case optimization experiment: gap between best sampled value
    /// and the true optimum, per design.
    Optimize(OptimizeArgs),
    /// Compare partitioning with and without odd-split avoidance by
    /// covering radius.
    Variants(VariantsArgs),
}

#[derive(Args)]
struct IntegrateArgs {
    /// Objective: rosenbrock, doublesum, or sphere.
    #[arg(long = "fn")]
    function: String,
    /// Coordinate transform: "none" or "normal:<mean>[:<sd>]".
    #[arg(long, default_value = "none")]
    transform: String,
    /// Comma-separated design tokens, e.g. "srs,lhs,gss-inf,lpss-4x25".
    #[arg(long)]
    designs: String,
    #[arg(long = "N", default_value_t = 625)]
    num_points: usize,
    /// Dimension.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Objective family: sphere, rosenbrock, doublesum, or fp.
    #[arg(long = "fn")]
    function: String,
    /// Dimension.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    designs: String,
    /// Points per replication as a multiple of the dimension.
    #[arg(long, default_value_t = 50)]
    budget_factor: usize,
    /// Absolute point count, overriding the budget factor.
    #[arg(long = "N")]
    num_points: Option<usize>,
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VariantsArgs {
    #[arg(long, default_value_t = 4)]
    min_points: usize,
    #[arg(long, default_value_t = 1024)]
    max_points: usize,
    #[arg(long, default_value_t = 2)]
    min_dim: usize,
    #[arg(long, default_value_t = 10)]
    max_dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("STRATARIUM_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::LatinizationInfeasible { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Measure(args) => cmd_measure(args),
        Command::Bench { command } => match command {
            BenchCommand::Integrate(args) => cmd_bench_integrate(args),
            BenchCommand::Optimize(args) => cmd_bench_optimize(args),
            BenchCommand::Variants(args) => cmd_bench_variants(args),
        },
    }
}

/// Writes via a temporary file in the same directory, or to stdout when no
/// path is given.
fn write_output(path: Option<&Path>, content: &[u8]) -> Result<()> {
    match path {
        None => {
            use std::io::Write;
            std::io::stdout().write_all(content)?;
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, content)?;
            fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

fn design_from_sample_args(args: &SampleArgs) -> Result<DesignSpec> {
    let b: BatesParameter = args.b.parse()?;
    let warm = match args.warm_start.as_str() {
        "cog" => WarmStart::CogHeuristic,
        "greedy" => WarmStart::RandomizedGreedy,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown warm start '{other}' (expected cog or greedy)"
            )))
        }
    };
    let group_sizes = |kind: PssKind| -> Result<DesignSpec> {
        let spec = args.groups.as_deref().ok_or_else(|| {
            Error::InvalidArgument("padded designs need --groups, e.g. --groups 2x50".into())
        })?;
        Ok(DesignSpec::Pss {
            group_sizes: stratarium::bench::parse_group_sizes(spec)?,
            kind,
        })
    };
    match args.method.as_str() {
        "srs" => Ok(DesignSpec::Srs),
        "lhs" => Ok(DesignSpec::Lhs),
        "halton" => Ok(DesignSpec::Halton {
            start_index: args.start_index,
        }),
        "gss" => Ok(DesignSpec::Gss {
            b,
            avoid_odd: args.avoid_odd,
        }),
        "algss" => Ok(DesignSpec::Algss {
            avoid_odd: args.avoid_odd,
        }),
        "lgss" => Ok(DesignSpec::Lgss {
            avoid_odd: args.avoid_odd,
            warm,
        }),
        "sukharev" => Ok(DesignSpec::Sukharev),
        "grid" => Ok(DesignSpec::Grid { b }),
        "korobov" => Ok(DesignSpec::Korobov {
            trials: args.trials,
        }),
        "lkorobov" => Ok(DesignSpec::LatinKorobov {
            trials: args.trials,
        }),
        "pss" => group_sizes(PssKind::Plain),
        "algpss" => group_sizes(PssKind::AlgssGroups),
        "lgpss" => group_sizes(PssKind::LgssGroups),
        other => Err(Error::InvalidArgument(format!(
            "unknown method '{other}'"
        ))),
    }
}

fn cmd_sample(args: SampleArgs) -> Result<()> {
    let design = design_from_sample_args(&args)?;
    let root = RngStream::from_seed(args.seed);
    let prepared = design.prepare(args.num_points, args.n, &mut root.child("prepare", 0))?;
    let (points, strat) =
        prepared.generate_full(args.num_points, args.n, &mut root.child("sample", 0))?;
    if let Some(path) = &args.emit_strata {
        let strat = strat.ok_or_else(|| {
            Error::InvalidArgument(format!(
                "method '{}' has no stratification to emit",
                args.method
            ))
        })?;
        write_output(Some(path), stratification_to_json(&strat).as_bytes())?;
    }
    let mut csv = Vec::new();
    write_points_csv(&mut csv, &points, args.header)?;
    write_output(args.output.as_deref(), &csv)
}

#[derive(Serialize)]
struct LhReport {
    per_dimension: Vec<usize>,
    total: usize,
}

#[derive(Serialize)]
struct MeasureReport {
    t_discrepancy: f64,
    t_sq_expected_random: f64,
    cr_upper: f64,
    cr_mc_lower: f64,
    cr_general_lower: f64,
    separation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lh_violations: Option<LhReport>,
}

fn cmd_measure(args: MeasureArgs) -> Result<()> {
    let file = fs::File::open(&args.input)?;
    let points = read_points_csv(BufReader::new(file))?;
    let strat = match &args.strata {
        Some(path) => Some(stratification_from_json(&fs::read_to_string(path)?)?),
        None => None,
    };
    let mc_samples = match (args.mc_samples, args.mc_10n) {
        (Some(m), _) => m,
        (None, true) => 10 * points.num_points(),
        (None, false) => 10_000 * 2 * points.dim(),
    };
    let mut rng = RngStream::from_seed(args.seed).child("measure", 0);
    let bounds = covering_radius_bounds(
        &points,
        strat.as_ref(),
        mc_samples,
        args.restarts,
        &mut rng,
    )?;
    let report = MeasureReport {
        t_discrepancy: discrepancy_t(&points)?,
        t_sq_expected_random: expected_discrepancy_sq(points.num_points(), points.dim()),
        cr_upper: bounds.upper,
        cr_mc_lower: bounds.mc_lower,
        cr_general_lower: bounds.general_lower,
        separation: if points.num_points() >= 2 {
            Some(separation_distance(&points)?)
        } else {
            None
        },
        lh_violations: args.lh.then(|| {
            let per_dimension = lh_violations(&points);
            let total = per_dimension.iter().sum();
            LhReport {
                per_dimension,
                total,
            }
        }),
    };
    let mut text = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Numeric(format!("report serialization: {e}")))?;
    text.push('\n');
    write_output(args.output.as_deref(), text.as_bytes())
}

fn parse_designs(tokens: &str) -> Result<Vec<DesignSpec>> {
    tokens
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(DesignSpec::parse)
        .collect()
}

fn parse_transform(token: &str) -> Result<Option<NormalTransform>> {
    if token == "none" {
        return Ok(None);
    }
    let rest = token.strip_prefix("normal:").ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown transform '{token}' (expected none or normal:<mean>[:<sd>])"
        ))
    })?;
    let mut parts = rest.split(':');
    let mean: f64 = parts
        .next()
        .unwrap_or_default()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad transform mean in '{token}'")))?;
    let sd: f64 = match parts.next() {
        Some(s) => s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad transform sd in '{token}'")))?,
        None => 1.0,
    };
    Ok(Some(NormalTransform { mean, sd }))
}

fn integration_function(name: &str, dim: usize) -> Result<TestFunction> {
    match name {
        "rosenbrock" => Ok(TestFunction::rosenbrock(dim)),
        "doublesum" => Ok(TestFunction::double_sum(dim)),
        "sphere" => Ok(TestFunction::sphere(dim)),
        other => Err(Error::InvalidArgument(format!(
            "unknown function '{other}' (expected rosenbrock, doublesum, or sphere)"
        ))),
    }
}

fn reports_to_csv(reports: &[ExperimentReport]) -> String {
    let mut out = String::from(ExperimentReport::csv_header());
    out.push('\n');
    for r in reports {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    out
}

fn cmd_bench_integrate(args: IntegrateArgs) -> Result<()> {
    let designs = parse_designs(&args.designs)?;
    if designs.is_empty() {
        return Err(Error::InvalidArgument("no designs given".into()));
    }
    let f = integration_function(&args.function, args.n)?;
    let transform = parse_transform(&args.transform)?;
    let reports = designs
        .iter()
        .map(|d| {
            run_integration_experiment(d, &f, transform, args.num_points, args.reps, args.seed)
        })
        .collect::<Result<Vec<_>>>()?;
    write_output(args.output.as_deref(), reports_to_csv(&reports).as_bytes())
}

fn cmd_bench_optimize(args: OptimizeArgs) -> Result<()> {
    let designs = parse_designs(&args.designs)?;
    if designs.is_empty() {
        return Err(Error::InvalidArgument("no designs given".into()));
    }
    let family = FunctionFamily::parse(&args.function)?;
    let n_points = args.num_points.unwrap_or(args.budget_factor * args.n);
    let reports = designs
        .iter()
        .map(|d| {
            run_optimization_experiment(d, family, args.n, n_points, args.reps, args.seed)
        })
        .collect::<Result<Vec<_>>>()?;
    write_output(args.output.as_deref(), reports_to_csv(&reports).as_bytes())
}

fn cmd_bench_variants(args: VariantsArgs) -> Result<()> {
    let cmp = run_variant_comparison(
        (args.min_points, args.max_points),
        (args.min_dim, args.max_dim),
        args.seed,
    )?;
    write_output(args.output.as_deref(), cmp.to_csv().as_bytes())
}
