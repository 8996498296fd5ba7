//! `jrmt`: sampling, kernels, gap probabilities and principal angles from the
//! command line. Grids and spectra are written as CSV, scalars as JSON.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use jrmt::cdkernel::{kernel, one_point_density, rescaled_hard, rescaled_soft_at, soft_edge, KernelSpec};
use jrmt::empirics::{monte_carlo, run_experiment, Experiment, Grid, Regime};
use jrmt::ensembles::{reduce_ranks, sample_nontrivial, EigenMap, ReductionCase, Route};
use jrmt::fredholm::{largest_eval_cdf, tracy_widom_cdf};
use jrmt::limits::{airy_kernel, banach_cos2, bessel_kernel, edge_profile, sine_kernel};
use jrmt::matalg::principal_cosines;
use jrmt::randgen::haar_frame;
use jrmt::{Error, Params};

#[derive(Parser)]
#[command(name = "jrmt", version, about = "Jacobi ensembles from products of random projectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample non-trivial eigenvalues of π π̃ π, one row per trial
    Sample(SampleArgs),
    /// Finite-n one-point density and its limit on a grid
    Density(DensityArgs),
    /// Rescaled kernel and its limit on a (u, v) grid
    Kernel(KernelArgs),
    /// P(largest eigenvalue ≤ x) as a Fredholm determinant
    Gap(GapArgs),
    /// Tracy–Widom (β = 2) distribution function
    Tw(TwArgs),
    /// Largest squared cosine of principal angles between random subspaces
    Angles(AnglesArgs),
    /// Error decay of a kernel limit over a list of n
    Experiment(ExperimentArgs),
}

#[derive(Args, Serialize)]
struct Output {
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    qtilde: usize,
    /// projector | wishart | tridiagonal
    #[arg(long, default_value = "wishart")]
    route: String,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct DensityArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// lo:hi:count
    #[arg(long, default_value = "-0.9:0.9:37", allow_hyphen_values = true)]
    grid: String,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct KernelArgs {
    /// bulk | soft | hard
    #[arg(long)]
    regime: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Bulk centre; defaults to the middle of the limiting support
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    ugrid: String,
    /// lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    vgrid: String,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct GapArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, default_value_t = 64)]
    quad: usize,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct TwArgs {
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 64)]
    quad: usize,
    #[arg(long, default_value_t = 12.0)]
    tail: f64,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct AnglesArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    qprime: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct ExperimentArgs {
    /// onepoint | bulk | soft | hard
    #[arg(long)]
    regime: String,
    /// Comma separated sizes
    #[arg(long, default_value = "100,200,400")]
    ns: String,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.25)]
    beta: f64,
    /// Fixed b for the hard regime
    #[arg(long, default_value_t = 0)]
    hard_b: u32,
    /// lo:hi:count, replacing the regime's default grid
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) | Error::Domain(_) | Error::Validation(_) | Error::Regime(_) => 2,
            Error::Singular(_) | Error::Numeric(_) | Error::Consistency(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Res<T> = std::result::Result<T, Failure>;

fn parse_grid(s: &str) -> Res<Grid> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || usage(format!("malformed grid {s:?}, expected lo:hi:count"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(Grid::new(lo, hi, count)?)
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV body plus a `# config=` trailer.
fn csv(header: &[&str], rows: &[Vec<f64>], config: &Value) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| num(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    let _ = writeln!(s, "# config={config}");
    s
}

fn json_doc(config: &Value, mut result: Value) -> String {
    result["config"] = config.clone();
    let mut s = serde_json::to_string_pretty(&result).expect("json values serialize");
    s.push('\n');
    s
}

/// Writes to a temporary file next to `path` and renames it into place.
fn emit(out: &Option<PathBuf>, body: &str) -> Res<()> {
    let io = |e: std::io::Error| Failure { code: 1, message: format!("write failed: {e}") };
    match out {
        None => std::io::stdout().write_all(body.as_bytes()).map_err(io),
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
                _ => PathBuf::from("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(body.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn config<A: Serialize>(command: &str, args: &A) -> Value {
    let mut v = serde_json::to_value(args).expect("arguments serialize");
    v["command"] = json!(command);
    v
}

fn cmd_sample(args: &SampleArgs) -> Res<String> {
    let route: Route = args.route.parse()?;
    if args.trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let plan = reduce_ranks(args.n, args.q, args.qtilde)?;
    let rows = monte_carlo(args.seed, args.trials, |rng, _| Ok(sample_nontrivial(rng, &plan, route)?.into_vec()))?;
    let mut cfg = config("sample", args);
    let case = match plan.case {
        ReductionCase::AlreadyCanonical => "canonical",
        ReductionCase::Swap => "swap",
        ReductionCase::Reflect => "reflect",
        ReductionCase::SwapThenReflect => "swap_then_reflect",
    };
    cfg["plan"] = json!({
        "case": case,
        "canonical": [plan.canonical.n, plan.canonical.q, plan.canonical.q_tilde],
        "eigen_map": if plan.eigen_map == EigenMap::Reflect { "1-x" } else { "x" },
        "kept_count": plan.kept_count,
    });
    let names: Vec<String> = (1..=plan.kept_count).map(|k| format!("lambda_{k}")).collect();
    let header: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(csv(&header, &rows, &cfg))
}

fn cmd_density(args: &DensityArgs) -> Res<String> {
    let grid = parse_grid(&args.grid)?;
    let params = Params::new(args.n, args.a, args.b)?;
    let spec = KernelSpec::new(params);
    let prof = edge_profile(params.alpha(), params.beta())?;
    let mut rows = Vec::with_capacity(grid.count);
    for x in grid.points() {
        let limit = prof.density(x)?;
        rows.push(vec![x, one_point_density(&spec, x)?, limit]);
    }
    let mut cfg = config("density", args);
    cfg["support"] = json!([prof.r, prof.s]);
    Ok(csv(&["x", "finite_n_density", "limit_f"], &rows, &cfg))
}

fn cmd_kernel(args: &KernelArgs) -> Res<String> {
    let regime: Regime = args.regime.parse()?;
    let (ug, vg) = (parse_grid(&args.ugrid)?, parse_grid(&args.vgrid)?);
    let params = Params::new(args.n, args.a, args.b)?;
    let spec = KernelSpec::new(params);
    let mut cfg = config("kernel", args);
    let mut rows = Vec::with_capacity(ug.count * vg.count);
    match regime {
        Regime::Bulk => {
            let x = match args.x {
                Some(x) => x,
                None => edge_profile(params.alpha(), params.beta())?.midpoint(),
            };
            let c = jrmt::cdkernel::bulk_scale(&spec, x)?;
            cfg["x"] = json!(x);
            for u in ug.points() {
                for v in vg.points() {
                    rows.push(vec![u, v, kernel(&spec, x + u / c, x + v / c)? / c, sine_kernel(u, v)]);
                }
            }
        }
        Regime::Soft => {
            let edge = soft_edge(&params)?;
            cfg["s_n"] = json!(edge.s_n);
            cfg["h_n"] = json!(edge.h_n);
            for u in ug.points() {
                for v in vg.points() {
                    rows.push(vec![u, v, rescaled_soft_at(&spec, edge, u, v)?, airy_kernel(u, v)]);
                }
            }
        }
        Regime::Hard => {
            if args.b.fract() != 0.0 || args.b < 0.0 {
                return Err(usage(format!("hard regime needs a nonnegative integer b, got {}", args.b)));
            }
            let b = args.b as u32;
            for u in ug.points() {
                for v in vg.points() {
                    rows.push(vec![u, v, rescaled_hard(&spec, u, v)?, bessel_kernel(b, u, v)?]);
                }
            }
        }
        Regime::OnePoint => return Err(usage("kernel regime must be bulk, soft or hard")),
    }
    Ok(csv(&["u", "v", "rescaled", "limit"], &rows, &cfg))
}

fn cmd_gap(args: &GapArgs) -> Res<String> {
    let params = Params::new(args.n, args.a, args.b)?;
    let gap = largest_eval_cdf(&params, args.x, args.quad)?;
    Ok(json_doc(&config("gap", args), json!({ "gap": gap })))
}

fn cmd_tw(args: &TwArgs) -> Res<String> {
    let cdf = tracy_widom_cdf(args.t, args.quad, args.tail)?;
    Ok(json_doc(&config("tw", args), json!({ "cdf": cdf })))
}

fn cmd_angles(args: &AnglesArgs) -> Res<String> {
    if args.trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let (n, q, qp) = (args.n, args.q, args.qprime);
    if q == 0 || qp == 0 || q > n || qp > n {
        return Err(usage(format!("ranks q = {q}, qprime = {qp} must lie in 1..={n}")));
    }
    let maxes = monte_carlo(args.seed, args.trials, |rng, _| {
        let c = principal_cosines(&haar_frame(rng, n, q)?, &haar_frame(rng, n, qp)?)?;
        Ok(c.iter().map(|c| c * c).fold(0.0, f64::max))
    })?;
    let m = maxes.len() as f64;
    let mean = maxes.iter().sum::<f64>() / m;
    let var = maxes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
    let (alpha, beta) = (q as f64 / n as f64, qp as f64 / n as f64);
    let predicted = if alpha + beta < 1.0 { Some(banach_cos2(alpha, beta)?) } else { None };
    let result = json!({
        "max_cos2": {
            "mean": mean,
            "std": var.sqrt(),
            "min": maxes.iter().cloned().fold(f64::INFINITY, f64::min),
            "max": maxes.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        },
        "predicted_s": predicted,
    });
    Ok(json_doc(&config("angles", args), result))
}

fn cmd_experiment(args: &ExperimentArgs) -> Res<String> {
    let regime: Regime = args.regime.parse()?;
    let ns = args
        .ns
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| usage(format!("malformed --ns {:?}", args.ns)))?;
    let mut exp = Experiment::new(regime, ns, args.alpha, args.beta).with_hard_b(args.hard_b);
    if let Some(g) = &args.grid {
        exp = exp.with_grid(parse_grid(g)?);
    }
    let report = run_experiment(&exp)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok(json_doc(&config("experiment", args), json!({ "report": value })))
}

fn configure_threads() -> Res<()> {
    let Ok(raw) = std::env::var("JRMT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| usage(format!("JRMT_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure { code: 1, message: e.to_string() })
}

fn run(cli: Cli) -> Res<()> {
    configure_threads()?;
    let (body, out) = match &cli.command {
        Command::Sample(a) => (cmd_sample(a)?, &a.output.out),
        Command::Density(a) => (cmd_density(a)?, &a.output.out),
        Command::Kernel(a) => (cmd_kernel(a)?, &a.output.out),
        Command::Gap(a) => (cmd_gap(a)?, &a.output.out),
        Command::Tw(a) => (cmd_tw(a)?, &a.output.out),
        Command::Angles(a) => (cmd_angles(a)?, &a.output.out),
        Command::Experiment(a) => (cmd_experiment(a)?, &a.output.out),
    };
    emit(out, &body)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("jrmt: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
