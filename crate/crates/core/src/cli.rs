//! Command-line front end of the `zetanet` binary.
//!
//! JSON goes to stdout, prose to stderr. Exit codes: 0 success, 1 usage or
//! I/O, 2 domain or numerical failure, 3 balance or sampling failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{
    dirichlet_convolve, dirichlet_inverse_cm, pointwise_product, verify_multiplicative,
    ArithmeticFunction, Multiplicativity,
};
use crate::config::{read_config, RunConfig};
use crate::degdist::{
    kmax_rule, make_directed_barnes, make_directed_separated, DegreeDistribution,
};
use crate::epidemics::{
    critical_transmissibility, epidemic_threshold_product, mean_outbreak_size, Transmissibility,
};
use crate::error::{Error, Result};
use crate::lseries::{EvalOptions, Family, LSeries};
use crate::phasescan::{self, ExportFormat, ScanFormula, Window};
use crate::sampler::{
    self, giant_component_fraction, measured_clustering, one_mode_projection, replicate_seed,
    sir_percolation_with, SampleManifest, Side,
};
use crate::thresholds::{
    clustering_formula, directed_joint_margin, directed_separated_margin, psi_bipartite,
    unipartite_margin, Phase,
};

/// Environment variable read when `--threads` is absent.
pub const THREADS_ENV: &str = "ZETANET_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "zetanet",
    version,
    about = "Random graphs with Dirichlet-series degree laws",
    args_override_self = true
)]
pub struct Cli {
    /// Worker threads (default: ZETANET_THREADS, else all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// key = value file supplying defaults for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an L-series at a real point
    #[command(args_override_self = true)]
    Eval(EvalArgs),
    /// Evaluate a threshold or structural formula
    #[command(args_override_self = true)]
    Threshold(ThresholdArgs),
    /// Scan a threshold expression over the (alpha, beta) plane
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Sample configuration-model graphs and measure them
    #[command(args_override_self = true)]
    Sample(SampleArgs),
    /// SIR bond percolation on sampled bipartite graphs
    #[command(args_override_self = true)]
    Percolate(PercolateArgs),
    /// Dirichlet-ring operations on arithmetic functions
    #[command(args_override_self = true)]
    Algebra(AlgebraArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Threshold(_) => "threshold",
            Command::Scan(_) => "scan",
            Command::Sample(_) => "sample",
            Command::Percolate(_) => "percolate",
            Command::Algebra(_) => "algebra",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    /// First series: zeta, mobius, liouville or hurwitz
    #[arg(long, default_value = "zeta")]
    pub l1: String,
    /// Second series (default: same as --l1)
    #[arg(long)]
    pub l2: Option<String>,
    /// Hurwitz shift of the first series
    #[arg(long = "k0-1")]
    pub k0_1: Option<f64>,
    /// Hurwitz shift of the second series (default: --k0-1)
    #[arg(long = "k0-2")]
    pub k0_2: Option<f64>,
}

impl FamilyArgs {
    fn families(&self) -> Result<(Family, Family)> {
        let f1 = Family::parse(&self.l1, self.k0_1)?;
        let f2 = Family::parse(
            self.l2.as_deref().unwrap_or(&self.l1),
            self.k0_2.or(self.k0_1),
        )?;
        Ok((f1, f2))
    }

    fn series(&self) -> Result<(LSeries, LSeries)> {
        let (f1, f2) = self.families()?;
        Ok((f1.series()?, f2.series()?))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    /// zeta, mobius, liouville or hurwitz
    #[arg(long)]
    pub family: String,
    /// Real argument, above the abscissa of absolute convergence
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    /// Hurwitz shift
    #[arg(long)]
    pub k0: Option<f64>,
    /// Absolute tolerance
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdKind {
    Bipartite,
    Unipartite,
    Directed,
    DirectedJoint,
    Epidemic,
    Clustering,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ThresholdArgs {
    #[arg(long, value_enum, default_value = "bipartite")]
    pub kind: ThresholdKind,
    #[command(flatten)]
    #[serde(flatten)]
    pub families: FamilyArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Second exponent (default: --alpha)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Truncation for directed-joint
    #[arg(long, default_value_t = 1000)]
    pub k_max: usize,
    /// Use the Barnes joint law for directed-joint
    #[arg(long)]
    pub barnes: bool,
    #[arg(long, default_value_t = 1.0)]
    pub w: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScanArgs {
    /// bipthr, dirthr, epidliouv, mixthr, psi, direct or epid
    #[arg(long = "eq")]
    pub eq: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub families: FamilyArgs,
    /// Grid points per axis
    #[arg(long, default_value_t = 200)]
    pub res: usize,
    /// Zero-curve tolerance on |margin|
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub alpha_min: Option<f64>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub beta_min: Option<f64>,
    #[arg(long)]
    pub beta_max: Option<f64>,
    /// Level for epidemic scans (T_mf T_fm)
    #[arg(long)]
    pub target: Option<f64>,
    /// Output file; the zero curve goes to <out>.curve.csv
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for <eq>_<res>.csv when --out is absent
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    pub format: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Giant,
    Clustering,
    Degrees,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub families: FamilyArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Second exponent (default: --alpha)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Vertices (per side for bipartite graphs)
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// Side-B vertices (default: --n)
    #[arg(long)]
    pub n_b: Option<usize>,
    /// Degree truncation (default: ceil(N^(1/(alpha-1))))
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent graphs, seeded seed ^ i
    #[arg(long, default_value_t = 1)]
    pub replicates: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    /// Bipartite graph (the default)
    #[arg(long, conflicts_with = "directed")]
    pub bipartite: bool,
    /// Directed graph
    #[arg(long)]
    pub directed: bool,
    /// Directed graph with the Barnes joint law
    #[arg(long, requires = "directed")]
    pub barnes: bool,
    #[arg(long, default_value_t = 1.0)]
    pub w: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Comma-separated: giant, clustering, degrees
    #[arg(long, value_enum, value_delimiter = ',', default_value = "giant")]
    pub measure: Vec<Measure>,
    /// Edge list of the first replicate; a .json manifest is written beside it
    #[arg(long)]
    pub edges_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PercolateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Symmetric transmissibility t_mf = t_fm
    #[arg(long, conflicts_with_all = ["t_mf", "t_fm", "sweep"])]
    pub t: Option<f64>,
    #[arg(long)]
    pub t_mf: Option<f64>,
    #[arg(long)]
    pub t_fm: Option<f64>,
    /// Sweep symmetric T in steps of this size up to 1
    #[arg(long)]
    pub sweep: Option<f64>,
    /// Outbreaks per graph and transmissibility
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Giant-outbreak cutoff as a fraction of all vertices
    #[arg(long, default_value_t = sampler::DEFAULT_GIANT_OUTBREAK)]
    pub giant_cutoff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraOp {
    Convolve,
    Pointwise,
    Inverse,
    Verify,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AlgebraArgs {
    #[arg(long, value_enum)]
    pub op: AlgebraOp,
    /// unit, epsilon, id, mobius, liouville, phi or tau
    #[arg(long)]
    pub f: String,
    /// Second operand for convolve and pointwise
    #[arg(long)]
    pub g: Option<String>,
    /// Table length
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    /// Values to print
    #[arg(long, default_value_t = 20)]
    pub show: usize,
}

/// Runs the binary with explicit argv and streams; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match inject_config(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    let threads = match resolve_threads(cli.threads) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {threads} workers: {e}");
            return 1;
        }
    };
    let mut prose = Vec::new();
    let result = pool.install(|| execute(&cli, threads, &mut prose));
    let _ = err.write_all(&prose);
    match result {
        Ok(value) => match serde_json::to_string_pretty(&value) {
            Ok(s) => {
                let _ = writeln!(out, "{s}");
                0
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// `--threads`, else `ZETANET_THREADS`, else the available parallelism.
pub fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{THREADS_ENV}='{v}' is not a thread count")))?,
            _ => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if n == 0 {
        return Err(Error::Parse("thread count must be at least 1".into()));
    }
    Ok(n)
}

fn flag_key(arg: &str) -> Option<String> {
    let body = arg.strip_prefix("--")?;
    Some(body.split('=').next().unwrap_or(body).to_string())
}

/// Splices `--key value` pairs from a `--config` file in after the
/// subcommand, skipping keys that also appear on the command line.
fn inject_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let strs: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut config_path = None;
    let mut sub_pos = None;
    let mut i = 1;
    while i < strs.len() {
        let a = &strs[i];
        if let Some(p) = a.strip_prefix("--config=") {
            config_path = Some(p.to_string());
        } else if a == "--config" {
            config_path = strs.get(i + 1).cloned();
            i += 1;
        } else if a == "--threads" && sub_pos.is_none() {
            i += 1;
        } else if !a.starts_with('-') && sub_pos.is_none() {
            sub_pos = Some(i);
        }
        i += 1;
    }
    let (Some(path), Some(pos)) = (config_path, sub_pos) else {
        return Ok(argv);
    };
    let cfg = read_config(Path::new(&path))?;
    let present: Vec<String> = strs.iter().filter_map(|a| flag_key(a)).collect();
    let flags = cfg.to_flags(&present);
    let mut out = argv[..=pos].to_vec();
    out.extend(flags.into_iter().map(OsString::from));
    out.extend_from_slice(&argv[pos + 1..]);
    Ok(out)
}

fn execute(cli: &Cli, threads: usize, err: &mut dyn Write) -> Result<Value> {
    let (mut config, body) = match &cli.command {
        Command::Eval(a) => (RunConfig::from_args("eval", a)?, cmd_eval(a, err)?),
        Command::Threshold(a) => (
            RunConfig::from_args("threshold", a)?,
            cmd_threshold(a, err)?,
        ),
        Command::Scan(a) => (RunConfig::from_args("scan", a)?, cmd_scan(a, threads, err)?),
        Command::Sample(a) => (RunConfig::from_args("sample", a)?, cmd_sample(a, err)?),
        Command::Percolate(a) => (
            RunConfig::from_args("percolate", a)?,
            cmd_percolate(a, err)?,
        ),
        Command::Algebra(a) => (RunConfig::from_args("algebra", a)?, cmd_algebra(a, err)?),
    };
    config.insert("threads", threads);
    if let Some(p) = &cli.config {
        config.insert("config_file", p);
    }
    if let Some(files) = body.get("files").and_then(Value::as_array) {
        // resolved config next to the first output file
        if let Some(first) = files.first().and_then(Value::as_str) {
            let mut p = PathBuf::from(first).into_os_string();
            p.push(".config");
            std::fs::write(&p, config.to_kv_text())?;
        }
    }
    let mut obj = json!({ "command": cli.command.name(), "config": config });
    if let (Value::Object(o), Value::Object(b)) = (&mut obj, body) {
        o.extend(b);
    }
    Ok(obj)
}

fn cmd_eval(a: &EvalArgs, err: &mut dyn Write) -> Result<Value> {
    let mut series = Family::parse(&a.family, a.k0)?.series()?;
    if let Some(tol) = a.tol {
        series = series.with_options(EvalOptions {
            tolerance: tol,
            ..EvalOptions::default()
        });
    }
    let r = series.eval(a.s)?;
    let _ = writeln!(
        err,
        "{}({}) = {} (tail bound {:.3e}, {} terms)",
        series.name(),
        a.s,
        r.value,
        r.tail_bound,
        r.terms_used
    );
    Ok(json!({ "family": series.family(), "s": a.s, "result": r }))
}

fn phase_label(m: f64) -> &'static str {
    Phase::of(m).label()
}

fn cmd_threshold(a: &ThresholdArgs, err: &mut dyn Write) -> Result<Value> {
    let (l1, l2) = a.families.series()?;
    let alpha = a.alpha;
    let beta = a.beta.unwrap_or(alpha);
    let v = match a.kind {
        ThresholdKind::Bipartite => {
            let r = psi_bipartite(&l1, alpha, &l2, beta)?;
            json!({ "margin": r.margin, "phase": phase_label(r.margin), "result": r })
        }
        ThresholdKind::Unipartite => {
            let r = unipartite_margin(&l1, alpha)?;
            json!({ "margin": r.margin, "phase": phase_label(r.margin), "result": r })
        }
        ThresholdKind::Directed => {
            let r = directed_separated_margin(&l1, alpha, &l2, beta)?;
            json!({ "margin": r.margin, "phase": phase_label(r.margin), "result": r })
        }
        ThresholdKind::DirectedJoint => {
            let pi = if a.barnes {
                make_directed_barnes(alpha, a.w, a.a, a.k_max)?
            } else {
                make_directed_separated(
                    DegreeDistribution::lgraph(&l1, alpha, a.k_max)?,
                    DegreeDistribution::lgraph(&l2, beta, a.k_max)?,
                )
            };
            let m = directed_joint_margin(&pi);
            json!({ "margin": m, "phase": phase_label(m), "balance": pi.balance(), "k_max": a.k_max })
        }
        ThresholdKind::Epidemic => {
            let prod = epidemic_threshold_product(&l1, alpha, &l2, beta)?;
            let tc = critical_transmissibility(&l1, alpha, &l2, beta).ok();
            json!({ "critical_product": prod, "t_c": tc })
        }
        ThresholdKind::Clustering => {
            let c = clustering_formula(&l1, alpha, &l2, beta)?;
            if c.out_of_range {
                let _ = writeln!(
                    err,
                    "warning: clustering formula value {} lies outside [0, 1]",
                    c.value
                );
            }
            json!({ "clustering": c })
        }
    };
    if let Some(m) = v.get("margin").and_then(Value::as_f64) {
        let _ = writeln!(
            err,
            "{:?} margin at alpha = {alpha}, beta = {beta}: {m} ({})",
            a.kind,
            phase_label(m)
        );
    } else if let Some(p) = v.get("critical_product").and_then(Value::as_f64) {
        let _ = writeln!(
            err,
            "critical T_mf T_fm at alpha = {alpha}, beta = {beta}: {p}"
        );
    }
    Ok(v)
}

fn cmd_scan(a: &ScanArgs, threads: usize, err: &mut dyn Write) -> Result<Value> {
    let (f1, f2) = a.families.families()?;
    let formula = ScanFormula::from_tag(&a.eq, f1, f2, a.target)?;
    let format = ExportFormat::parse(&a.format)?;
    let d = formula.default_window()?;
    let window = Window::new(
        (
            a.alpha_min.unwrap_or(d.alpha.0),
            a.alpha_max.unwrap_or(d.alpha.1),
        ),
        (
            a.beta_min.unwrap_or(d.beta.0),
            a.beta_max.unwrap_or(d.beta.1),
        ),
    )?;
    let res = phasescan::scan(&formula, Some(window), a.res, a.tol)?;
    let clipped = res.clipped_window != res.window;
    let _ = writeln!(
        err,
        "{}: {}x{} grid on {} workers; SUPER {}, SUB {}, OUTSIDE {}; {} zero-curve points{}",
        formula.tag(),
        a.res,
        a.res,
        threads,
        res.count(Phase::Super),
        res.count(Phase::Sub),
        res.count(Phase::Outside),
        res.zero_curve.len(),
        if clipped {
            " (window clipped to the convergence region)"
        } else {
            ""
        }
    );
    let path = match (&a.out, &a.out_dir) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            let name = phasescan::default_filename(formula.tag(), a.res);
            Some(match format {
                ExportFormat::Csv => dir.join(name),
                ExportFormat::Json => dir.join(name).with_extension("json"),
            })
        }
        (None, None) => None,
    };
    let summary = json!({
        "formula": formula.tag(),
        "window": res.window,
        "clipped_window": res.clipped_window,
        "clipped": clipped,
        "counts": {
            "SUPER": res.count(Phase::Super),
            "SUB": res.count(Phase::Sub),
            "OUTSIDE": res.count(Phase::Outside),
        },
        "zero_curve_points": res.zero_curve.len(),
    });
    match path {
        Some(p) => {
            let files = phasescan::export(&res, &p, format)?;
            let _ = writeln!(
                err,
                "wrote {}",
                files
                    .iter()
                    .map(|f| f.display().to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let mut s = summary;
            s["files"] = json!(files);
            Ok(s)
        }
        None => {
            let mut s = summary;
            s["scan"] = phasescan::to_json(&res);
            Ok(s)
        }
    }
}

fn degree_laws(g: &GraphArgs) -> Result<(DegreeDistribution, DegreeDistribution, usize)> {
    let (l1, l2) = g.families.series()?;
    let beta = g.beta.unwrap_or(g.alpha);
    let n = g.n.max(g.n_b.unwrap_or(g.n));
    let k_max = match g.k_max {
        Some(k) => k,
        None => kmax_rule(n, g.alpha.min(beta))?,
    };
    let p = DegreeDistribution::lgraph(&l1, g.alpha, k_max)?;
    let q = DegreeDistribution::lgraph(&l2, beta, k_max)?;
    p.require_unsigned()?;
    q.require_unsigned()?;
    Ok((p, q, k_max))
}

fn check_counts(g: &GraphArgs) -> Result<()> {
    if g.n == 0 || g.n_b == Some(0) || g.replicates == 0 {
        return Err(Error::InvalidParameter(
            "--n, --n-b and --replicates must be at least 1".into(),
        ));
    }
    Ok(())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn cmd_sample(a: &SampleArgs, err: &mut dyn Write) -> Result<Value> {
    let g = &a.graph;
    check_counts(g)?;
    let (l1, l2) = g.families.series()?;
    let beta = g.beta.unwrap_or(g.alpha);
    let directed = a.directed;

    let (analytic, k_max, pi, laws) = if directed {
        let k_max = g
            .k_max
            .map_or_else(|| kmax_rule(g.n, g.alpha.min(beta)), Ok)?;
        if a.barnes {
            let pi = make_directed_barnes(g.alpha, a.w, a.a, k_max)?;
            let m = directed_joint_margin(&pi);
            (
                json!({ "formula": "directed_joint", "margin": m, "phase": phase_label(m) }),
                k_max,
                Some(pi),
                None,
            )
        } else {
            let p = DegreeDistribution::lgraph(&l1, g.alpha, k_max)?;
            let q = DegreeDistribution::lgraph(&l2, beta, k_max)?;
            let r = directed_separated_margin(&l1, g.alpha, &l2, beta)?;
            let pi = make_directed_separated(p, q);
            let bal = pi.balance();
            if bal.abs() > 1e-9 {
                let _ = writeln!(err, "warning: in/out means differ by {bal:.4}; balance repair will distort the marginals");
            }
            (
                json!({ "formula": "directed_separated", "margin": r.margin, "phase": phase_label(r.margin), "balance": bal }),
                k_max,
                Some(pi),
                None,
            )
        }
    } else {
        let (p, q, k_max) = degree_laws(g)?;
        let r = psi_bipartite(&l1, g.alpha, &l2, beta);
        let analytic = match r {
            Ok(r) => {
                json!({ "formula": "bipartite", "margin": r.margin, "phase": phase_label(r.margin) })
            }
            Err(e) => json!({ "formula": "bipartite", "error": e.to_string() }),
        };
        (analytic, k_max, None, Some((p, q)))
    };

    let reps: Vec<Result<Value>> = (0..g.replicates as u64)
        .into_par_iter()
        .map(|i| {
            let seed = replicate_seed(g.seed, i);
            let sample = match (&pi, &laws) {
                (Some(pi), _) => sampler::build_directed(pi, g.n, seed)?,
                (None, Some((p, q))) => {
                    sampler::sample_bipartite(p, q, g.n, g.n_b.unwrap_or(g.n), seed)?
                }
                _ => unreachable!(),
            };
            if i == 0 {
                if let Some(path) = &a.edges_out {
                    sampler::write_edge_list(&sample, path)?;
                    let params = json!({
                        "l1": g.families.l1, "l2": g.families.l2, "alpha": g.alpha,
                        "beta": beta, "k_max": k_max, "directed": directed, "barnes": a.barnes,
                    });
                    let mut mp = path.clone().into_os_string();
                    mp.push(".json");
                    sampler::write_manifest(&SampleManifest::new(&sample, params), Path::new(&mp))?;
                }
            }
            let mut r = json!({
                "seed": seed,
                "vertices": sample.vertex_count(),
                "edges": sample.edges.len(),
                "redraws": sample.redraws,
            });
            for m in &a.measure {
                match m {
                    Measure::Giant => r["giant"] = json!(giant_component_fraction(&sample)),
                    Measure::Clustering if !directed => {
                        let proj = one_mode_projection(&sample, Side::A);
                        r["clustering_a"] = json!(measured_clustering(&proj));
                    }
                    Measure::Clustering => {}
                    Measure::Degrees => {
                        let da = sample.degrees_a.iter().map(|&d| d as f64).sum::<f64>()
                            / sample.degrees_a.len() as f64;
                        let db = sample.degrees_b.iter().map(|&d| d as f64).sum::<f64>()
                            / sample.degrees_b.len() as f64;
                        r["mean_degree_a"] = json!(da);
                        r["mean_degree_b"] = json!(db);
                    }
                }
            }
            Ok(r)
        })
        .collect();
    let reps: Vec<Value> = reps.into_iter().collect::<Result<_>>()?;

    let mut summary = json!({});
    for key in ["giant", "clustering_a"] {
        let xs: Vec<f64> = reps
            .iter()
            .filter_map(|r| r.get(key).and_then(Value::as_f64))
            .collect();
        if !xs.is_empty() {
            summary[key] = json!({
                "mean": mean(&xs),
                "min": xs.iter().copied().fold(f64::INFINITY, f64::min),
                "max": xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            });
        }
    }
    if a.measure.contains(&Measure::Clustering) && !directed {
        if let Ok(c) = clustering_formula(&l1, g.alpha, &l2, beta) {
            summary["clustering_formula"] = json!(c);
        }
    }
    if let Some(gs) = summary.get("giant") {
        let _ = writeln!(
            err,
            "{} {} graph(s), k_max = {k_max}: giant fraction mean {:.4} (analytic phase {})",
            g.replicates,
            if directed { "directed" } else { "bipartite" },
            gs["mean"].as_f64().unwrap_or(f64::NAN),
            analytic
                .get("phase")
                .and_then(Value::as_str)
                .unwrap_or("n/a")
        );
    }
    let mut v =
        json!({ "k_max": k_max, "analytic": analytic, "replicates": reps, "summary": summary });
    if let Some(p) = &a.edges_out {
        v["files"] = json!([p]);
    }
    Ok(v)
}

fn cmd_percolate(a: &PercolateArgs, err: &mut dyn Write) -> Result<Value> {
    let g = &a.graph;
    check_counts(g)?;
    let (l1, l2) = g.families.series()?;
    let beta = g.beta.unwrap_or(g.alpha);
    let (p, q, k_max) = degree_laws(g)?;
    let grid: Vec<Transmissibility> = match (a.sweep, a.t) {
        (Some(step), _) => {
            if !(step > 0.0 && step <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "sweep step {step} not in (0, 1]"
                )));
            }
            let steps = (1.0 / step + 1e-9).floor() as usize;
            (1..=steps)
                .map(|k| Transmissibility::symmetric((k as f64 * step).min(1.0)))
                .collect::<Result<_>>()?
        }
        (None, Some(t)) => vec![Transmissibility::symmetric(t)?],
        (None, None) => vec![Transmissibility::new(
            a.t_mf.unwrap_or(1.0),
            a.t_fm.unwrap_or(a.t_mf.unwrap_or(1.0)),
        )?],
    };
    let graphs: Vec<_> = (0..g.replicates as u64)
        .into_par_iter()
        .map(|i| {
            sampler::sample_bipartite(&p, &q, g.n, g.n_b.unwrap_or(g.n), replicate_seed(g.seed, i))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for t in &grid {
        let stats: Vec<_> = graphs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                sir_percolation_with(
                    s,
                    *t,
                    a.trials,
                    replicate_seed(g.seed, i as u64),
                    a.giant_cutoff,
                )
            })
            .collect::<Result<_>>()?;
        let pooled = mean(&stats.iter().map(|s| s.giant_fraction).collect::<Vec<_>>());
        let theory = mean_outbreak_size(&p, &q, *t)?;
        rows.push(json!({
            "t_mf": t.t_mf,
            "t_fm": t.t_fm,
            "giant_outbreak_fraction": pooled,
            "mean_size_a": mean(&stats.iter().map(|s| s.mean_size_a).collect::<Vec<_>>()),
            "mean_size": mean(&stats.iter().map(|s| s.mean_size).collect::<Vec<_>>()),
            "analytic_mean_size_a": if theory.subcritical { json!(theory.mean) } else { Value::Null },
            "analytic_subcritical": theory.subcritical,
        }));
    }
    let prod = epidemic_threshold_product(&l1, g.alpha, &l2, beta).ok();
    let onset = rows
        .iter()
        .find(|r| r["giant_outbreak_fraction"].as_f64().unwrap_or(0.0) >= a.giant_cutoff)
        .map(|r| r["t_mf"].clone());
    let _ =
        writeln!(
        err,
        "{} transmissibility point(s) on {} graph(s); analytic T_c = {}; giant-outbreak onset {}",
        rows.len(),
        graphs.len(),
        prod.map_or("n/a".into(), |p| format!("{:.4}", p.sqrt())),
        onset.as_ref().map_or("not reached".into(), |o| o.to_string())
    );
    Ok(json!({
        "k_max": k_max,
        "critical_product": prod,
        "t_c": prod.map(f64::sqrt),
        "onset": onset,
        "points": rows,
    }))
}

fn named_function(name: &str, n: usize) -> Result<ArithmeticFunction> {
    Ok(match name {
        "unit" | "one" => ArithmeticFunction::unit(n),
        "epsilon" | "eps" => ArithmeticFunction::epsilon(n),
        "id" | "identity" => ArithmeticFunction::identity(n),
        "mobius" | "mu" => ArithmeticFunction::mobius(n),
        "liouville" | "lambda" => ArithmeticFunction::liouville(n),
        "phi" | "euler_phi" => ArithmeticFunction::euler_phi(n),
        "tau" | "divisors" => ArithmeticFunction::divisor_count(n),
        other => {
            return Err(Error::Parse(format!(
                "unknown arithmetic function '{other}' (expected unit, epsilon, id, mobius, liouville, phi or tau)"
            )))
        }
    })
}

fn cmd_algebra(a: &AlgebraArgs, err: &mut dyn Write) -> Result<Value> {
    if a.n == 0 {
        return Err(Error::ZeroArgument);
    }
    let f = named_function(&a.f, a.n)?;
    let second = || -> Result<ArithmeticFunction> {
        let g = a
            .g
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter(format!("--g is required for {:?}", a.op)))?;
        named_function(g, a.n)
    };
    let h = match a.op {
        AlgebraOp::Convolve => dirichlet_convolve(&f, &second()?, a.n)?,
        AlgebraOp::Pointwise => pointwise_product(&f, &second()?)?,
        AlgebraOp::Inverse => dirichlet_inverse_cm(&f)?,
        AlgebraOp::Verify => f.clone(),
    };
    let check = verify_multiplicative(&h, a.n, Multiplicativity::Multiplicative);
    let complete = verify_multiplicative(&h, a.n, Multiplicativity::CompletelyMultiplicative);
    let shown: Vec<i64> = h.values().iter().take(a.show).copied().collect();
    let _ = writeln!(
        err,
        "{} = {:?}{}",
        h.name(),
        shown,
        if a.show < a.n { " ..." } else { "" }
    );
    Ok(json!({
        "name": h.name(),
        "kind": h.kind(),
        "n": a.n,
        "values": shown,
        "multiplicative": check.holds,
        "multiplicative_witness": check.witness,
        "completely_multiplicative": complete.holds,
        "completely_multiplicative_witness": complete.witness,
    }))
}
