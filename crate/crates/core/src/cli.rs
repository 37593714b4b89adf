//! The `parastat` command line.
//!
//! [`parse_args`] turns an argument vector into a [`Cli`] (or a usage
//! error), and [`execute`] runs it against arbitrary output streams and
//! returns the process exit code: 0 on success, 1 on a domain error (the
//! error name is printed first on standard error), 2 on a usage error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paracomplex::Paracomplex;
use crate::projective::{cross_ratio_distance, hermitian_distance, Hyperquadric, PointJson, ProjectivePoint};
use crate::pseudo_metric::{causal_class, signature_of_gram, BilinearForm};
use crate::stat_manifold::{
    bhattacharyya_affinity, embed_projective, fisher_rao_distance, geodesic_trace, trace_to_csv, DistJson,
    Direction, ProbDist,
};
use crate::verify::{run_all, run_suite, SuiteReport};
use crate::Pc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Parser, PartialEq)]
#[command(name = "parastat", version, about = "Paracomplex and information geometry toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, PartialEq)]
pub struct GlobalOpts {
    /// Seed for randomized commands (required by `verify`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Eigenvalue tolerance for `signature`, null-cone tolerance for `causal`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Radius `r` of the Hermitian and cross-ratio distances.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Bhattacharyya,
    FisherRao,
    Hermitian,
    CrossRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PcOp {
    Add,
    Sub,
    Mul,
    Div,
    Conj,
    Inv,
    Norm,
}

#[derive(Debug, Clone, Subcommand, PartialEq)]
pub enum Command {
    /// Paracomplex arithmetic on `x+yε` (or `x+yj`) and `(z₊|z₋)` literals.
    Pc {
        #[arg(value_enum)]
        op: PcOp,
        #[arg(allow_hyphen_values = true, num_args = 1..=2, required = true)]
        operands: Vec<String>,
    },
    /// Distance between two distributions or projective points (JSON files).
    Dist {
        #[arg(long, value_enum)]
        metric: Metric,
        a: PathBuf,
        b: PathBuf,
    },
    /// Exponential-tilt geodesic trace from a distribution.
    Geodesic {
        /// Tilt direction, comma separated, one value per atom.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        s_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        p0: PathBuf,
    },
    /// Inertia of a symmetric matrix (JSON array of rows) or of `B^n_l`.
    #[command(group(ArgGroup::new("source").required(true).args(["gram", "dim"])))]
    Signature {
        gram: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 1, requires = "dim")]
        index: usize,
    },
    /// Causal class of a vector under `B^n_l` (`n` = vector length).
    Causal {
        #[arg(long, default_value_t = 1)]
        index: usize,
        /// Comma-separated components.
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Run a verification suite (or `all`) and print its report.
    Verify {
        #[arg(long)]
        suite: String,
        /// Tolerance table override, `name=value`; repeatable.
        #[arg(long = "override", value_name = "NAME=VALUE")]
        overrides: Vec<String>,
    },
}

/// Parses `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    if let Command::Verify { .. } = cli.command {
        if cli.global.seed.is_none() {
            return Err(clap::Error::raw(clap::error::ErrorKind::MissingRequiredArgument, "verify requires --seed\n"));
        }
    }
    Ok(cli)
}

/// Runs a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Pc { op, operands } => pc(cli, *op, operands, out),
        Command::Dist { metric, a, b } => dist(cli, *metric, a, b, out),
        Command::Geodesic { q, s_max, steps, p0 } => geodesic(cli, q, *s_max, *steps, p0, out),
        Command::Signature { gram, dim, index } => signature(cli, gram.as_deref(), *dim, *index, out),
        Command::Causal { index, vector } => causal(cli, *index, vector, out),
        Command::Verify { suite, overrides } => verify(cli, suite, overrides, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            EXIT_DOMAIN
        }
    }
}

/// Parses argv and executes; usage errors and help are reported here.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            }
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<i32> {
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn read_dist(path: &Path) -> Result<ProbDist> {
    let raw: DistJson = serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    ProbDist::try_from(raw)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointOrDist {
    Point(PointJson),
    Dist(DistJson),
}

/// Reads a projective point; a distribution file is embedded by `√p`.
pub fn read_point(path: &Path) -> Result<ProjectivePoint> {
    let raw: PointOrDist =
        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match raw {
        PointOrDist::Point(p) => ProjectivePoint::try_from(p),
        PointOrDist::Dist(d) => embed_projective(&ProbDist::try_from(d)?),
    }
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|f| f.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{f}`"))))
        .collect()
}

fn parse_pc(text: &str) -> Result<Pc> {
    let text = text.trim();
    match text.strip_suffix('j') {
        Some(body) => format!("{body}ε").parse(),
        None => text.parse(),
    }
}

#[derive(Serialize)]
struct PcOutput {
    op: PcOp,
    value: String,
    x: f64,
    y: f64,
    plus: f64,
    minus: f64,
}

fn pc(cli: &Cli, op: PcOp, operands: &[String], out: &mut dyn Write) -> Result<i32> {
    let args = operands.iter().map(|s| parse_pc(s)).collect::<Result<Vec<Pc>>>()?;
    let binary = matches!(op, PcOp::Add | PcOp::Sub | PcOp::Mul | PcOp::Div);
    let expected = if binary { 2 } else { 1 };
    if args.len() != expected {
        return Err(Error::InvalidArgument(format!("`{op:?}` takes {expected} operand(s), got {}", args.len())));
    }
    let value = match op {
        PcOp::Add => args[0] + args[1],
        PcOp::Sub => args[0] - args[1],
        PcOp::Mul => args[0] * args[1],
        PcOp::Div => args[0].checked_div(&args[1])?,
        PcOp::Conj => args[0].conj(),
        PcOp::Inv => args[0].inv()?,
        PcOp::Norm => Paracomplex::real(args[0].norm()),
    };
    let row = PcOutput { op, value: value.to_string(), x: value.x(), y: value.y(), plus: value.plus(), minus: value.minus() };
    match cli.global.format.unwrap_or(Format::Json) {
        Format::Json => emit(out, &json(&row)),
        Format::Csv => emit(out, &format!("x,y,plus,minus\n{:.16e},{:.16e},{:.16e},{:.16e}\n", row.x, row.y, row.plus, row.minus)),
    }
}

#[derive(Serialize)]
struct DistOutput {
    metric: Metric,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    clamp: Option<f64>,
}

fn dist(cli: &Cli, metric: Metric, a: &Path, b: &Path, out: &mut dyn Write) -> Result<i32> {
    let r = cli.global.radius;
    let row = match metric {
        Metric::Bhattacharyya => DistOutput { metric, value: bhattacharyya_affinity(&read_dist(a)?, &read_dist(b)?)?, clamp: None },
        Metric::FisherRao => DistOutput { metric, value: fisher_rao_distance(&read_dist(a)?, &read_dist(b)?)?, clamp: None },
        Metric::Hermitian => DistOutput { metric, value: hermitian_distance(&read_point(a)?, &read_point(b)?, r)?, clamp: None },
        Metric::CrossRatio => {
            let (x, y) = (read_point(a)?, read_point(b)?);
            let d = cross_ratio_distance(&x, &y, &Hyperquadric::identity(x.len()), r)?;
            DistOutput { metric, value: d.value, clamp: Some(d.clamp) }
        }
    };
    match cli.global.format.unwrap_or(Format::Json) {
        Format::Json => emit(out, &json(&row)),
        Format::Csv => {
            let name = serde_json::to_value(metric).expect("metric name");
            emit(out, &format!("metric,value\n{},{:.16e}\n", name.as_str().unwrap_or_default(), row.value))
        }
    }
}

#[derive(Serialize)]
struct TraceJson {
    s: f64,
    p: Vec<f64>,
}

fn geodesic(cli: &Cli, q: &str, s_max: f64, steps: usize, p0: &Path, out: &mut dyn Write) -> Result<i32> {
    let p0 = read_dist(p0)?;
    let q = Direction::new(parse_list(q)?)?;
    let rows = geodesic_trace(&p0, &q, s_max, steps)?;
    match cli.global.format.unwrap_or(Format::Csv) {
        Format::Csv => emit(out, &trace_to_csv(&rows)),
        Format::Json => {
            let rows: Vec<TraceJson> = rows.into_iter().map(|r| TraceJson { s: r.s, p: r.p.probs().to_vec() }).collect();
            emit(out, &json(&rows))
        }
    }
}

fn signature(cli: &Cli, gram: Option<&Path>, dim: Option<usize>, index: usize, out: &mut dyn Write) -> Result<i32> {
    let g: Vec<Vec<f64>> = match (gram, dim) {
        (Some(path), _) => serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        (None, Some(n)) => BilinearForm::<f64>::canonical(n, index)?.gram(),
        (None, None) => unreachable!("clap enforces a source"),
    };
    let sig = signature_of_gram(&g, cli.global.tol.unwrap_or(1e-10))?;
    match cli.global.format.unwrap_or(Format::Json) {
        Format::Json => emit(out, &json(&sig)),
        Format::Csv => emit(out, &format!("neg,zero,pos\n{},{},{}\n", sig.neg, sig.zero, sig.pos)),
    }
}

#[derive(Serialize)]
struct CausalOutput {
    class: &'static str,
    quadratic: f64,
}

fn causal(cli: &Cli, index: usize, vector: &str, out: &mut dyn Write) -> Result<i32> {
    let x = parse_list(vector)?;
    let form = BilinearForm::<f64>::canonical(x.len(), index)?;
    let class = causal_class(&form, &x, cli.global.tol)?;
    match cli.global.format {
        Some(Format::Json) => emit(out, &json(&CausalOutput { class: class.name(), quadratic: form.quadratic(&x)? })),
        Some(Format::Csv) => emit(out, &format!("class\n{class}\n")),
        None => emit(out, &format!("{class}\n")),
    }
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, f64>> {
    items
        .iter()
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("override `{item}` is not NAME=VALUE")))?;
            let v = v.parse::<f64>().map_err(|_| Error::Parse(format!("bad tolerance `{v}`")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn verify(cli: &Cli, suite: &str, overrides: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let seed = cli.global.seed.expect("checked in parse_args");
    let overrides = parse_overrides(overrides)?;
    let reports: Vec<SuiteReport> = if suite == "all" {
        run_all(seed, &overrides)?
    } else {
        vec![run_suite(suite, seed, &overrides)?]
    };
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .expect("serializable report");
    emit(out, &format!("{text}\n"))?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(err, "SuiteFailed: {}", failed.join(", "));
        Ok(EXIT_DOMAIN)
    }
}
