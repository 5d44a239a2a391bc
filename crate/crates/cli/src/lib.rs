//! The `jmotive` command line.
//!
//! Every subcommand writes deterministic output to standard output, JSON
//! unless a text format is asked for. Exit codes: 0 success, 1 a verified
//! identity failed, 2 invalid input (with a diagnostic on standard error).

pub mod config;
pub mod json;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jordan_motive::birational::{
    in_z1, in_z2, transposed_spec, transposition_map, veronese, veronese_inverse, BirationalError, ProjPointC,
    ProjPointJ,
};
use jordan_motive::cayley_dickson::CdAlgebra;
use jordan_motive::motives::{
    check_jordan_params, decompose_neighbour_quadric, decompose_pfister_multiple, decompose_xj, decompose_z1,
    render_diagram, DiagramFormat, MotiveExpr,
};
use jordan_motive::par::Exec;
use jordan_motive::quadform::{hilbert_symbol, Place, QuadForm};
use jordan_motive::report::VerificationReport;
use jordan_motive::rootsys::check_orbit_dims;
use jordan_motive::scalars::{FieldSpec, Scalar};
use jordan_motive::verify::{self, SweepOptions};
use serde_json::{json, Value};
use thiserror::Error;

pub use config::{load_config, parse_config, AlgebraConfig, ConfigError};

/// Largest `n` accepted on the command line.
const MAX_N: u32 = 1000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {reason}")]
    Output { path: String, reason: String },
}

fn invalid(msg: impl ToString) -> CliError {
    CliError::Invalid(msg.to_string())
}

/// What a successful command produced: text for standard output and whether
/// everything it checked held.
struct Outcome {
    text: String,
    verified: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, verified: true }
    }

    fn json(v: &impl serde::Serialize) -> Self {
        Outcome::ok(pretty(v))
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Parser)]
#[command(name = "jmotive", version, about = "Composition algebras, Jordan algebras, the Veronese link and motivic bookkeeping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Motivic decomposition as JSON or a diagram
    Decompose(DecomposeArgs),
    /// Tate profile of a decomposition
    Profile(ProfileArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Invariants and Witt index of a diagonal form
    Witt(WittArgs),
    /// Hilbert symbol (a, b) at a place of Q
    Hilbert(HilbertArgs),
    /// The Veronese map, its inverse, or the transposition map
    Veronese(VeroneseArgs),
    /// Rank-one test for an element of J
    Rank(RankArgs),
    /// Homogeneous-space dimension checks
    Orbits {
        #[command(subcommand)]
        command: OrbitsCommand,
    },
    /// Write a decomposition diagram
    Diagram(DiagramArgs),
    /// Composition algebra data
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Quadric,
    Xj,
    Z1,
    PfisterMultiple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Blowup,
    Krashen,
    Recursion,
    Euler,
    Orbits,
    Roundtrip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VeroneseMode {
    Map,
    Inverse,
    Transpose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldKind {
    #[value(name = "Q")]
    Q,
    #[value(name = "Fp")]
    Fp,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[arg(long, value_enum, default_value = "Q")]
    field: FieldKind,
    /// Odd prime, with --field Fp
    #[arg(long)]
    p: Option<u64>,
}

impl FieldArgs {
    fn spec(&self) -> Result<FieldSpec, CliError> {
        match (self.field, self.p) {
            (FieldKind::Q, None) => Ok(FieldSpec::Rationals),
            (FieldKind::Q, Some(_)) => Err(invalid("--p is only allowed with --field Fp")),
            (FieldKind::Fp, None) => Err(invalid("--p is required with --field Fp")),
            (FieldKind::Fp, Some(p)) => FieldSpec::prime(p).map_err(|e| invalid(format!("--p: {e}"))),
        }
    }
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum)]
    target: Target,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "xj")]
    target: Target,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Restrict to one r; by default r = 0, 1, 2 and (3, 3)
    #[arg(long)]
    r: Option<u32>,
    /// Inclusive range such as 3..10
    #[arg(long, default_value = "3..10", value_parser = parse_n_range)]
    n_range: (u32, u32),
    /// Seed for sampled points (roundtrip)
    #[arg(long, default_value_t = 20080)]
    seed: u64,
    /// Points per configuration when not exhaustive (roundtrip)
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[command(flatten)]
    field: FieldArgs,
    /// Run the cases one after another
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct WittArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Comma-separated diagonal coefficients
    #[arg(long, allow_hyphen_values = true)]
    form: String,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// A prime or inf
    #[arg(long)]
    place: String,
}

#[derive(Debug, Args)]
struct VeroneseArgs {
    #[arg(value_enum)]
    mode: VeroneseMode,
    #[arg(long)]
    config: PathBuf,
    /// Source point (map, transpose) or matrix (inverse) as JSON
    #[arg(long, allow_hyphen_values = true)]
    point: String,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(long)]
    config: PathBuf,
    /// Matrix as JSON
    #[arg(long, allow_hyphen_values = true)]
    elem: String,
}

#[derive(Debug, Subcommand)]
enum OrbitsCommand {
    /// Line-item dimension report for X(J) and Z₁
    Dims {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Args)]
struct DiagramArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "quadric")]
    target: Target,
    #[arg(long, value_enum, default_value = "svg")]
    format: OutFormat,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum AlgebraCommand {
    /// Basis multiplication table: e_i e_j = coeff · e_index
    Table {
        #[arg(long)]
        r: u32,
        /// Comma-separated doubling parameters, r of them
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        a: String,
        #[command(flatten)]
        field: FieldArgs,
    },
}

/// `"3..10"` and `"3..=10"` are both inclusive; `"5"` is a single value.
fn parse_n_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad bound {t:?} in {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    if hi > MAX_N {
        return Err(format!("n must be at most {MAX_N}"));
    }
    Ok((lo, hi))
}

fn parse_list(field: FieldSpec, s: &str) -> Result<Vec<Scalar>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| field.parse(t).map_err(invalid)).collect()
}

fn check_rn(r: u32, n: u32) -> Result<(), CliError> {
    if r > 3 {
        return Err(invalid(format!("r must be at most 3 (got {r})")));
    }
    if n > MAX_N {
        return Err(invalid(format!("n must be at most {MAX_N} (got {n})")));
    }
    Ok(())
}

fn decomposition(target: Target, r: u32, n: u32) -> Result<MotiveExpr, CliError> {
    check_rn(r, n)?;
    let e = match target {
        Target::Quadric => decompose_neighbour_quadric(r, n),
        Target::Xj => decompose_xj(r, n),
        Target::Z1 => decompose_z1(r, n),
        Target::PfisterMultiple => decompose_pfister_multiple(r, n),
    };
    e.map_err(invalid)
}

fn render(e: &MotiveExpr, format: OutFormat) -> Result<String, CliError> {
    let mut text = match format {
        OutFormat::Json => return Ok(pretty(&json!({ "summands": e.summands, "profile": e.profile().counts() }))),
        OutFormat::Ascii => render_diagram(e, DiagramFormat::Ascii),
        OutFormat::Svg => render_diagram(e, DiagramFormat::Svg),
    }
    .map_err(invalid)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(text)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Output { path: path.display().to_string(), reason: e.to_string() })
}

/// Text for standard output, or the file write with a short JSON receipt.
fn emit(text: String, output: Option<&Path>) -> Result<Outcome, CliError> {
    match output {
        None => Ok(Outcome::ok(text)),
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome::json(&json!({ "written": path.display().to_string(), "bytes": text.len() })))
        }
    }
}

fn decompose(args: &DecomposeArgs) -> Result<Outcome, CliError> {
    let e = decomposition(args.target, args.r, args.n)?;
    emit(render(&e, args.out)?, args.output.as_deref())
}

fn diagram(args: &DiagramArgs) -> Result<Outcome, CliError> {
    if args.format == OutFormat::Json {
        return Err(invalid("--format must be ascii or svg"));
    }
    let e = decomposition(args.target, args.r, args.n)?;
    emit(render(&e, args.format)?, args.output.as_deref())
}

fn profile(args: &ProfileArgs) -> Result<Outcome, CliError> {
    let p = decomposition(args.target, args.r, args.n)?.profile();
    let top = p.max_degree();
    Ok(Outcome::json(&json!({
        "profile": p.counts(),
        "total": p.total(),
        "top_degree": top,
        "palindromic": top.is_none_or(|d| p.is_palindromic_about(d)),
    })))
}

fn jordan_cases(r: Option<u32>, (lo, hi): (u32, u32)) -> Result<Vec<(u32, u32)>, CliError> {
    let cases: Vec<(u32, u32)> = match r {
        Some(r) => (lo..=hi).map(|n| (r, n)).collect(),
        None => {
            let mut v: Vec<(u32, u32)> = (0..=2).flat_map(|r| (lo..=hi).map(move |n| (r, n))).collect();
            if (lo..=hi).contains(&3) {
                v.push((3, 3));
            }
            v
        }
    };
    for &(r, n) in &cases {
        check_jordan_params(r, n).map_err(invalid)?;
    }
    Ok(cases)
}

fn run_suite(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let exec = if args.sequential { Exec::Sequential } else { Exec::Parallel };
    let report: VerificationReport = match args.suite {
        Suite::Blowup => verify::blowup_suite(&jordan_cases(args.r, args.n_range)?, exec).map_err(invalid)?,
        Suite::Recursion => verify::recursion_suite(&jordan_cases(args.r, args.n_range)?, exec).map_err(invalid)?,
        Suite::Euler => verify::euler_suite(&jordan_cases(args.r, args.n_range)?, exec).map_err(invalid)?,
        Suite::Orbits => verify::orbit_suite(&jordan_cases(args.r, args.n_range)?, exec).map_err(invalid)?,
        Suite::Krashen => {
            if args.r.is_some_and(|r| r != 1) {
                return Err(invalid("the krashen suite is about r = 1"));
            }
            let ns: Vec<u32> = (args.n_range.0..=args.n_range.1).collect();
            verify::krashen_suite(&ns, exec).map_err(invalid)?
        }
        Suite::Roundtrip => {
            let cases = jordan_cases(args.r, args.n_range)?;
            let mut rs: Vec<u32> = cases.iter().map(|c| c.0).collect();
            rs.dedup();
            let ns: Vec<u32> = (args.n_range.0..=args.n_range.1).collect();
            let opts = SweepOptions { exec, seed: args.seed, samples: args.samples, ..SweepOptions::default() };
            verify::roundtrip_suite(&[args.field.spec()?], &rs, &ns, &opts)
        }
    };
    Ok(Outcome { verified: report.pass, text: pretty(&report) })
}

fn witt(args: &WittArgs) -> Result<Outcome, CliError> {
    let field = args.field.spec()?;
    let q = QuadForm::new(parse_list(field, &args.form)?).map_err(invalid)?;
    let inv = q.invariants().map_err(invalid)?;
    let hasse = inv.hasse.map(|h| h.into_iter().map(|(place, s)| (place.to_string(), Value::from(s))).collect::<serde_json::Map<_, _>>());
    Ok(Outcome::json(&json!({
        "dim": inv.dim,
        "disc": json::scalar(inv.disc.representative()),
        "signature": inv.signature,
        "hasse": hasse,
        "witt_index": q.witt_index().map_err(invalid)?,
    })))
}

fn hilbert(args: &HilbertArgs) -> Result<Outcome, CliError> {
    let q = FieldSpec::Rationals;
    let a = q.parse(&args.a).map_err(|e| invalid(format!("--a: {e}")))?;
    let b = q.parse(&args.b).map_err(|e| invalid(format!("--b: {e}")))?;
    let place: Place = args.place.parse().map_err(|e| invalid(format!("--place: {e}")))?;
    let s = hilbert_symbol(&a, &b, place).map_err(invalid)?;
    Ok(Outcome::ok(format!("{s}\n")))
}

fn load_spec(path: &Path) -> Result<Arc<jordan_motive::jordan::JordanSpec>, CliError> {
    load_config(path)?.spec().map_err(invalid)
}

/// Flags always describe the source point `c` and the matrix `x = v₂(c)`
/// involved, whichever side was given.
fn flags(c: Option<&ProjPointC>, x: Option<&ProjPointJ>) -> Value {
    json!({
        "on_quadric": c.map(ProjPointC::on_quadric),
        "in_Z1": c.map(in_z1),
        "in_Z2": x.map(in_z2),
    })
}

fn image_or_base<T>(r: Result<T, BirationalError>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(BirationalError::BasePoint) => Ok(None),
        Err(e) => Err(invalid(e)),
    }
}

fn veronese_cmd(args: &VeroneseArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&args.config)?;
    let mut out = serde_json::Map::new();
    let flags = match args.mode {
        VeroneseMode::Map => {
            let c = json::parse_point(&spec, &args.point).map_err(invalid)?;
            let x = image_or_base(veronese(&c))?;
            out.insert("image".into(), x.as_ref().map_or(Value::Null, |x| json::matrix(x.elem())));
            flags(Some(&c), x.as_ref())
        }
        VeroneseMode::Inverse => {
            let m = json::parse_matrix(&spec, &args.point).map_err(invalid)?;
            let x = ProjPointJ::new(m).map_err(invalid)?;
            let c = image_or_base(veronese_inverse(&x))?;
            out.insert("image".into(), c.as_ref().map_or(Value::Null, |c| json::scalars(c.flat())));
            flags(c.as_ref(), Some(&x))
        }
        VeroneseMode::Transpose => {
            let c = json::parse_point(&spec, &args.point).map_err(invalid)?;
            let x = image_or_base(veronese(&c))?;
            let t = image_or_base(transposition_map(&c))?;
            out.insert("image".into(), t.as_ref().map_or(Value::Null, |t| json::scalars(t.flat())));
            out.insert("target_b".into(), json::scalars(transposed_spec(&spec).b()));
            flags(Some(&c), x.as_ref())
        }
    };
    if let Value::Object(f) = flags {
        out.extend(f);
    }
    Ok(Outcome::json(&Value::Object(out)))
}

fn rank(args: &RankArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&args.config)?;
    let x = json::parse_matrix(&spec, &args.elem).map_err(invalid)?;
    let rank_one = x.is_rank_one().map_err(invalid)?;
    let sharp_zero = if spec.n() == 3 { Value::from(x.adjoint_sharp().map_err(invalid)?.is_zero()) } else { Value::from("n/a") };
    Ok(Outcome::json(&json!({ "rank_one": rank_one, "sharp_zero": sharp_zero })))
}

fn orbits(cmd: &OrbitsCommand) -> Result<Outcome, CliError> {
    let OrbitsCommand::Dims { r, n } = *cmd;
    check_rn(r, n)?;
    let report = check_orbit_dims(r, n).map_err(invalid)?;
    Ok(Outcome { verified: report.pass, text: pretty(&report) })
}

fn algebra(cmd: &AlgebraCommand) -> Result<Outcome, CliError> {
    let AlgebraCommand::Table { r, a, field } = cmd;
    let field = field.spec()?;
    let params = parse_list(field, a)?;
    if params.len() != *r as usize {
        return Err(invalid(format!("--a must list r = {r} parameters (got {})", params.len())));
    }
    let cd = CdAlgebra::new(field, params).map_err(invalid)?;
    let dim = cd.dim();
    let table: Vec<Value> = (0..dim)
        .map(|i| Value::Array((0..dim).map(|j| json!({ "coeff": json::scalar(cd.structure_constant(i, j)), "index": i ^ j })).collect()))
        .collect();
    Ok(Outcome::json(&json!({
        "field": field.to_string(),
        "r": r,
        "a": json::scalars(cd.params()),
        "dim": dim,
        "norm_form": json::scalars(cd.norm_form().coeffs()),
        "table": table,
    })))
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Decompose(a) => decompose(a),
        Command::Profile(a) => profile(a),
        Command::Verify(a) => run_suite(a),
        Command::Witt(a) => witt(a),
        Command::Hilbert(a) => hilbert(a),
        Command::Veronese(a) => veronese_cmd(a),
        Command::Rank(a) => rank(a),
        Command::Orbits { command } => orbits(command),
        Command::Diagram(a) => diagram(a),
        Command::Algebra { command } => algebra(command),
    }
}

/// Runs the command line `argv` (program name first), writing to the given
/// streams, and returns the exit code.
pub fn run_with(argv: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            if let Err(e) = stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()) {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if out.verified {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run(argv: Vec<String>) -> i32 {
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}
