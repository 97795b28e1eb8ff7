//! Argument parsing and dispatch for the `umrow` binary.
//!
//! Every command prints one JSON document with `"schema": 1`. Negative mathematical
//! answers are ordinary results; only failures produce a nonzero exit code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use umrow_core::euler::{
    compare_rows, freeness_verdict, phi_class_with, ClassOptions, ComponentSeparator, EulerError,
};
use umrow_core::gersten::{
    boundary_at_origin, eq1_identity_check, eq1_perturbations, punctured_table, xi_cycle, GerstenError,
};
use umrow_core::mwk::{mw_eval, mw_relation_check, MwExpr, MwkError};
use umrow_core::qform::{BaseField, QformError};
use umrow_core::ring::{RingError, RingSpec, RingSpecJson};
use umrow_core::umrow::{
    apply_elementary, cayley_dickson_completion, check_homotopy, is_unimodular, prep_regular, verify_completion,
    CompletionMatrix, ElementaryOp, ElementaryOpJson, HomotopyWitness, Row, UmrowError, Unimodularity,
};
use umrow_core::Rational;

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "umrow", version, about = "Exact invariants of unimodular rows over real algebras")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unimodular rows: certificates, operations, classes and verdicts
    #[command(subcommand)]
    Row(RowCmd),
    /// Milnor–Witt K-theory of a base field
    #[command(subcommand)]
    Mwk(MwkCmd),
    /// Cycles and residues on punctured affine space
    #[command(subcommand)]
    Gersten(GerstenCmd),
    /// Run the tangent-row pipeline on a sphere
    Demo(DemoArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct RingSource {
    /// Built-in ring (sphere2, sphere3, sphere4, sphere7, ...)
    #[arg(long)]
    ring: Option<String>,
    /// Ring specification as a JSON file
    #[arg(long)]
    ring_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct RowInput {
    #[command(flatten)]
    source: RingSource,
    /// Comma-separated entries or a JSON list of strings
    #[arg(long)]
    row: String,
}

#[derive(Subcommand, Debug)]
enum RowCmd {
    /// Decide unimodularity, with a certificate or a refutation
    Check(RowInput),
    /// Apply elementary operations given as JSON
    ApplyOps {
        #[command(flatten)]
        input: RowInput,
        /// JSON list of {"i","j","h"}, inline or @file
        #[arg(long)]
        ops: String,
    },
    /// Check a homotopy in the trailing variable t
    HomotopyCheck {
        #[command(flatten)]
        source: RingSource,
        #[arg(long)]
        path: String,
        #[arg(long)]
        start: String,
        #[arg(long)]
        end: String,
    },
    /// Verify a proposed completion to an invertible matrix
    CompleteVerify {
        #[command(flatten)]
        input: RowInput,
        /// JSON list of row strings, inline or @file; omitted means the built-in multiplication table
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Elementary reduction to a row with a zero-dimensional tail
    Prep {
        #[command(flatten)]
        input: RowInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The class of the row, one integer per compact component
    Class {
        #[command(flatten)]
        input: RowInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON {"labels","separators","signs"}, inline or @file
        #[arg(long)]
        separator: Option<String>,
    },
    /// Freeness verdict for the associated stably free module
    Verdict {
        #[command(flatten)]
        input: RowInput,
        #[arg(long)]
        separator: Option<String>,
        /// Completion matrix as for complete-verify
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Compare two rows over the same ring
    Compare {
        #[command(flatten)]
        input: RowInput,
        #[arg(long)]
        other: String,
        #[arg(long)]
        separator: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum MwkCmd {
    /// Evaluate a symbol expression such as "[2]*[3] + 2*eta*[-1]*[5]"
    Eval {
        #[arg(long)]
        base: String,
        expr: String,
    },
    /// Check one defining relation on explicit slot values
    Relation {
        #[arg(long)]
        base: String,
        #[arg(long)]
        id: u8,
        /// Comma-separated rationals
        #[arg(long, allow_hyphen_values = true)]
        args: String,
    },
}

#[derive(Subcommand, Debug)]
enum GerstenCmd {
    Xi {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    Boundary {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    Table {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
    },
    Eq1,
}

#[derive(Args, Debug)]
struct DemoArgs {
    /// `sphere` together with --dim, or one of sphere2, sphere3, sphere4, sphere7
    name: String,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(m: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: m.into() }
    }
    fn domain(m: impl Into<String>) -> Self {
        CliError { code: EXIT_DOMAIN, message: m.into() }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        let code = match e {
            RingError::Syntax { .. } | RingError::UnknownVariable { .. } | RingError::InvalidSpec(_) => EXIT_USAGE,
            RingError::ResourceLimit { .. } => EXIT_RESOURCE,
            _ => EXIT_DOMAIN,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<UmrowError> for CliError {
    fn from(e: UmrowError) -> Self {
        match e {
            UmrowError::Ring(r) => r.into(),
            UmrowError::TooShort | UmrowError::IndexOutOfRange { .. } | UmrowError::SameIndex(_) => {
                CliError::usage(e.to_string())
            }
            other => CliError::domain(other.to_string()),
        }
    }
}

impl From<EulerError> for CliError {
    fn from(e: EulerError) -> Self {
        match e {
            EulerError::Ring(r) => r.into(),
            EulerError::Umrow(u) => u.into(),
            other => CliError::domain(other.to_string()),
        }
    }
}

impl From<QformError> for CliError {
    fn from(e: QformError) -> Self {
        let code = match e {
            QformError::InvalidPrime(_) | QformError::InvalidElement(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<MwkError> for CliError {
    fn from(e: MwkError) -> Self {
        match e {
            MwkError::Syntax { .. } | MwkError::MixedDegrees(..) | MwkError::Overflow => CliError::usage(e.to_string()),
            MwkError::Qform(q) => q.into(),
            other => CliError::domain(other.to_string()),
        }
    }
}

impl From<GerstenError> for CliError {
    fn from(e: GerstenError) -> Self {
        match e {
            GerstenError::BadDimension(_) => CliError::usage(e.to_string()),
            GerstenError::Qform(q) => q.into(),
            other => CliError::domain(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("invalid JSON: {e}"))
    }
}

/// Output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((mut doc, human)) => {
            doc["schema"] = json!(1);
            Outcome { code: 0, stdout: format!("{doc}\n"), stderr: human }
        }
        Err(e) => {
            let doc = json!({"schema": 1, "error": e.message, "exit": e.code});
            Outcome { code: e.code, stdout: String::new(), stderr: format!("{doc}\n") }
        }
    }
}

type Report = (Value, String);

fn dispatch(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Row(c) => row_cmd(c).map(|v| (v, String::new())),
        Command::Mwk(c) => mwk_cmd(c).map(|v| (v, String::new())),
        Command::Gersten(c) => gersten_cmd(c).map(|v| (v, String::new())),
        Command::Demo(a) => demo(a),
    }
}

fn read_arg(text: &str) -> Result<String, CliError> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn load_ring(src: &RingSource) -> Result<RingSpec, CliError> {
    match (&src.ring, &src.ring_file) {
        (Some(name), None) => RingSpec::builtin(name).ok_or_else(|| CliError::usage(format!("unknown ring {name:?}"))),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let json: RingSpecJson = serde_json::from_str(&text)?;
            Ok(RingSpec::from_json(&json)?)
        }
        _ => Err(CliError::usage("give exactly one of --ring and --ring-file")),
    }
}

fn parse_row(ring: &RingSpec, text: &str) -> Result<Row, CliError> {
    let text = read_arg(text)?;
    if text.trim_start().starts_with('[') {
        let entries: Vec<String> = serde_json::from_str(&text)?;
        Ok(Row::from_strings(ring, &entries)?)
    } else {
        Ok(Row::parse(ring, &text)?)
    }
}

fn load_row(input: &RowInput) -> Result<Row, CliError> {
    let ring = load_ring(&input.source)?;
    parse_row(&ring, &input.row)
}

fn load_separator(ring: &RingSpec, text: Option<&str>) -> Result<ComponentSeparator, CliError> {
    let Some(text) = text else { return Ok(ComponentSeparator::for_ring(ring)) };
    #[derive(serde::Deserialize)]
    struct SepJson {
        labels: Vec<String>,
        separators: Vec<String>,
        signs: Vec<Vec<i8>>,
    }
    let j: SepJson = serde_json::from_str(&read_arg(text)?)?;
    let seps = j.separators.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(ComponentSeparator::new(j.labels, seps, j.signs)?)
}

fn load_matrix(row: &Row, text: Option<&str>) -> Result<CompletionMatrix, CliError> {
    match text {
        Some(t) => {
            let rows: Vec<String> = serde_json::from_str(&read_arg(t)?)?;
            Ok(CompletionMatrix::parse(row.ring(), &rows)?)
        }
        None => Ok(cayley_dickson_completion(row)?),
    }
}

fn row_cmd(cmd: RowCmd) -> Result<Value, CliError> {
    match cmd {
        RowCmd::Check(input) => {
            let row = load_row(&input)?;
            let ring = row.ring();
            Ok(match is_unimodular(&row)? {
                Unimodularity::Certified(cert) => json!({
                    "row": row.show(),
                    "unimodular": true,
                    "certificate": cert.to_json(ring),
                }),
                Unimodularity::Refuted { basis } => json!({
                    "row": row.show(),
                    "unimodular": false,
                    "ideal_basis": basis.iter().map(|p| ring.show(p)).collect::<Vec<_>>(),
                }),
            })
        }
        RowCmd::ApplyOps { input, ops } => {
            let row = load_row(&input)?;
            let ring = row.ring().clone();
            let specs: Vec<ElementaryOpJson> = serde_json::from_str(&read_arg(&ops)?)?;
            let ops = specs.iter().map(|j| ElementaryOp::from_json(&ring, j)).collect::<Result<Vec<_>, _>>()?;
            let row = match row.clone().certified() {
                Ok(r) => r,
                Err(UmrowError::Precondition(_)) => row,
                Err(e) => return Err(e.into()),
            };
            let out = apply_elementary(&row, &ops)?;
            Ok(json!({
                "row": out.show(),
                "ops": ops.len(),
                "certificate": out.certificate().map(|c| c.to_json(&ring)),
                "certificate_verified": out.certificate().map(|c| c.verify(&ring, out.entries())),
            }))
        }
        RowCmd::HomotopyCheck { source, path, start, end } => {
            let ring = load_ring(&source)?;
            let w = HomotopyWitness::parse(&ring, &read_arg(&path)?, &read_arg(&start)?, &read_arg(&end)?)?;
            let r = check_homotopy(&w)?;
            Ok(json!({
                "path_unimodular": r.path_unimodular,
                "start_matches": r.start_matches,
                "end_matches": r.end_matches,
                "holds": r.holds(),
            }))
        }
        RowCmd::CompleteVerify { input, matrix } => {
            let row = load_row(&input)?;
            let m = load_matrix(&row, matrix.as_deref())?;
            let r = verify_completion(&row, &m)?;
            Ok(json!({
                "row": row.show(),
                "matrix": m.show(row.ring()),
                "shape_ok": r.shape_ok,
                "first_row_matches": r.first_row_matches,
                "det": r.det.as_ref().map(|d| row.ring().show(d)),
                "verified": r.verified(),
            }))
        }
        RowCmd::Prep { input, seed } => {
            let row = load_row(&input)?;
            let ring = row.ring().clone();
            let p = prep_regular(&row, seed)?;
            Ok(json!({
                "row": p.row.show(),
                "ops": p.ops.iter().map(|o| o.to_json(&ring)).collect::<Vec<_>>(),
                "attempt": p.attempt,
                "algebra_dim": p.algebra.dim(),
                "seed": seed,
            }))
        }
        RowCmd::Class { input, seed, separator } => {
            let row = load_row(&input)?;
            let sep = load_separator(row.ring(), separator.as_deref())?;
            let opts = ClassOptions { seed, ..ClassOptions::default() };
            let c = phi_class_with(&row, &sep, &opts)?;
            Ok(serde_json::to_value(&c.class)?)
        }
        RowCmd::Verdict { input, separator, matrix } => {
            let row = load_row(&input)?;
            let sep = load_separator(row.ring(), separator.as_deref())?;
            let m = match matrix {
                Some(t) => Some(load_matrix(&row, Some(&t))?),
                None => None,
            };
            Ok(freeness_verdict(&row, &sep, m.as_ref())?.to_json())
        }
        RowCmd::Compare { input, other, separator } => {
            let a = load_row(&input)?;
            let b = parse_row(a.ring(), &other)?;
            let sep = load_separator(a.ring(), separator.as_deref())?;
            let (kind, ca, cb) = compare_rows(&a, &b, &sep)?;
            Ok(json!({
                "comparison": kind.label(),
                "class_first": ca.class,
                "class_second": cb.class,
                "components": ca.components,
                "convention": ca.convention,
            }))
        }
    }
}

fn parse_base(text: &str) -> Result<BaseField, CliError> {
    Ok(BaseField::parse(text)?)
}

fn mwk_cmd(cmd: MwkCmd) -> Result<Value, CliError> {
    match cmd {
        MwkCmd::Eval { base, expr } => {
            let base = parse_base(&base)?;
            let e = MwExpr::parse(&expr)?;
            Ok(mw_eval(&e, &base)?.to_json())
        }
        MwkCmd::Relation { base, id, args } => {
            let base = parse_base(&base)?;
            let args = args
                .split(',')
                .map(|s| s.trim().parse::<Rational>().map_err(|_| CliError::usage(format!("bad rational {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let holds = mw_relation_check(id, &args, &base)?;
            Ok(json!({
                "base": base.name(),
                "relation": id,
                "args": args.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "holds": holds,
            }))
        }
    }
}

fn gersten_cmd(cmd: GerstenCmd) -> Result<Value, CliError> {
    match cmd {
        GerstenCmd::Xi { n } => Ok(xi_cycle(n)?.to_json()),
        GerstenCmd::Boundary { n } => {
            let c = xi_cycle(n)?;
            let b = boundary_at_origin(&c)?;
            Ok(json!({"cycle": c.to_json(), "boundary": b.to_json()}))
        }
        GerstenCmd::Table { n, j } => Ok(json!({"n": n, "j": j, "entries": punctured_table(n, j)?})),
        GerstenCmd::Eq1 => {
            let r = eq1_identity_check()?;
            let perturbed: Vec<Value> = eq1_perturbations()?
                .into_iter()
                .map(|(name, r)| json!({"name": name, "verdict": r.verdict(), "report": r.to_json()}))
                .collect();
            Ok(json!({"identity": r.to_json(), "verdict": r.verdict(), "perturbations": perturbed}))
        }
    }
}

/// Tangent row, its class and verdict, plus the multiplication-table completion in dimensions 1, 3 and 7.
pub fn sphere_demo(d: usize, seed: u64) -> Result<Report, CliError> {
    if d < 2 {
        return Err(CliError::usage("the demo needs a sphere of dimension ≥ 2"));
    }
    let ring = RingSpec::sphere(d);
    let row = Row::new(&ring, (0..=d).map(|i| umrow_core::ring::Poly::var(d + 1, i)).collect())?;
    let sep = ComponentSeparator::for_ring(&ring);
    let class = phi_class_with(&row, &sep, &ClassOptions { seed, ..ClassOptions::default() })?;
    let completion = if matches!(d, 3 | 7) { Some(cayley_dickson_completion(&row)?) } else { None };
    let verdict = freeness_verdict(&row, &sep, completion.as_ref())?;
    let mut human = format!(
        "S^{d}: tangent row ({}) has class {:?} ({})\n",
        row.show().join(", "),
        class.class.class,
        class.class.convention
    );
    if let Some(v) = verdict.completion_verified {
        human.push_str(&format!("completion by the multiplication table verified: {v}\n"));
    }
    human.push_str(&format!("verdict: {}\n", verdict.combined()));
    let doc = json!({
        "demo": format!("sphere{d}"),
        "row": row.show(),
        "prepared_row": class.prepared.show(),
        "algebra_dim": class.algebra_dim,
        "class": class.class.class,
        "components": class.class.components,
        "convention": class.class.convention,
        "verdict": verdict.kind.label(),
        "completion_verified": verdict.completion_verified,
        "combined": verdict.combined(),
    });
    Ok((doc, human))
}

fn demo(a: DemoArgs) -> Result<Report, CliError> {
    let d = match (a.name.as_str(), a.dim) {
        ("sphere", Some(d)) => d,
        ("sphere", None) => return Err(CliError::usage("demo sphere needs --dim")),
        (name, None) => name
            .strip_prefix("sphere")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::usage(format!("unknown demo {name:?}")))?,
        (name, Some(_)) => return Err(CliError::usage(format!("--dim only applies to demo sphere, not {name:?}"))),
    };
    sphere_demo(d, a.seed)
}
