//! Argument definitions, dispatch and report assembly.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperdiff_core::galois::{self, Assumptions, CriterionOutcome, CONSTANT_PART_REFUSAL};
use hyperdiff_core::linsys::{self, CyclicOptions, DiffSystem, ExtensionSystem, DEFAULT_SEED};
use hyperdiff_core::ratsol::{self, describe_place, RatsolOptions, SolutionSpace, DEFAULT_MAX_DEGREE};
use hyperdiff_core::{Error, FieldElem, MatrixK};
use serde::Serialize;
use serde_json::{json, Value};

use crate::matrix_io::{read_matrix, MatrixJson};
use crate::parse::{parse_expr, parse_operator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hyperdiff", version, about = "Exact rational-solution, isomonodromy and hypertranscendence tests over Q(t)(x)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Cap on pole orders and polynomial degrees searched by the solver.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    /// Seed for the cyclic-vector candidate generator.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational solutions of a scalar equation L(y) = b or of a system ∂Y = AY.
    Ratsol {
        #[arg(long, conflicts_with = "matrix")]
        op: Option<String>,
        #[arg(long, requires = "op")]
        rhs: Option<String>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Isomonodromy test for ∂Y = AY, or for the companion system of an operator.
    Isomono {
        #[arg(long, conflicts_with = "matrix")]
        op: Option<String>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Hypertranscendence criterion for L(y) = b.
    Criterion {
        #[arg(long)]
        op: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        assume_irreducible: bool,
        #[arg(long)]
        assume_quasi_simple: bool,
        /// Assert dim Gal(L) ≠ ord L when the group is not named.
        #[arg(long)]
        assume_dim_differs: bool,
        /// Name of Gal(L), for example SL3 or G2.
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Builds a derived system from matrix files.
    Construct {
        kind: Construction,
        /// Input matrices in order; `reduce` takes A2, A1 and C.
        #[arg(long = "matrix", required = true)]
        matrices: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Splits irreducible blocks into isomonodromic and non-constant ones.
    Decompose {
        #[arg(long = "matrix", required = true)]
        matrices: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Dsum,
    Tensor,
    Hom,
    Dual,
    Prolong,
    Reduce,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Ratsol { common, .. }
            | Command::Isomono { common, .. }
            | Command::Criterion { common, .. }
            | Command::Construct { common, .. }
            | Command::Decompose { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Ratsol { .. } => "ratsol",
            Command::Isomono { .. } => "isomono",
            Command::Criterion { .. } => "criterion",
            Command::Construct { .. } => "construct",
            Command::Decompose { .. } => "decompose",
        }
    }
}

#[derive(Serialize, Debug, Clone, Default)]
pub struct Diagnostics {
    pub seed: u64,
    pub max_degree: usize,
    pub elapsed_ms: u128,
    pub solver: Option<Value>,
    pub errors: Vec<String>,
    pub notes: Vec<String>,
}

/// The report shared by the text and JSON renderings.
#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub command: String,
    pub verdict: Option<Value>,
    pub integrability: Option<Value>,
    pub inhomogeneous: Option<Value>,
    pub group: Option<String>,
    pub assumptions: Vec<String>,
    pub caveats: Vec<String>,
    pub result: Option<Value>,
    pub diagnostics: Diagnostics,
    pub version: String,
}

impl Report {
    fn new(command: &str, common: &Common) -> Self {
        Report {
            command: command.to_string(),
            verdict: None,
            integrability: None,
            inhomogeneous: None,
            group: None,
            assumptions: Vec::new(),
            caveats: Vec::new(),
            result: None,
            diagnostics: Diagnostics { seed: common.seed, max_degree: common.max_degree, ..Default::default() },
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Line-oriented rendering of the same payload as [`Report::to_json`].
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        for (key, v) in value.as_object().unwrap() {
            render(&mut out, key, v);
        }
        out
    }
}

fn render(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Null => {}
        Value::Array(items) if items.is_empty() => {}
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            for i in items {
                out.push_str(&format!("{key}: {}\n", scalar(i)));
            }
        }
        Value::Object(map) => {
            for (k, inner) in map {
                render(out, &format!("{key}.{k}"), inner);
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                render(out, &format!("{key}[{i}]"), inner);
            }
        }
        other => out.push_str(&format!("{key}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// What a run produced: the report and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
    pub json: bool,
}

impl Outcome {
    pub fn render(&self) -> String {
        if self.json {
            self.report.to_json()
        } else {
            self.report.to_text()
        }
    }
}

/// Errors that make a run a usage error rather than an inconclusive one.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::ZeroOperator
            | Error::OrderZero
            | Error::ZeroRhs
            | Error::SingularGauge
            | Error::NotHomogeneous
            | Error::DimensionMismatch(_)
            | Error::OutOfScope(_)
            | Error::MissingAssumption(_)
            | Error::DivisionByZero
            | Error::DivisionByZeroOperator
    )
}

/// Failure before any report could be produced.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> UsageError + '_ {
    move |e| UsageError(format!("{what}: {e}"))
}

fn options(common: &Common) -> RatsolOptions {
    RatsolOptions { max_degree: common.max_degree, cyclic: CyclicOptions { seed: common.seed, ..Default::default() } }
}

fn space_json(space: &SolutionSpace) -> Value {
    let vecs = |vs: &[Vec<FieldElem>]| -> Vec<Vec<String>> {
        vs.iter().map(|v| v.iter().map(|e| e.to_string()).collect()).collect()
    };
    json!({
        "dimension": space.dimension(),
        "basis": vecs(&space.basis),
        "particular": space.particular.as_ref().map(|p| p.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
    })
}

fn solver_json(space: &SolutionSpace) -> Value {
    json!({
        "denominator": FieldElem::from_kpoly(&space.denominator).to_string(),
        "degree_bound": space.degree_bound,
        "places": space.places.iter().map(|p| json!({
            "place": describe_place(&p.place),
            "max_order": p.max_order,
        })).collect::<Vec<_>>(),
    })
}

fn system_from(op: &Option<String>, matrix: &Option<PathBuf>) -> Result<DiffSystem, UsageError> {
    match (op, matrix) {
        (Some(src), None) => {
            let l = parse_operator(src).map_err(usage("--op"))?;
            l.companion().map_err(usage("--op"))
        }
        (None, Some(path)) => {
            let a = read_matrix(path).map_err(UsageError)?;
            DiffSystem::try_new(a).map_err(usage("--matrix"))
        }
        _ => Err(UsageError("exactly one of --op and --matrix is required".into())),
    }
}

fn fail(report: &mut Report, e: &Error) -> i32 {
    report.diagnostics.errors.push(e.to_string());
    if is_input_error(e) {
        EXIT_USAGE
    } else {
        EXIT_INCONCLUSIVE
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Result<Outcome, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(run(&cli.command).unwrap_or_else(|e| {
        let mut report = Report::new(cli.command.name(), cli.command.common());
        report.diagnostics.errors.push(e.0);
        Outcome { report, exit_code: EXIT_USAGE, json: cli.command.common().json }
    }))
}

pub fn run(command: &Command) -> Result<Outcome, UsageError> {
    let common = command.common();
    let opts = options(common);
    let mut report = Report::new(command.name(), common);
    let start = Instant::now();
    let exit_code = match command {
        Command::Ratsol { op, rhs, matrix, .. } => ratsol_cmd(&mut report, op, rhs, matrix, &opts)?,
        Command::Isomono { op, matrix, .. } => {
            let s = system_from(op, matrix)?;
            match galois::isomonodromy_test(&s, &opts) {
                Ok(r) => {
                    report.integrability = Some(json!({
                        "solvable": r.solvable,
                        "witness": r.witness.as_ref().map(MatrixJson::from_matrix),
                    }));
                    EXIT_OK
                }
                Err(e) => fail(&mut report, &e),
            }
        }
        Command::Criterion { op, rhs, assume_irreducible, assume_quasi_simple, assume_dim_differs, group, .. } => {
            let l = parse_operator(op).map_err(usage("--op"))?;
            let b = parse_expr(rhs).map_err(usage("--rhs"))?;
            let assumptions = Assumptions {
                irreducible: *assume_irreducible,
                quasi_simple: *assume_quasi_simple,
                dimension_differs: *assume_dim_differs,
                group: group.clone(),
            };
            match galois::hypertranscendence_criterion(&l, &b, &assumptions, &opts) {
                Ok(outcome) => criterion_report(&mut report, outcome),
                Err(e) => fail(&mut report, &e),
            }
        }
        Command::Construct { kind, matrices, .. } => {
            let ms = matrices.iter().map(|p| read_matrix(p).map_err(UsageError)).collect::<Result<Vec<_>, _>>()?;
            match construct(*kind, &ms) {
                Ok(a) => {
                    report.result = Some(json!({ "system": MatrixJson::from_matrix(&a) }));
                    EXIT_OK
                }
                Err(e) => fail(&mut report, &e),
            }
        }
        Command::Decompose { matrices, .. } => {
            let mut blocks = Vec::new();
            for p in matrices {
                let a = read_matrix(p).map_err(UsageError)?;
                blocks.push(DiffSystem::try_new(a).map_err(usage(&p.display().to_string()))?);
            }
            match galois::decompose_constant_parts(&blocks, &opts) {
                Ok(d) => {
                    if !d.constant.is_empty() {
                        report.diagnostics.notes.push(format!(
                            "unipotent radical not computed for blocks {:?}: {CONSTANT_PART_REFUSAL}",
                            d.constant
                        ));
                    }
                    let witnesses: serde_json::Map<String, Value> = d
                        .witnesses
                        .iter()
                        .map(|(i, w)| (i.to_string(), serde_json::to_value(MatrixJson::from_matrix(w)).unwrap()))
                        .collect();
                    report.result = Some(json!({
                        "constant": d.constant,
                        "non_constant": d.non_constant,
                        "witnesses": witnesses,
                    }));
                    EXIT_OK
                }
                Err(e) => fail(&mut report, &e),
            }
        }
    };
    report.diagnostics.elapsed_ms = start.elapsed().as_millis();
    Ok(Outcome { report, exit_code, json: common.json })
}

fn ratsol_cmd(
    report: &mut Report,
    op: &Option<String>,
    rhs: &Option<String>,
    matrix: &Option<PathBuf>,
    opts: &RatsolOptions,
) -> Result<i32, UsageError> {
    let result = match (op, matrix) {
        (Some(src), None) => {
            let l = parse_operator(src).map_err(usage("--op"))?;
            let b = rhs.as_deref().map(parse_expr).transpose().map_err(usage("--rhs"))?;
            ratsol::rational_solutions_scalar_with(&l, b.as_ref(), opts).map(|space| (space, b.is_some()))
        }
        _ => {
            let s = system_from(op, matrix)?;
            ratsol::rational_solutions_system_with(&s, opts).map(|space| (space, false))
        }
    };
    match result {
        Ok((space, has_rhs)) => {
            if has_rhs {
                report.inhomogeneous = Some(json!({
                    "solvable": space.is_solvable(),
                    "witness": space.scalar_particular().map(|y| y.to_string()),
                }));
            }
            report.result = Some(space_json(&space));
            report.diagnostics.solver = Some(solver_json(&space));
            Ok(EXIT_OK)
        }
        Err(e) => Ok(fail(report, &e)),
    }
}

fn criterion_report(report: &mut Report, outcome: CriterionOutcome) -> i32 {
    match outcome {
        CriterionOutcome::Decided(v) => {
            report.verdict = Some(json!({
                "status": "decided",
                "hypertranscendent": v.hypertranscendent,
                "statement": v.statement,
                "reasons": v.reasons,
            }));
            report.integrability = Some(json!({
                "solvable": v.integrability.solvable,
                "witness": v.integrability.witness.as_ref().map(MatrixJson::from_matrix),
            }));
            report.inhomogeneous = Some(json!({
                "solvable": v.inhomogeneous.solvable,
                "witness": v.inhomogeneous.witness.as_ref().map(|w| w.to_string()),
            }));
            report.group = v.group_descriptor;
            report.assumptions = v.assumptions;
            report.caveats = v.caveats;
            EXIT_OK
        }
        CriterionOutcome::Inconclusive { integrability, inhomogeneous, errors, assumptions, caveats } => {
            report.verdict = Some(json!({ "status": "inconclusive", "hypertranscendent": null }));
            report.integrability = integrability.map(|r| json!({
                "solvable": r.solvable,
                "witness": r.witness.as_ref().map(MatrixJson::from_matrix),
            }));
            report.inhomogeneous = inhomogeneous.map(|r| json!({
                "solvable": r.solvable,
                "witness": r.witness.as_ref().map(|w| w.to_string()),
            }));
            report.assumptions = assumptions;
            report.caveats = caveats;
            report.diagnostics.errors.extend(errors);
            EXIT_INCONCLUSIVE
        }
    }
}

fn construct(kind: Construction, ms: &[MatrixK]) -> hyperdiff_core::Result<MatrixK> {
    let need = match kind {
        Construction::Dual | Construction::Prolong => 1,
        Construction::Dsum | Construction::Tensor | Construction::Hom => 2,
        Construction::Reduce => 3,
    };
    if ms.len() != need {
        return Err(Error::DimensionMismatch(format!("{kind:?} takes {need} matrices, got {}", ms.len()).to_lowercase()));
    }
    let sys = |i: usize| DiffSystem::try_new(ms[i].clone());
    let out = match kind {
        Construction::Dsum => linsys::direct_sum(&sys(0)?, &sys(1)?)?,
        Construction::Tensor => linsys::tensor(&sys(0)?, &sys(1)?)?,
        Construction::Hom => linsys::hom(&sys(0)?, &sys(1)?)?,
        Construction::Dual => linsys::dual(&sys(0)?)?,
        Construction::Prolong => linsys::prolong(&sys(0)?)?,
        Construction::Reduce => {
            linsys::reduce_extension(&ExtensionSystem::new(ms[0].clone(), ms[1].clone(), ms[2].clone())?)
        }
    };
    Ok(out.a)
}
