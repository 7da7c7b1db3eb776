//! Subcommand orchestration. Every run writes `manifest.json` and
//! `report.json` to the output directory, plus nodal fields as CSV.

use std::path::{Path, PathBuf};

use fracpx::degree::{degree, find_root, verify_homotopy_invariance, DegreeProblem};
use fracpx::mesh::BoxDomain;
use fracpx::modular::{check_prop1, check_prop2, luxemburg, NormReport, DEFAULT_NORM_TOL};
use fracpx::solver::{lambda_sweep, solve, SweepRow};
use fracpx::{SolveReport, Strategy};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Manifest, RunConfig};
use crate::error::{solve_code, status_of, CliError};
use crate::output::{ensure_dir, join, write_json, write_rows, write_solution};
use crate::verify::run_suites;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Solve,
    Sweep,
    Verify,
    Norms,
    Degree,
    Continuation,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
            Command::Norms => "norms",
            Command::Degree => "degree",
            Command::Continuation => "continuation",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: Command,
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub strategy: Option<Strategy>,
}

/// Outcome of a run: exit code and a one-line summary.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub exit_code: i32,
    pub message: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    status: &'a str,
    exit_code: i32,
    error: Option<String>,
    result: Value,
}

/// Runs one subcommand; errors are reported in `report.json` as well as in
/// the returned summary.
pub fn execute(inv: &Invocation) -> RunSummary {
    let name = inv.command.name();
    if let Err(e) = ensure_dir(&inv.out) {
        return RunSummary {
            exit_code: e.exit_code(),
            message: e.to_string(),
        };
    }
    let (exit_code, status, error, result) = match prepare(inv).and_then(|cfg| dispatch(inv, &cfg)) {
        Ok(done) => (done.exit_code, done.status, None, done.result),
        Err((e, partial)) => (e.exit_code(), e.status(), Some(error_chain(&e)), partial),
    };
    let envelope = Envelope {
        command: name,
        status,
        exit_code,
        error: error.clone(),
        result,
    };
    if let Err(e) = write_json(&join(&inv.out, "report.json"), &envelope) {
        return RunSummary {
            exit_code: e.exit_code(),
            message: e.to_string(),
        };
    }
    let message = match error {
        Some(e) => format!("{name}: {e}"),
        None => format!("{name}: {status} (report in {})", inv.out.display()),
    };
    RunSummary { exit_code, message }
}

fn error_chain(e: &CliError) -> String {
    let mut msg = e.to_string();
    let mut source = std::error::Error::source(e);
    while let Some(s) = source {
        let part = s.to_string();
        if !msg.contains(&part) {
            msg.push_str(": ");
            msg.push_str(&part);
        }
        source = s.source();
    }
    msg
}

type Failure = (CliError, Value);

fn fail(e: impl Into<CliError>) -> Failure {
    (e.into(), Value::Null)
}

fn prepare(inv: &Invocation) -> Result<RunConfig, Failure> {
    let mut cfg = match &inv.config {
        Some(path) => RunConfig::load(path).map_err(fail)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = inv.seed {
        cfg.seed = seed;
    }
    if let Some(strategy) = inv.strategy {
        cfg.solver.strategy = strategy;
    }
    if inv.command == Command::Continuation {
        cfg.solver.strategy = Strategy::Continuation;
    }
    let cfg = cfg.resolve();
    write_json(&join(&inv.out, "manifest.json"), &Manifest::new(inv.command.name(), &cfg))
        .map_err(fail)?;
    Ok(cfg)
}

struct Done {
    exit_code: i32,
    status: &'static str,
    result: Value,
}

fn ok(result: Value) -> Done {
    Done {
        exit_code: 0,
        status: "ok",
        result,
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn dispatch(inv: &Invocation, cfg: &RunConfig) -> Result<Done, Failure> {
    match inv.command {
        Command::Solve | Command::Continuation => run_solve(&inv.out, cfg),
        Command::Sweep => run_sweep(&inv.out, cfg),
        Command::Verify => run_verify(cfg),
        Command::Norms => run_norms(&inv.out, cfg),
        Command::Degree => run_degree(cfg),
    }
}

fn run_solve(out: &Path, cfg: &RunConfig) -> Result<Done, Failure> {
    cfg.validate_solver().map_err(fail)?;
    let data = cfg.problem().map_err(fail)?;
    match solve(&data, &cfg.solver) {
        Ok(report) => {
            write_solution(&join(out, "solution.csv"), data.mesh(), &report.u).map_err(fail)?;
            Ok(ok(to_value(&report)))
        }
        Err(e) => {
            let partial = e.report().map(to_value).unwrap_or(Value::Null);
            if let Some(report) = e.report() {
                write_solution(&join(out, "solution.csv"), data.mesh(), &report.u)
                    .map_err(fail)?;
            }
            Err((e.into(), partial))
        }
    }
}

fn run_sweep(out: &Path, cfg: &RunConfig) -> Result<Done, Failure> {
    cfg.validate_solver().map_err(fail)?;
    let lambdas = cfg.sweep.values().map_err(fail)?;
    let data = cfg.problem().map_err(fail)?;
    let entries = lambda_sweep(&data, &cfg.solver, &lambdas);
    let mut rows: Vec<SweepRow> = Vec::with_capacity(entries.len());
    let mut runs = Vec::with_capacity(entries.len());
    let mut all_converged = true;
    for (k, entry) in entries.iter().enumerate() {
        let dir = join(out, &format!("lambda_{k:03}"));
        ensure_dir(&dir).map_err(fail)?;
        let (status, error, report): (&str, Option<String>, Option<&SolveReport>) =
            match &entry.outcome {
                Ok(r) => ("ok", None, Some(r)),
                Err(e) => {
                    all_converged = false;
                    let status = status_of(solve_code(e));
                    (status, Some(e.to_string()), e.report())
                }
            };
        if let Some(r) = report {
            write_solution(&join(&dir, "solution.csv"), data.mesh(), &r.u).map_err(fail)?;
        }
        write_json(
            &join(&dir, "report.json"),
            &json!({ "lambda": entry.lambda, "status": status, "error": error, "result": report }),
        )
        .map_err(fail)?;
        rows.push(entry.row());
        runs.push(format!("lambda_{k:03}"));
    }
    write_rows(&join(out, "sweep.csv"), &rows).map_err(fail)?;
    let first_nontrivial = rows
        .iter()
        .find(|r| r.converged && r.nontrivial && r.energy < 0.0)
        .map(|r| r.lambda);
    let result = json!({
        "rows": rows,
        "runs": runs,
        "first_nontrivial_lambda": first_nontrivial,
    });
    if all_converged {
        Ok(ok(result))
    } else {
        Ok(Done {
            exit_code: 2,
            status: "no_convergence",
            result,
        })
    }
}

fn run_verify(cfg: &RunConfig) -> Result<Done, Failure> {
    let data = cfg.problem().map_err(fail)?;
    let report = run_suites(&data, &cfg.verify, cfg.seed).map_err(fail)?;
    let passed = report.passed;
    Ok(Done {
        exit_code: if passed { 0 } else { 1 },
        status: if passed { "ok" } else { "property_failed" },
        result: to_value(&report),
    })
}

#[derive(Serialize)]
struct NormsResult {
    lebesgue_q: NormReport,
    lebesgue_r: NormReport,
    gagliardo: NormReport,
    lebesgue_checks: fracpx::modular::PropositionCheck,
    gagliardo_checks: fracpx::modular::PropositionCheck,
}

fn run_norms(out: &Path, cfg: &RunConfig) -> Result<Done, Failure> {
    let data = cfg.problem().map_err(fail)?;
    let u = cfg.norms.function.sample(data.mesh());
    let result = NormsResult {
        lebesgue_q: luxemburg(&data.lebesgue_q(), &u, DEFAULT_NORM_TOL).map_err(fail)?,
        lebesgue_r: luxemburg(&data.lebesgue_r(), &u, DEFAULT_NORM_TOL).map_err(fail)?,
        gagliardo: luxemburg(&data.gagliardo(), &u, DEFAULT_NORM_TOL).map_err(fail)?,
        lebesgue_checks: check_prop1(&u, data.field().q(), data.mesh()).map_err(fail)?,
        gagliardo_checks: check_prop2(&u, data.kernel(), data.field()).map_err(fail)?,
    };
    write_solution(&join(out, "solution.csv"), data.mesh(), &u).map_err(fail)?;
    Ok(ok(to_value(&result)))
}

fn run_degree(cfg: &RunConfig) -> Result<Done, Failure> {
    let deg = &cfg.degree;
    let Some(preset) = deg.map.preset() else {
        cfg.validate_solver().map_err(fail)?;
        let data = cfg.problem().map_err(fail)?;
        let verdict = verify_homotopy_invariance(&data, &cfg.solver).map_err(fail)?;
        let passed = verdict.passed;
        return Ok(Done {
            exit_code: if passed { 0 } else { 1 },
            status: if passed { "ok" } else { "property_failed" },
            result: to_value(&verdict),
        });
    };
    let region = BoxDomain::new(deg.lower.clone(), deg.upper.clone())
        .map_err(|e| fail(CliError::field("degree.lower/upper", e)))?;
    preset
        .check_dim(region.dim())
        .map_err(|e| fail(CliError::field("degree.map", e)))?;
    let map = move |x: &[f64]| preset.eval(x);
    let mut prob = DegreeProblem::new(&map, region, deg.target.clone());
    prob.resolution = deg.resolution;
    let certificate = degree(&prob).map_err(fail)?;
    let root = if certificate.degree != 0 {
        Some(find_root(&prob).map_err(fail)?)
    } else {
        None
    };
    Ok(ok(json!({ "certificate": certificate, "root": root })))
}
