//! Weak solutions of the discrete problem `L u + S u = 0`.
//!
//! Three strategies share one report type:
//!
//! * `minimize`: descent on the energy from a seed function;
//! * `picard`: damped fixed-point iteration `v <- (1 - d) v - d S(T v)` on
//!   the reformulation `v + S(T v) = 0`, returning `u = T v`;
//! * `continuation`: follows `L u + t S u = 0` (equivalently
//!   `v + t S(T v) = 0`) from the trivial root at `t = 0` to `t = 1`.
//!
//! The residual in every report is recomputed from the returned `u`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descent::{self, Settings};
use crate::error::{Error, Result};
use crate::mesh::{ExteriorCoupling, Mesh};
use crate::modular::{
    embedding_constant, luxemburg, luxemburg_tight, random_grid_functions, GridFunction, Modular,
    DEFAULT_NORM_TOL,
};
use crate::operators::{
    apply_l, apply_s, apply_t_from, energy, pairing, residual, EnergyObjective, ProblemData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Minimize,
    Picard,
    Continuation,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Strategy::Minimize => "minimize",
            Strategy::Picard => "picard",
            Strategy::Continuation => "continuation",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimize" => Ok(Strategy::Minimize),
            "picard" => Ok(Strategy::Picard),
            "continuation" => Ok(Strategy::Continuation),
            other => Err(Error::InvalidParameter(format!(
                "unknown strategy {other:?} (expected minimize, picard or continuation)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedPreset {
    Zero,
    Constant,
    /// Uniform in `[-1, 1]` at every node.
    Random,
    /// Distance to the boundary, normalized to peak one.
    Bump,
}

/// Starting function for the solvers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFunction {
    pub preset: SeedPreset,
    #[serde(default = "unit")]
    pub amplitude: f64,
    #[serde(default)]
    pub rng_seed: u64,
}

fn unit() -> f64 {
    1.0
}

impl SeedFunction {
    pub fn new(preset: SeedPreset) -> Self {
        Self {
            preset,
            amplitude: 1.0,
            rng_seed: 0,
        }
    }

    pub fn sample(&self, mesh: &Mesh) -> GridFunction {
        let n = mesh.len();
        let values = match self.preset {
            SeedPreset::Zero => vec![0.0; n],
            SeedPreset::Constant => vec![self.amplitude; n],
            SeedPreset::Random => {
                use rand::Rng;
                let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
                (0..n)
                    .map(|_| self.amplitude * rng.gen_range(-1.0..=1.0))
                    .collect()
            }
            SeedPreset::Bump => {
                let d: Vec<f64> = (0..n).map(|i| mesh.boundary_distance(i)).collect();
                let peak = d.iter().cloned().fold(0.0, f64::max);
                d.iter().map(|x| self.amplitude * x / peak).collect()
            }
        };
        GridFunction::from_raw(values)
    }
}

impl Default for SeedFunction {
    fn default() -> Self {
        Self::new(SeedPreset::Constant)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub strategy: Strategy,
    pub max_iter: usize,
    /// Target for `||L u + S u||_inf`.
    pub tol: f64,
    pub damping: f64,
    pub continuation_steps: usize,
    pub seed: SeedFunction,
    /// Random functions used to estimate embedding constants for the a priori bound.
    pub apriori_samples: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Minimize,
            max_iter: 500,
            tol: 1e-8,
            damping: 0.5,
            continuation_steps: 8,
            seed: SeedFunction::default(),
            apriori_samples: 48,
        }
    }
}

impl SolverConfig {
    pub fn with_strategy(&self, strategy: Strategy) -> Self {
        Self {
            strategy,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("solver.tol = {} must be positive", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidParameter("solver.max_iter must be at least 1".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "solver.damping = {} must lie in (0, 1]",
                self.damping
            )));
        }
        if self.strategy == Strategy::Continuation && self.continuation_steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "solver.continuation_steps = {} must be at least 2",
                self.continuation_steps
            )));
        }
        if !self.seed.amplitude.is_finite() {
            return Err(Error::InvalidParameter("solver.seed.amplitude must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub step: usize,
    /// Homotopy parameter; 1 outside continuation runs.
    pub t: f64,
    pub residual: f64,
    pub energy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionNorms {
    pub w0: f64,
    pub q: f64,
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub dim: usize,
    pub nodes: usize,
    pub h: f64,
    pub s: f64,
    /// Pairs inside the box plus, for `dirichlet`, the interaction with the zero exterior.
    pub coupling: ExteriorCoupling,
}

impl Discretization {
    pub fn of(data: &ProblemData) -> Self {
        Self {
            dim: data.mesh().dim(),
            nodes: data.len(),
            h: data.mesh().h(),
            s: data.kernel().order(),
            coupling: data.kernel().coupling(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub strategy: Strategy,
    pub lambda: f64,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
    pub energy: f64,
    pub norms: SolutionNorms,
    pub sup_norm: f64,
    pub nontrivial: bool,
    pub apriori: Option<AprioriBound>,
    pub discretization: Discretization,
    pub trajectory: Vec<TrajectoryPoint>,
    pub u: GridFunction,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Invalid(#[from] Error),

    #[error("no convergence after {} iterations (residual {:e})", .0.iterations, .0.residual)]
    NoConvergence(Box<SolveReport>),

    #[error("fixed-point iteration diverged after {} iterations", .0.iterations)]
    Diverged(Box<SolveReport>),

    #[error("continuation stalled at t = {t} (last good t = {last_good_t})")]
    ContinuationStall {
        t: f64,
        last_good_t: f64,
        report: Box<SolveReport>,
    },
}

impl SolveError {
    /// Best iterate of a failed run.
    pub fn report(&self) -> Option<&SolveReport> {
        match self {
            SolveError::Invalid(_) => None,
            SolveError::NoConvergence(r) | SolveError::Diverged(r) => Some(r),
            SolveError::ContinuationStall { report, .. } => Some(report),
        }
    }
}

/// Nontriviality threshold on `||u||_inf` relative to the residual tolerance.
const NONTRIVIAL_FACTOR: f64 = 100.0;

fn is_trivial(u: &GridFunction, tol: f64) -> bool {
    u.sup_norm() <= NONTRIVIAL_FACTOR * tol
}

pub fn solve(data: &ProblemData, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    match cfg.strategy {
        Strategy::Minimize => solve_minimize(data, cfg),
        Strategy::Picard => solve_picard(data, cfg),
        Strategy::Continuation => solve_continuation(data, cfg),
    }
}

fn check_seed(data: &ProblemData, cfg: &SolverConfig) -> Result<GridFunction> {
    cfg.validate()?;
    let seed = cfg.seed.sample(data.mesh());
    GridFunction::new(seed.into_values())
}

/// Energy descent from the seed function.
pub fn solve_minimize(data: &ProblemData, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let seed = check_seed(data, cfg)?;
    let out = descent::minimize(
        &EnergyObjective { data, t: 1.0 },
        seed.into_values(),
        Settings {
            max_iter: cfg.max_iter,
            tol: cfg.tol,
            step_tol: None,
        },
    );
    let trajectory = out
        .history
        .iter()
        .enumerate()
        .map(|(step, &(residual, energy))| TrajectoryPoint {
            step,
            t: 1.0,
            residual,
            energy,
        })
        .collect();
    let report = finish(
        data,
        cfg,
        Strategy::Minimize,
        GridFunction::from_raw(out.x),
        out.iterations,
        trajectory,
    )?;
    if report.converged {
        Ok(report)
    } else {
        Err(SolveError::NoConvergence(Box::new(report)))
    }
}

/// Damped Picard iteration on `v + S(T v) = 0`, seeded with `v = L(seed)`.
pub fn solve_picard(data: &ProblemData, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let mut u = check_seed(data, cfg)?;
    let inner_tol = 1e-2 * cfg.tol;
    let mut v = apply_l(&u, data)?;
    let limit = 1e6 * v.sup_norm().max(1.0);
    let theta = cfg.damping;
    let mut trajectory = Vec::new();
    let mut iterations = 0;
    loop {
        let lu = apply_l(&u, data)?;
        let su = apply_s(&u, data)?;
        let res = lu.add(&su).sup_norm();
        trajectory.push(TrajectoryPoint {
            step: iterations,
            t: 1.0,
            residual: res,
            energy: energy(&u, data)?,
        });
        if res <= cfg.tol || iterations >= cfg.max_iter {
            break;
        }
        iterations += 1;
        v = v.scaled(1.0 - theta).sub(&su.scaled(theta));
        if !(v.sup_norm() <= limit) {
            let report = finish(data, cfg, Strategy::Picard, u, iterations, trajectory)?;
            return Err(SolveError::Diverged(Box::new(report)));
        }
        u = match apply_t_from(&v, data, inner_tol, &u) {
            Ok(next) => next,
            Err(Error::NoConvergence { best, .. }) => {
                let report = finish(
                    data,
                    cfg,
                    Strategy::Picard,
                    GridFunction::from_raw(best),
                    iterations,
                    trajectory,
                )?;
                return Err(SolveError::NoConvergence(Box::new(report)));
            }
            Err(e) => return Err(e.into()),
        };
    }
    let report = finish(data, cfg, Strategy::Picard, u, iterations, trajectory)?;
    if report.converged {
        Ok(report)
    } else {
        Err(SolveError::NoConvergence(Box::new(report)))
    }
}

/// One root `v(t) = L u(t)` of `v + t S(T v) = 0` on a continuation path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    pub t: f64,
    pub u: GridFunction,
    pub v: Vec<f64>,
    /// `||L u + t S u||_inf`.
    pub residual: f64,
    pub iterations: usize,
}

/// Follows roots of `L u + t S u = 0` through the increasing parameters `ts`,
/// starting from the exact root `u = 0` at `t = 0`.
///
/// Each solve is warm-started from the previous root. The zero root persists
/// for every `t` because `S(0) = 0`; when `lambda > 0` it is unstable (the
/// source term dominates near zero since `r+ < p-`), so a trivial previous
/// root is replaced by the seed function to move onto the nontrivial branch.
pub fn continuation_path(
    data: &ProblemData,
    cfg: &SolverConfig,
    ts: &[f64],
) -> Result<Vec<PathPoint>, SolveError> {
    let seed = check_seed(data, cfg)?;
    let n = data.len();
    let mut path: Vec<PathPoint> = Vec::with_capacity(ts.len());
    let mut u = GridFunction::zeros(n);
    let mut last_t = 0.0;
    for &t in ts {
        if !(0.0..=1.0).contains(&t) || t < last_t {
            return Err(Error::InvalidParameter(format!(
                "continuation parameters must increase within [0, 1], got {t} after {last_t}"
            ))
            .into());
        }
        if t == 0.0 {
            path.push(PathPoint {
                t,
                u: GridFunction::zeros(n),
                v: vec![0.0; n],
                residual: 0.0,
                iterations: 0,
            });
            continue;
        }
        let start = if is_trivial(&u, cfg.tol) && data.lambda() > 0.0 {
            seed.clone()
        } else {
            u.clone()
        };
        let out = descent::minimize(
            &EnergyObjective { data, t },
            start.into_values(),
            Settings {
                max_iter: cfg.max_iter,
                tol: cfg.tol,
                step_tol: None,
            },
        );
        if !out.converged {
            let report = finish(
                data,
                cfg,
                Strategy::Continuation,
                u,
                path.len(),
                path_trajectory(&path, data)?,
            )?;
            return Err(SolveError::ContinuationStall {
                t,
                last_good_t: last_t,
                report: Box::new(report),
            });
        }
        u = GridFunction::from_raw(out.x);
        path.push(PathPoint {
            t,
            v: apply_l(&u, data)?.values().to_vec(),
            u: u.clone(),
            residual: out.residual,
            iterations: out.iterations,
        });
        last_t = t;
    }
    Ok(path)
}

fn path_trajectory(path: &[PathPoint], data: &ProblemData) -> Result<Vec<TrajectoryPoint>> {
    path.iter()
        .enumerate()
        .map(|(step, p)| {
            Ok(TrajectoryPoint {
                step,
                t: p.t,
                residual: p.residual,
                energy: homotopy_energy(&p.u, data, p.t)?,
            })
        })
        .collect()
}

/// `E_L(u) + t E_S(u)`.
fn homotopy_energy(u: &GridFunction, data: &ProblemData, t: f64) -> Result<f64> {
    use crate::descent::Objective;
    if u.len() != data.len() {
        return Err(Error::DimensionMismatch {
            expected: data.len(),
            found: u.len(),
        });
    }
    Ok(EnergyObjective { data, t }.value(u.values()))
}

/// Uniform-grid homotopy from `t = 0` to `t = 1`.
pub fn solve_continuation(
    data: &ProblemData,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    cfg.validate()?;
    let m = cfg.continuation_steps;
    let ts: Vec<f64> = (0..=m).map(|k| k as f64 / m as f64).collect();
    let path = continuation_path(data, cfg, &ts)?;
    let trajectory = path_trajectory(&path, data)?;
    let iterations = path.iter().map(|p| p.iterations).sum();
    let u = path.last().expect("at least two parameters").u.clone();
    let report = finish(data, cfg, Strategy::Continuation, u, iterations, trajectory)?;
    if report.converged {
        Ok(report)
    } else {
        Err(SolveError::NoConvergence(Box::new(report)))
    }
}

fn finish(
    data: &ProblemData,
    cfg: &SolverConfig,
    strategy: Strategy,
    u: GridFunction,
    iterations: usize,
    trajectory: Vec<TrajectoryPoint>,
) -> Result<SolveReport> {
    // for lambda <= 0 the operator L + S is strictly monotone and 0 is its only root
    let u = if data.lambda() <= 0.0 && is_trivial(&u, cfg.tol) {
        GridFunction::zeros(u.len())
    } else {
        u
    };
    let res = residual(&u, data)?.sup_norm();
    let converged = res <= cfg.tol;
    let norms = SolutionNorms {
        w0: luxemburg(&data.gagliardo(), &u, DEFAULT_NORM_TOL)?.luxemburg,
        q: luxemburg(&data.lebesgue_q(), &u, DEFAULT_NORM_TOL)?.luxemburg,
        r: luxemburg(&data.lebesgue_r(), &u, DEFAULT_NORM_TOL)?.luxemburg,
    };
    let apriori = if converged {
        Some(apriori_at(&u, data, &AprioriOptions::from_config(cfg))?)
    } else {
        None
    };
    Ok(SolveReport {
        strategy,
        lambda: data.lambda(),
        converged,
        iterations,
        residual: res,
        energy: energy(&u, data)?,
        norms,
        sup_norm: u.sup_norm(),
        nontrivial: !is_trivial(&u, cfg.tol),
        apriori,
        discretization: Discretization::of(data),
        trajectory,
        u,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AprioriOptions {
    /// Residual gate: inputs with `||L u + S u||_inf > tol` are refused.
    pub tol: f64,
    pub samples: usize,
    pub rng_seed: u64,
}

impl AprioriOptions {
    pub fn from_config(cfg: &SolverConfig) -> Self {
        Self {
            tol: cfg.tol,
            samples: cfg.apriori_samples,
            rng_seed: cfg.seed.rng_seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AprioriStatus {
    /// `||u||_{W0} <= 1`, nothing to check.
    BoundedTrivially,
    Checked,
}

/// The a priori estimate `||u||^{p-} <= C (||u||^{q+} + ||u||^{r+})` evaluated
/// link by link at a solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AprioriBound {
    pub status: AprioriStatus,
    pub w0_norm: f64,
    /// `||u||_{W0}^{p-}`.
    pub lhs: f64,
    /// `c ((C_q M)^{q-} + (C_q M)^{q+} + (C_r M)^{r-} + (C_r M)^{r+})` with `c = max(1, |lambda|)`.
    pub rhs: f64,
    pub holds: bool,
    /// Gagliardo modular `rho(u)`.
    pub modular: f64,
    /// `<L u, u>`.
    pub pairing: f64,
    /// `-<S u, u>`.
    pub source_pairing: f64,
    /// `rho_q(u) + |lambda| rho_r(u)`.
    pub source_modulars: f64,
    /// `c (||u||_q^{q-} + ||u||_q^{q+} + ||u||_r^{r-} + ||u||_r^{r+})`.
    pub power_bound: f64,
    pub embedding_q: f64,
    pub embedding_r: f64,
    /// Every intermediate inequality of the chain holds.
    pub links_hold: bool,
}

/// Evaluates the a priori bound at a reported solution, recomputing its
/// residual first and refusing non-solutions.
pub fn verify_apriori(
    report: &SolveReport,
    data: &ProblemData,
    opts: &AprioriOptions,
) -> Result<AprioriBound> {
    apriori_at(&report.u, data, opts)
}

fn apriori_at(u: &GridFunction, data: &ProblemData, opts: &AprioriOptions) -> Result<AprioriBound> {
    let res = residual(u, data)?.sup_norm();
    if !(res <= opts.tol) {
        return Err(Error::NotASolution {
            residual: res,
            tol: opts.tol,
        });
    }
    let gag = data.gagliardo();
    let m = luxemburg_tight(&gag, u)?;
    let field = data.field();
    if m <= 1.0 {
        return Ok(AprioriBound {
            status: AprioriStatus::BoundedTrivially,
            w0_norm: m,
            lhs: m,
            rhs: 1.0,
            holds: true,
            modular: gag.eval(u.values()),
            pairing: pairing(&apply_l(u, data)?, u),
            source_pairing: -pairing(&apply_s(u, data)?, u),
            source_modulars: f64::NAN,
            power_bound: f64::NAN,
            embedding_q: f64::NAN,
            embedding_r: f64::NAN,
            links_hold: true,
        });
    }
    let lq = data.lebesgue_q();
    let lr = data.lebesgue_r();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    let mut candidates = random_grid_functions(data.mesh(), opts.samples, &mut rng);
    candidates.push(u.clone());
    let c_q = embedding_constant(&lq, &gag, &candidates)?;
    let c_r = embedding_constant(&lr, &gag, &candidates)?;

    let lhs = m.powf(field.p_minus());
    let modular = gag.eval(u.values());
    let lu_u = pairing(&apply_l(u, data)?, u);
    let su_u = -pairing(&apply_s(u, data)?, u);
    let lambda = data.lambda();
    let source_modulars = lq.eval(u.values()) + lambda.abs() * lr.eval(u.values());
    let c = lambda.abs().max(1.0);
    let nq = luxemburg_tight(&lq, u)?;
    let nr = luxemburg_tight(&lr, u)?;
    let (q_lo, q_hi) = (field.q_minus(), field.q_plus());
    let (r_lo, r_hi) = (field.r_minus(), field.r_plus());
    let power_bound = c * (nq.powf(q_lo) + nq.powf(q_hi) + nr.powf(r_lo) + nr.powf(r_hi));
    let (cq, cr) = (c_q * m, c_r * m);
    let rhs = c * (cq.powf(q_lo) + cq.powf(q_hi) + cr.powf(r_lo) + cr.powf(r_hi));

    let rel = 1.0 + 1e-10;
    // <Lu, u> = -<Su, u> up to the residual tested against u
    let defect = opts.tol * u.values().iter().map(|x| x.abs()).sum::<f64>();
    let links_hold = lhs <= modular * rel
        && (modular - lu_u).abs() <= 1e-10 * modular.max(1.0)
        && lu_u <= su_u + defect + 1e-12 * lu_u.abs()
        && su_u <= source_modulars * rel
        && source_modulars <= power_bound * rel
        && power_bound <= rhs * rel;
    Ok(AprioriBound {
        status: AprioriStatus::Checked,
        w0_norm: m,
        lhs,
        rhs,
        holds: lhs <= rhs,
        modular,
        pairing: lu_u,
        source_pairing: su_u,
        source_modulars,
        power_bound,
        embedding_q: c_q,
        embedding_r: c_r,
        links_hold,
    })
}

/// Outcome of one solve in a lambda sweep.
#[derive(Debug)]
pub struct SweepEntry {
    pub lambda: f64,
    pub outcome: Result<SolveReport, SolveError>,
}

/// Summary line of a sweep entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub converged: bool,
    pub residual: f64,
    pub energy: f64,
    pub w0_norm: f64,
    pub sup_norm: f64,
    pub nontrivial: bool,
    pub apriori_holds: Option<bool>,
}

impl SweepEntry {
    pub fn row(&self) -> SweepRow {
        match self.outcome.as_ref().ok().or_else(|| {
            self.outcome
                .as_ref()
                .err()
                .and_then(|e| e.report())
        }) {
            Some(r) => SweepRow {
                lambda: self.lambda,
                converged: r.converged,
                residual: r.residual,
                energy: r.energy,
                w0_norm: r.norms.w0,
                sup_norm: r.sup_norm,
                nontrivial: r.nontrivial,
                apriori_holds: r.apriori.as_ref().map(|a| a.holds),
            },
            None => SweepRow {
                lambda: self.lambda,
                converged: false,
                residual: f64::NAN,
                energy: f64::NAN,
                w0_norm: f64::NAN,
                sup_norm: f64::NAN,
                nontrivial: false,
                apriori_holds: None,
            },
        }
    }
}

/// Solves the problem for every `lambda` concurrently; entries keep input order.
pub fn lambda_sweep(data: &ProblemData, cfg: &SolverConfig, lambdas: &[f64]) -> Vec<SweepEntry> {
    lambdas
        .par_iter()
        .map(|&lambda| SweepEntry {
            lambda,
            outcome: solve(&data.with_lambda(lambda), cfg),
        })
        .collect()
}
