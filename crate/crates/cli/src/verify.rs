//! Randomized property suites run by the `verify` subcommand.

use fracpx::modular::{
    check_prop1, check_prop2, embedding_constant, luxemburg, random_grid_functions, GridFunction,
    LebesgueModular, Modular, DEFAULT_NORM_TOL,
};
use fracpx::operators::{
    apply_l, apply_t, check_s_bounds, energy, pairing, residual, source_exponent,
};
use fracpx::ProblemData;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::VerifyConfig;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    /// Pass threshold for `worst`.
    pub tolerance: f64,
}

impl Verdict {
    fn at_most(name: &str, samples: usize, worst: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: worst <= tolerance,
            samples,
            worst,
            tolerance,
        }
    }

    fn at_least(name: &str, samples: usize, worst: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: worst >= tolerance,
            samples,
            worst,
            tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
}

pub fn run_suites(data: &ProblemData, cfg: &VerifyConfig, seed: u64) -> Result<VerifyReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mesh = data.mesh();
    let samples = random_grid_functions(mesh, cfg.samples, &mut rng);
    let partners = random_grid_functions(mesh, cfg.samples, &mut rng);
    let gag = data.gagliardo();
    let lq = data.lebesgue_q();
    let lr = data.lebesgue_r();
    let mut verdicts = Vec::new();

    let mut unit_err: f64 = 0.0;
    for u in &samples {
        for m in [&lq as &dyn ModularRef, &lr, &gag] {
            let norm = m.norm(u)?;
            unit_err = unit_err.max((m.eval_at(u, norm) - 1.0).abs());
        }
    }
    verdicts.push(Verdict::at_most("luxemburg-unit-modular", 3 * samples.len(), unit_err, 1e-9));

    let mut closed_err: f64 = 0.0;
    for p in [1.5, 2.0, 3.0] {
        let expo = vec![p; mesh.len()];
        let m = LebesgueModular::on_mesh(&expo, mesh)?;
        for c in [-3.0, 0.25, 4.0] {
            let norm = luxemburg(&m, &GridFunction::constant(mesh.len(), c), DEFAULT_NORM_TOL)?.luxemburg;
            let exact = mesh.domain().volume().powf(1.0 / p) * f64::abs(c);
            closed_err = closed_err.max((norm - exact).abs() / exact);
        }
    }
    verdicts.push(Verdict::at_most("luxemburg-closed-form", 9, closed_err, 1e-9));

    let mut slack1 = f64::INFINITY;
    let mut slack2 = f64::INFINITY;
    for u in &samples {
        slack1 = slack1.min(check_prop1(u, data.field().q(), mesh)?.worst_slack());
        slack2 = slack2.min(check_prop2(u, data.kernel(), data.field())?.worst_slack());
    }
    verdicts.push(Verdict::at_least("lebesgue-norm-modular", samples.len(), slack1, -1e-12));
    verdicts.push(Verdict::at_least("gagliardo-norm-modular", samples.len(), slack2, -1e-12));

    let mut duality: f64 = 0.0;
    let mut monotone = f64::INFINITY;
    for (u, v) in samples.iter().zip(&partners) {
        let lu = apply_l(u, data)?;
        let rho = gag.eval(u.values());
        duality = duality.max((pairing(&lu, u) - rho).abs() / rho.max(f64::MIN_POSITIVE));
        if u != v {
            let lv = apply_l(v, data)?;
            monotone = monotone.min(pairing(&lu.sub(&lv), &u.sub(v)));
        }
    }
    verdicts.push(Verdict::at_most("duality-identity", samples.len(), duality, 1e-12));
    verdicts.push(Verdict {
        name: "strict-monotonicity".into(),
        passed: monotone > 0.0,
        samples: samples.len(),
        worst: monotone,
        tolerance: 0.0,
    });

    let mut grad_err: f64 = 0.0;
    for u in samples.iter().take(cfg.gradient_points) {
        grad_err = grad_err.max(gradient_error(u, data)?);
    }
    verdicts.push(Verdict::at_most(
        "energy-gradient",
        cfg.gradient_points.min(samples.len()),
        grad_err,
        1e-5,
    ));

    let mut trip: f64 = 0.0;
    for u in samples.iter().take(cfg.round_trips) {
        let back = apply_t(&apply_l(u, data)?, data, 1e-12)?;
        trip = trip.max(back.sub(u).sup_norm());
    }
    verdicts.push(Verdict::at_most(
        "inverse-round-trip",
        cfg.round_trips.min(samples.len()),
        trip,
        1e-6,
    ));

    let alpha = source_exponent(data.field());
    let la = LebesgueModular::on_mesh(&alpha, mesh)?;
    let c_q = embedding_constant(&lq, &gag, &samples)?;
    let c_a = embedding_constant(&la, &gag, &samples)?;
    let mut bounded = 0usize;
    for u in &samples {
        let cq = c_q.max(embedding_constant(&lq, &gag, [u])?);
        let ca = c_a.max(embedding_constant(&la, &gag, [u])?);
        if check_s_bounds(u, data, cq, ca)?.holds {
            bounded += 1;
        }
    }
    let failures = (samples.len() - bounded) as f64;
    verdicts.push(Verdict::at_most("source-bounds", samples.len(), failures, 0.0));

    Ok(VerifyReport {
        passed: verdicts.iter().all(|v| v.passed),
        verdicts,
    })
}

/// `||g_fd - g||_inf / ||g||_inf` with central differences of the energy.
///
/// Steps are relative to `|u_i|` (floored at a fraction of `||u||_inf`)
/// since the energy is only finitely smooth at `u_i = 0` when `r < 2`.
pub fn gradient_error(u: &GridFunction, data: &ProblemData) -> Result<f64, CliError> {
    let g = residual(u, data)?;
    let floor = 1e-3 * u.sup_norm();
    let mut worst: f64 = 0.0;
    for i in 0..u.len() {
        let scale = u.values()[i].abs().max(floor);
        let step = if scale > 0.0 { f64::EPSILON.cbrt() * scale } else { 1e-6 };
        let mut up = u.values().to_vec();
        let mut down = up.clone();
        up[i] += step;
        down[i] -= step;
        let fd = (energy(&GridFunction::new(up)?, data)? - energy(&GridFunction::new(down)?, data)?)
            / (2.0 * step);
        worst = worst.max((fd - g.values()[i]).abs());
    }
    Ok(worst / g.sup_norm().max(f64::MIN_POSITIVE))
}

/// Object-safe view of a modular for the mixed loop above.
trait ModularRef {
    fn norm(&self, u: &GridFunction) -> Result<f64, CliError>;
    fn eval_at(&self, u: &GridFunction, norm: f64) -> f64;
}

impl<M: Modular> ModularRef for M {
    fn norm(&self, u: &GridFunction) -> Result<f64, CliError> {
        Ok(luxemburg(self, u, DEFAULT_NORM_TOL)?.luxemburg)
    }

    fn eval_at(&self, u: &GridFunction, norm: f64) -> f64 {
        self.scaled(u.values(), norm)
    }
}
