//! The nonlocal operator `L`, the lower-order operator `S`, the energy whose
//! gradient is `L + S`, and the inverse `T = L^-1`.
//!
//! All functionals use the plain pairing `<F, v> = sum_i F_i v_i`; quadrature
//! and kernel weights are folded into `F`. With that convention
//!
//! ```text
//! (Lu)_i = 2 sum_{j != i} K(i,j) phi_p(ij)(u_i - u_j) + 2 kappa_i phi_q(i)(u_i)
//! (Su)_i = w_i (phi_q(i)(u_i) - lambda phi_r(i)(u_i))
//! ```
//!
//! where `phi_e(t) = |t|^(e-2) t`, extended by `phi_e(0) = 0`. Then
//! `<Lu, u>` equals the Gagliardo modular of `u` exactly.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::descent::{self, Model, Objective, Settings};
use crate::error::{Error, Result};
use crate::exponents::{ExponentField, PairExponent, PointExponent};
use crate::mesh::{BoxDomain, KernelTable, Mesh};
use crate::modular::{
    luxemburg_tight, sup_norm, GagliardoModular, GridFunction, LebesgueModular, Modular,
};

/// Nodal representation of a functional on grid functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualVector {
    values: Vec<f64>,
}

impl DualVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { values })
    }

    pub(crate) fn from_raw(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![0.0; n],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.values)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_raw(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_raw(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_raw(self.values.iter().map(|v| c * v).collect())
    }
}

/// `<F, v> = sum_i F_i v_i`.
pub fn pairing(f: &DualVector, v: &GridFunction) -> f64 {
    f.values().iter().zip(v.values()).map(|(a, b)| a * b).sum()
}

/// Everything needed to evaluate the operators of one problem instance.
#[derive(Clone, Debug)]
pub struct ProblemData {
    mesh: Mesh,
    kernel: KernelTable,
    field: ExponentField,
    lambda: f64,
}

impl ProblemData {
    pub fn new(mesh: Mesh, kernel: KernelTable, field: ExponentField, lambda: f64) -> Result<Self> {
        let n = mesh.len();
        for found in [kernel.len(), field.len()] {
            if found != n {
                return Err(Error::DimensionMismatch { expected: n, found });
            }
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda = {lambda} is not finite")));
        }
        Ok(Self {
            mesh,
            kernel,
            field,
            lambda,
        })
    }

    /// Mesh, exponents and Dirichlet kernel from closed-form presets.
    pub fn from_presets(
        domain: &BoxDomain,
        h: f64,
        s: f64,
        p: &PairExponent,
        r: &PointExponent,
        lambda: f64,
    ) -> Result<Self> {
        let mesh = Mesh::build(domain, h)?;
        let field = ExponentField::from_presets(&mesh, p, r)?;
        let kernel = KernelTable::build(&mesh, s, &field)?;
        Self::new(mesh, kernel, field, lambda)
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self {
            lambda,
            ..self.clone()
        }
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn kernel(&self) -> &KernelTable {
        &self.kernel
    }

    pub fn field(&self) -> &ExponentField {
        &self.field
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.mesh.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mesh.is_empty()
    }

    pub fn gagliardo(&self) -> GagliardoModular<'_> {
        GagliardoModular::new(&self.kernel, &self.field).expect("consistent by construction")
    }

    pub fn lebesgue_q(&self) -> LebesgueModular<'_> {
        LebesgueModular::on_mesh(self.field.q(), &self.mesh).expect("validated exponent")
    }

    pub fn lebesgue_r(&self) -> LebesgueModular<'_> {
        LebesgueModular::on_mesh(self.field.r(), &self.mesh).expect("validated exponent")
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: n,
            });
        }
        Ok(())
    }
}

/// `|t|^(e-2) t` with the continuous extension by zero at `t = 0`.
#[inline]
pub(crate) fn signed_power(t: f64, e: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.abs().powf(e - 1.0).copysign(t)
    }
}

/// `|t|^(e-2)` with `|t|` clamped from below by `floor`.
#[inline]
fn clamped_slope(t: f64, e: f64, floor: f64) -> f64 {
    t.abs().max(floor).powf(e - 2.0)
}

fn curvature_floor(u: &[f64]) -> f64 {
    (1e-14 * sup_norm(u)).max(1e-200)
}

fn l_values(u: &[f64], data: &ProblemData) -> Vec<f64> {
    let n = u.len();
    let kernel = &data.kernel;
    let field = &data.field;
    (0..n)
        .map(|i| {
            let row = kernel.row(i);
            let p = field.p_row(i);
            let mut acc = 0.0;
            for j in 0..n {
                if j != i {
                    acc += row[j] * signed_power(u[i] - u[j], p[j]);
                }
            }
            2.0 * acc + 2.0 * kernel.exterior()[i] * signed_power(u[i], field.q()[i])
        })
        .collect()
}

fn s_values(u: &[f64], data: &ProblemData, t: f64) -> Vec<f64> {
    let w = data.mesh.weights();
    let q = data.field.q();
    let r = data.field.r();
    let lambda = data.lambda;
    (0..u.len())
        .map(|i| t * w[i] * (signed_power(u[i], q[i]) - lambda * signed_power(u[i], r[i])))
        .collect()
}

fn l_energy(u: &[f64], data: &ProblemData) -> f64 {
    let n = u.len();
    let kernel = &data.kernel;
    let field = &data.field;
    let mut total = 0.0;
    for i in 0..n {
        let row = kernel.row(i);
        let p = field.p_row(i);
        let mut acc = 0.0;
        for j in i + 1..n {
            let d = (u[i] - u[j]).abs();
            if d > 0.0 {
                acc += row[j] * d.powf(p[j]) / p[j];
            }
        }
        let q = field.q()[i];
        total += 2.0 * acc + 2.0 * kernel.exterior()[i] * u[i].abs().powf(q) / q;
    }
    total
}

fn s_energy(u: &[f64], data: &ProblemData) -> f64 {
    let w = data.mesh.weights();
    let q = data.field.q();
    let r = data.field.r();
    (0..u.len())
        .map(|i| {
            let a = u[i].abs();
            w[i] * (a.powf(q[i]) / q[i] - data.lambda * a.powf(r[i]) / r[i])
        })
        .sum()
}

fn l_curvature(u: &[f64], data: &ProblemData, model: Model) -> DMatrix<f64> {
    let n = u.len();
    let floor = curvature_floor(u);
    let kernel = &data.kernel;
    let field = &data.field;
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        let row = kernel.row(i);
        let p = field.p_row(i);
        let mut diag = 0.0;
        for j in 0..n {
            if j != i {
                let c = 2.0 * row[j] * model.factor(p[j]) * clamped_slope(u[i] - u[j], p[j], floor);
                h[(i, j)] = -c;
                diag += c;
            }
        }
        let q = field.q()[i];
        diag += 2.0 * kernel.exterior()[i] * model.factor(q) * clamped_slope(u[i], q, floor);
        h[(i, i)] = diag;
    }
    h
}

fn add_s_curvature(h: &mut DMatrix<f64>, u: &[f64], data: &ProblemData, t: f64, model: Model) {
    let floor = curvature_floor(u);
    let w = data.mesh.weights();
    let q = data.field.q();
    let r = data.field.r();
    for i in 0..u.len() {
        let mut c = w[i] * model.factor(q[i]) * clamped_slope(u[i], q[i], floor);
        let source = -data.lambda * w[i] * model.factor(r[i]) * clamped_slope(u[i], r[i], floor);
        if !model.convex_only() || source > 0.0 {
            c += source;
        }
        h[(i, i)] += t * c;
    }
}

/// `L u`.
pub fn apply_l(u: &GridFunction, data: &ProblemData) -> Result<DualVector> {
    data.check(u.len())?;
    Ok(DualVector::from_raw(l_values(u.values(), data)))
}

/// `S u`.
pub fn apply_s(u: &GridFunction, data: &ProblemData) -> Result<DualVector> {
    data.check(u.len())?;
    Ok(DualVector::from_raw(s_values(u.values(), data, 1.0)))
}

/// `L u + S u`, the weak-form residual vector.
pub fn residual(u: &GridFunction, data: &ProblemData) -> Result<DualVector> {
    Ok(apply_l(u, data)?.add(&apply_s(u, data)?))
}

/// Energy whose gradient is `L + S`:
/// `sum_{i != j} K |u_i - u_j|^p / p + 2 sum_i kappa_i |u_i|^q / q
///  + sum_i w_i (|u_i|^q / q - lambda |u_i|^r / r)`.
pub fn energy(u: &GridFunction, data: &ProblemData) -> Result<f64> {
    data.check(u.len())?;
    Ok(l_energy(u.values(), data) + s_energy(u.values(), data))
}

/// Objective `E_L(u) + t E_S(u)`; critical points solve `L u + t S u = 0`.
pub(crate) struct EnergyObjective<'a> {
    pub data: &'a ProblemData,
    pub t: f64,
}

impl Objective for EnergyObjective<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        l_energy(x, self.data) + self.t * s_energy(x, self.data)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = l_values(x, self.data);
        for (gi, si) in g.iter_mut().zip(s_values(x, self.data, self.t)) {
            *gi += si;
        }
        g
    }

    fn curvature(&self, x: &[f64], model: Model) -> DMatrix<f64> {
        let mut h = l_curvature(x, self.data, model);
        add_s_curvature(&mut h, x, self.data, self.t, model);
        h
    }
}

/// Objective `E_L(u) - <v, u>`; its unique minimizer is `T v`.
struct InverseObjective<'a> {
    data: &'a ProblemData,
    v: &'a [f64],
}

impl Objective for InverseObjective<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        l_energy(x, self.data) - x.iter().zip(self.v).map(|(a, b)| a * b).sum::<f64>()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = l_values(x, self.data);
        for (gi, vi) in g.iter_mut().zip(self.v) {
            *gi -= vi;
        }
        g
    }

    fn curvature(&self, x: &[f64], model: Model) -> DMatrix<f64> {
        l_curvature(x, self.data, model)
    }
}

const INVERSE_MAX_ITER: usize = 500;

/// `T v = L^-1 v`: the unique `u` with `||L u - v||_inf <= tol`, found by
/// minimizing the strictly convex `E_L(u) - <v, u>`.
///
/// Where `u` has exact ties (`u_i = u_j`, or `u_i = 0` at the boundary) under
/// an exponent below 2, the residual behaves like `|error|^(p-1)` and may
/// bottom out above `tol` in floating point. The solve then also counts as
/// converged once the Newton correction is below `tol * max(1, ||u||_inf)`.
pub fn apply_t(v: &DualVector, data: &ProblemData, tol: f64) -> Result<GridFunction> {
    apply_t_from(v, data, tol, &GridFunction::zeros(data.len()))
}

/// `T v` started from `start`.
pub fn apply_t_from(
    v: &DualVector,
    data: &ProblemData,
    tol: f64,
    start: &GridFunction,
) -> Result<GridFunction> {
    data.check(v.len())?;
    data.check(start.len())?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    let objective = InverseObjective {
        data,
        v: v.values(),
    };
    let out = descent::minimize(
        &objective,
        start.values().to_vec(),
        Settings {
            max_iter: INVERSE_MAX_ITER,
            tol,
            step_tol: Some(tol),
        },
    );
    if out.converged {
        Ok(GridFunction::from_raw(out.x))
    } else {
        Err(Error::NoConvergence {
            iterations: out.iterations,
            residual: out.residual,
            best: out.x,
        })
    }
}

/// `alpha(x) = (r(x) - 1) q'(x)`, the exponent controlling the source term of `S`.
pub fn source_exponent(field: &ExponentField) -> Vec<f64> {
    field
        .r()
        .iter()
        .zip(field.conjugate().values())
        .map(|(r, qc)| (r - 1.0) * qc)
        .collect()
}

/// Boundedness chain for the two parts of `S` measured in the conjugate space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SBoundCheck {
    pub w0_norm: f64,
    /// `||phi u||_{q'}` with `phi u = |u|^(q-2) u`.
    pub phi_norm: f64,
    /// `rho_q(u) + 1`.
    pub phi_modular_bound: f64,
    /// `(C_q M)^{q-} + (C_q M)^{q+} + 1` with `M = ||u||_{W0}`.
    pub phi_bound: f64,
    /// `||psi u||_{q'}` with `psi u = -lambda |u|^(r-2) u`.
    pub psi_norm: f64,
    /// `max(1, |lambda|)^{q'+} rho_alpha(u) + 1`.
    pub psi_modular_bound: f64,
    /// `max(1, |lambda|)^{q'+} ((C_a M)^{a-} + (C_a M)^{a+}) + 1`.
    pub psi_bound: f64,
    pub holds: bool,
}

/// Evaluates both boundedness chains for `S` at `u`, given embedding
/// constants `||w||_q <= c_q ||w||_{W0}` and `||w||_alpha <= c_alpha ||w||_{W0}`.
pub fn check_s_bounds(
    u: &GridFunction,
    data: &ProblemData,
    c_q: f64,
    c_alpha: f64,
) -> Result<SBoundCheck> {
    data.check(u.len())?;
    let mesh = &data.mesh;
    let field = &data.field;
    let conj = field.conjugate();
    let alpha = source_exponent(field);
    let lq = data.lebesgue_q();
    let la = LebesgueModular::on_mesh(&alpha, mesh)?;
    let lconj = LebesgueModular::on_mesh(conj.values(), mesh)?;
    let m = luxemburg_tight(&data.gagliardo(), u)?;
    let x = u.values();

    let phi = GridFunction::from_raw(
        x.iter()
            .zip(field.q())
            .map(|(v, q)| signed_power(*v, *q))
            .collect(),
    );
    let psi = GridFunction::from_raw(
        x.iter()
            .zip(field.r())
            .map(|(v, r)| -data.lambda * signed_power(*v, *r))
            .collect(),
    );
    let phi_norm = luxemburg_tight(&lconj, &phi)?;
    let psi_norm = luxemburg_tight(&lconj, &psi)?;
    let phi_modular_bound = lq.eval(x) + 1.0;
    let (q_lo, q_hi) = lq.exponent_range();
    let cm = c_q * m;
    let phi_bound = cm.powf(q_lo) + cm.powf(q_hi) + 1.0;
    let lam = data.lambda.abs().max(1.0).powf(conj.plus());
    let psi_modular_bound = lam * la.eval(x) + 1.0;
    let (a_lo, a_hi) = la.exponent_range();
    let am = c_alpha * m;
    let psi_bound = lam * (am.powf(a_lo) + am.powf(a_hi)) + 1.0;
    let slack = 1.0 + 1e-12;
    let holds = phi_norm <= phi_modular_bound * slack
        && phi_modular_bound <= phi_bound * slack
        && psi_norm <= psi_modular_bound * slack
        && psi_modular_bound <= psi_bound * slack;
    Ok(SBoundCheck {
        w0_norm: m,
        phi_norm,
        phi_modular_bound,
        phi_bound,
        psi_norm,
        psi_modular_bound,
        psi_bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::ExteriorCoupling;
    use crate::modular::modular_gagliardo;

    fn two_node(coupling: ExteriorCoupling) -> ProblemData {
        let mesh = Mesh::build(&BoxDomain::unit(1), 0.5).unwrap();
        let field = ExponentField::from_presets(
            &mesh,
            &PairExponent::Constant { value: 2.0 },
            &PointExponent::Constant { value: 1.5 },
        )
        .unwrap();
        let kernel = KernelTable::build_with(&mesh, 0.5, &field, coupling).unwrap();
        ProblemData::new(mesh, kernel, field, 1.0).unwrap()
    }

    #[test]
    fn l_on_two_nodes_by_hand() {
        let data = two_node(ExteriorCoupling::Regional);
        let u = GridFunction::new(vec![1.0, 0.0]).unwrap();
        let lu = apply_l(&u, &data).unwrap();
        assert!((lu.values()[0] - 2.0).abs() < 1e-15);
        assert!((lu.values()[1] + 2.0).abs() < 1e-15);
        assert!(apply_l(&GridFunction::zeros(2), &data).unwrap().sup_norm() == 0.0);
    }

    #[test]
    fn s_single_node_by_hand() {
        let mesh = Mesh::build(&BoxDomain::unit(1), 1.0).unwrap();
        let field = ExponentField::from_presets(
            &mesh,
            &PairExponent::Constant { value: 2.0 },
            &PointExponent::Constant { value: 1.5 },
        )
        .unwrap();
        let kernel = KernelTable::build(&mesh, 0.5, &field).unwrap();
        let data = ProblemData::new(mesh, kernel, field, 1.0).unwrap();
        let su = apply_s(&GridFunction::new(vec![4.0]).unwrap(), &data).unwrap();
        assert!((su.values()[0] - 2.0).abs() < 1e-15);
        assert_eq!(apply_s(&GridFunction::zeros(1), &data).unwrap().values(), &[0.0]);
    }

    #[test]
    fn s_linear_case() {
        let data = ProblemData::from_presets(
            &BoxDomain::unit(1),
            0.125,
            0.5,
            &PairExponent::Constant { value: 2.0 },
            &PointExponent::Constant { value: 1.5 },
            0.0,
        )
        .unwrap();
        let su = apply_s(&GridFunction::constant(8, 1.0), &data).unwrap();
        assert!(su.values().iter().all(|&v| (v - 0.125).abs() < 1e-15));
    }

    #[test]
    fn zero_extension_below_two() {
        assert_eq!(signed_power(0.0, 1.2), 0.0);
        assert_eq!(signed_power(-0.0, 1.2), 0.0);
        assert!((signed_power(-4.0, 1.5) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn duality_identity_on_two_nodes() {
        for coupling in [ExteriorCoupling::Regional, ExteriorCoupling::Dirichlet] {
            let data = two_node(coupling);
            let u = GridFunction::new(vec![0.3, -1.1]).unwrap();
            let lu = apply_l(&u, &data).unwrap();
            let rho = modular_gagliardo(&u, data.kernel(), data.field()).unwrap();
            assert!((pairing(&lu, &u) - rho).abs() < 1e-13 * rho);
        }
    }

    #[test]
    fn energy_vanishes_at_zero() {
        let data = two_node(ExteriorCoupling::Dirichlet);
        assert_eq!(energy(&GridFunction::zeros(2), &data).unwrap(), 0.0);
    }

    #[test]
    fn inverse_of_zero_is_zero() {
        let data = two_node(ExteriorCoupling::Dirichlet);
        let u = apply_t(&DualVector::zeros(2), &data, 1e-12).unwrap();
        assert!(u.is_zero());
    }

    #[test]
    fn two_node_inverse_matches_linear_solve() {
        let data = two_node(ExteriorCoupling::Dirichlet);
        let k = data.kernel().get(0, 1);
        let kap = data.kernel().exterior();
        // p = q = 2: L = [[2K + 2k0, -2K], [-2K, 2K + 2k1]]
        let m = nalgebra::Matrix2::new(2.0 * k + 2.0 * kap[0], -2.0 * k, -2.0 * k, 2.0 * k + 2.0 * kap[1]);
        let v = nalgebra::Vector2::new(0.7, -0.2);
        let want = m.lu().solve(&v).unwrap();
        let got = apply_t(&DualVector::new(vec![0.7, -0.2]).unwrap(), &data, 1e-14).unwrap();
        assert!((got.values()[0] - want[0]).abs() < 1e-12);
        assert!((got.values()[1] - want[1]).abs() < 1e-12);
    }

    #[test]
    fn regional_operator_annihilates_constants() {
        let data = two_node(ExteriorCoupling::Regional);
        let lu = apply_l(&GridFunction::constant(2, 5.0), &data).unwrap();
        assert_eq!(lu.sup_norm(), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let data = two_node(ExteriorCoupling::Dirichlet);
        assert!(matches!(
            apply_l(&GridFunction::zeros(3), &data),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
