//! Discrete modulars and their Luxemburg gauges.
//!
//! Two modulars are provided. The Lebesgue modular
//! `rho(u) = sum_i w_i |u_i|^e_i` and the Gagliardo modular
//! `rho(u) = sum_{i != j} K(i,j) |u_i - u_j|^p(i,j) + 2 sum_i kappa_i |u_i|^q_i`,
//! where the second sum is the interaction with the zero exterior.
//! The Luxemburg norm `inf { lambda > 0 : rho(u / lambda) <= 1 }` is found by
//! bisection on `lambda`, using that `lambda -> rho(u / lambda)` is strictly
//! decreasing for `u != 0`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::ExponentField;
use crate::mesh::{KernelTable, Mesh};

/// Nodal values of a function on the mesh, zero outside the domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridFunction {
    values: Vec<f64>,
}

impl GridFunction {
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

    pub fn constant(n: usize, value: f64) -> Self {
        Self {
            values: vec![value; n],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_raw(self.values.iter().map(|v| c * v).collect())
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

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

pub(crate) fn sup_norm(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// A convex modular that can be evaluated at `u / scale`.
pub trait Modular {
    /// `rho(u / scale)` for `scale > 0`.
    fn scaled(&self, u: &[f64], scale: f64) -> f64;

    fn eval(&self, u: &[f64]) -> f64 {
        self.scaled(u, 1.0)
    }

    /// Smallest and largest exponent entering the modular.
    fn exponent_range(&self) -> (f64, f64);

    fn len(&self) -> usize;
}

/// `sum_i w_i |u_i|^e_i`.
#[derive(Clone, Debug)]
pub struct LebesgueModular<'a> {
    exponent: &'a [f64],
    weights: &'a [f64],
    range: (f64, f64),
}

impl<'a> LebesgueModular<'a> {
    pub fn new(exponent: &'a [f64], weights: &'a [f64]) -> Result<Self> {
        if exponent.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: exponent.len(),
            });
        }
        if let Some(i) = exponent.iter().position(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::ExponentOutOfRange {
                condition: "exponent > 0",
                location: format!("node {i}"),
                value: exponent[i],
            });
        }
        let range = exponent
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| {
                (lo.min(e), hi.max(e))
            });
        Ok(Self {
            exponent,
            weights,
            range,
        })
    }

    pub fn on_mesh(exponent: &'a [f64], mesh: &'a Mesh) -> Result<Self> {
        Self::new(exponent, mesh.weights())
    }
}

impl Modular for LebesgueModular<'_> {
    fn scaled(&self, u: &[f64], scale: f64) -> f64 {
        u.iter()
            .zip(self.exponent)
            .zip(self.weights)
            .map(|((v, e), w)| w * (v.abs() / scale).powf(*e))
            .sum()
    }

    fn exponent_range(&self) -> (f64, f64) {
        self.range
    }

    fn len(&self) -> usize {
        self.weights.len()
    }
}

/// Gagliardo modular over ordered pairs plus the exterior interaction.
#[derive(Clone, Copy, Debug)]
pub struct GagliardoModular<'a> {
    kernel: &'a KernelTable,
    field: &'a ExponentField,
}

impl<'a> GagliardoModular<'a> {
    pub fn new(kernel: &'a KernelTable, field: &'a ExponentField) -> Result<Self> {
        if kernel.len() != field.len() {
            return Err(Error::DimensionMismatch {
                expected: kernel.len(),
                found: field.len(),
            });
        }
        Ok(Self { kernel, field })
    }
}

impl Modular for GagliardoModular<'_> {
    fn scaled(&self, u: &[f64], scale: f64) -> f64 {
        let n = self.kernel.len();
        let mut total = 0.0;
        for i in 0..n {
            let row = self.kernel.row(i);
            let p = self.field.p_row(i);
            let mut acc = 0.0;
            for j in i + 1..n {
                let d = (u[i] - u[j]).abs() / scale;
                if d > 0.0 {
                    acc += row[j] * d.powf(p[j]);
                }
            }
            let kappa = self.kernel.exterior()[i];
            total += 2.0 * acc;
            if kappa > 0.0 {
                total += 2.0 * kappa * (u[i].abs() / scale).powf(self.field.q()[i]);
            }
        }
        total
    }

    fn exponent_range(&self) -> (f64, f64) {
        (self.field.p_minus(), self.field.p_plus())
    }

    fn len(&self) -> usize {
        self.kernel.len()
    }
}

/// `sum_i w_i |u_i|^expo_i`.
pub fn modular_lebesgue(u: &GridFunction, expo: &[f64], mesh: &Mesh) -> Result<f64> {
    check_len(u, mesh.len())?;
    Ok(LebesgueModular::on_mesh(expo, mesh)?.eval(u.values()))
}

/// Gagliardo modular, both orderings of every pair counted.
pub fn modular_gagliardo(u: &GridFunction, kernel: &KernelTable, field: &ExponentField) -> Result<f64> {
    check_len(u, kernel.len())?;
    Ok(GagliardoModular::new(kernel, field)?.eval(u.values()))
}

fn check_len(u: &GridFunction, n: usize) -> Result<()> {
    if u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u.len(),
        });
    }
    Ok(())
}

/// Outcome of a Luxemburg norm evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub modular: f64,
    pub luxemburg: f64,
    pub bracket_low: f64,
    pub bracket_high: f64,
    pub iterations: usize,
}

pub const DEFAULT_NORM_TOL: f64 = 1e-10;
const MAX_DOUBLINGS: usize = 1000;

/// Luxemburg gauge of `u` with respect to `modular`.
///
/// Bisection stops once the bracket width is at most `tol * lambda`; a
/// `tol` below machine precision runs until the bracket cannot shrink.
pub fn luxemburg(modular: &impl Modular, u: &GridFunction, tol: f64) -> Result<NormReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    check_len(u, modular.len())?;
    let x = u.values();
    let modular_value = modular.eval(x);
    if u.is_zero() {
        return Ok(NormReport {
            modular: 0.0,
            luxemburg: 0.0,
            bracket_low: 0.0,
            bracket_high: 0.0,
            iterations: 0,
        });
    }
    let f = |lambda: f64| -> Result<f64> {
        let v = modular.scaled(x, lambda);
        if v.is_nan() {
            Err(Error::BracketFailure(0))
        } else {
            Ok(v)
        }
    };
    // invariant: f(lo) > 1 >= f(hi)
    let (mut lo, mut hi);
    let mut iterations = 0;
    if f(1.0)? > 1.0 {
        lo = 1.0;
        hi = 2.0;
        while f(hi)? > 1.0 {
            iterations += 1;
            if iterations > MAX_DOUBLINGS || !hi.is_finite() {
                return Err(Error::BracketFailure(iterations));
            }
            lo = hi;
            hi *= 2.0;
        }
    } else {
        hi = 1.0;
        lo = 0.5;
        while f(lo)? <= 1.0 {
            iterations += 1;
            if iterations > MAX_DOUBLINGS || lo == 0.0 {
                return Err(Error::BracketFailure(iterations));
            }
            hi = lo;
            lo *= 0.5;
        }
    }
    while hi - lo > tol * lo {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        if f(mid)? > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(NormReport {
        modular: modular_value,
        luxemburg: 0.5 * (lo + hi),
        bracket_low: lo,
        bracket_high: hi,
        iterations,
    })
}

/// Luxemburg norm resolved to the last representable bracket.
pub fn luxemburg_tight(modular: &impl Modular, u: &GridFunction) -> Result<f64> {
    Ok(luxemburg(modular, u, f64::EPSILON / 4.0)?.luxemburg)
}

/// One inequality of a norm-modular comparison with its relative slack.
///
/// `slack >= 0` means the inequality holds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub label: String,
    pub applicable: bool,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropositionCheck {
    pub norm: f64,
    pub modular: f64,
    pub checks: Vec<InequalityCheck>,
}

impl PropositionCheck {
    /// Smallest slack over applicable checks (`+inf` if none apply).
    pub fn worst_slack(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.applicable)
            .map(|c| c.slack)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn passed(&self, floor: f64) -> bool {
        self.worst_slack() >= floor
    }

    pub fn get(&self, label: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.label == label)
    }
}

fn relative_slack(lower: f64, upper: f64) -> f64 {
    (upper - lower) / 1f64.max(lower.abs()).max(upper.abs())
}

/// Sign equivalence of `||u|| - 1` and `rho(u) - 1`, and the power sandwich
/// `||u||^{e+} <= rho(u) <= ||u||^{e-}` (norm at most one) or
/// `||u||^{e-} <= rho(u) <= ||u||^{e+}` (norm at least one).
pub fn check_sandwich(modular: &impl Modular, u: &GridFunction) -> Result<PropositionCheck> {
    let norm = luxemburg_tight(modular, u)?;
    let rho = modular.eval(u.values());
    let (lo, hi) = modular.exponent_range();
    let above = norm >= 1.0;
    let below = norm <= 1.0;
    let checks = vec![
        InequalityCheck {
            label: "unit-sign".into(),
            applicable: true,
            slack: (norm - 1.0) * (rho - 1.0),
        },
        InequalityCheck {
            label: "above-one-lower".into(),
            applicable: above,
            slack: relative_slack(norm.powf(lo), rho),
        },
        InequalityCheck {
            label: "above-one-upper".into(),
            applicable: above,
            slack: relative_slack(rho, norm.powf(hi)),
        },
        InequalityCheck {
            label: "below-one-lower".into(),
            applicable: below,
            slack: relative_slack(norm.powf(hi), rho),
        },
        InequalityCheck {
            label: "below-one-upper".into(),
            applicable: below,
            slack: relative_slack(rho, norm.powf(lo)),
        },
    ];
    Ok(PropositionCheck {
        norm,
        modular: rho,
        checks,
    })
}

/// Norm-modular comparison in the variable Lebesgue space, including
/// `||u|| <= rho(u) + 1` and `rho(u) <= ||u||^{e-} + ||u||^{e+}`.
pub fn check_prop1(u: &GridFunction, expo: &[f64], mesh: &Mesh) -> Result<PropositionCheck> {
    check_len(u, mesh.len())?;
    let modular = LebesgueModular::on_mesh(expo, mesh)?;
    let mut report = check_sandwich(&modular, u)?;
    let (lo, hi) = modular.exponent_range();
    let (norm, rho) = (report.norm, report.modular);
    report.checks.push(InequalityCheck {
        label: "norm-below-modular-plus-one".into(),
        applicable: true,
        slack: relative_slack(norm, rho + 1.0),
    });
    report.checks.push(InequalityCheck {
        label: "modular-below-power-sum".into(),
        applicable: true,
        slack: relative_slack(rho, norm.powf(lo) + norm.powf(hi)),
    });
    Ok(report)
}

/// Norm-modular comparison for the Gagliardo modular.
pub fn check_prop2(
    u: &GridFunction,
    kernel: &KernelTable,
    field: &ExponentField,
) -> Result<PropositionCheck> {
    check_len(u, kernel.len())?;
    check_sandwich(&GagliardoModular::new(kernel, field)?, u)
}

/// Largest observed ratio `||w||_target / ||w||_source` over `candidates`.
///
/// Sampling gives a lower estimate of the true embedding constant; callers
/// that need the bound at a specific function include it among the candidates.
pub fn embedding_constant<'a>(
    target: &impl Modular,
    source: &impl Modular,
    candidates: impl IntoIterator<Item = &'a GridFunction>,
) -> Result<f64> {
    let mut best: f64 = 0.0;
    for w in candidates {
        if w.is_zero() {
            continue;
        }
        let num = luxemburg(target, w, DEFAULT_NORM_TOL)?.luxemburg;
        let den = luxemburg(source, w, DEFAULT_NORM_TOL)?.luxemburg;
        if den > 0.0 {
            best = best.max(num / den);
        }
    }
    Ok(best)
}

/// Random nodal functions for property runs: rough uniform samples with a
/// random overall scale, smooth sine profiles, and sparse spikes.
pub fn random_grid_functions(mesh: &Mesh, count: usize, rng: &mut impl Rng) -> Vec<GridFunction> {
    let n = mesh.len();
    (0..count)
        .map(|k| {
            let scale = 10f64.powf(rng.gen_range(-2.0..1.5));
            let values: Vec<f64> = match k % 3 {
                0 => (0..n).map(|_| scale * rng.gen_range(-1.0..1.0)).collect(),
                1 => {
                    let freq: Vec<f64> = (0..mesh.dim())
                        .map(|_| rng.gen_range(1..4) as f64 * std::f64::consts::PI)
                        .collect();
                    let phase = rng.gen_range(0.0..1.0);
                    (0..n)
                        .map(|i| {
                            let x = mesh.node(i);
                            let lower = &mesh.domain().lower;
                            let upper = &mesh.domain().upper;
                            let profile: f64 = (0..mesh.dim())
                                .map(|d| {
                                    let t = (x[d] - lower[d]) / (upper[d] - lower[d]);
                                    (freq[d] * t).sin()
                                })
                                .product();
                            scale * (profile + 0.1 * phase)
                        })
                        .collect()
                }
                _ => {
                    let mut v = vec![0.0; n];
                    for _ in 0..(1 + n / 8) {
                        v[rng.gen_range(0..n)] = scale * rng.gen_range(-1.0..1.0);
                    }
                    if v.iter().all(|&x| x == 0.0) {
                        v[0] = scale;
                    }
                    v
                }
            };
            GridFunction::from_raw(values)
        })
        .collect()
}
