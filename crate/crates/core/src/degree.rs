//! Brouwer degree of continuous maps on boxes in one and two dimensions.
//!
//! In 1D the degree is the boundary sign count. In 2D it is the winding
//! number of `F - h` along the counterclockwise boundary loop, accumulated
//! from sampled angles. Boundary sampling runs in parallel; the angle sum is
//! accumulated in loop order so results do not depend on thread scheduling.
//!
//! The boundary certificate is numerical evidence, not a proof: the loop is
//! refined until, on every segment between consecutive samples, the smaller
//! endpoint value of `|F - h|` exceeds ten times the jump of `F - h` across
//! the segment, and every segment turns by less than a quarter circle.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::BoxDomain;
use crate::modular::GridFunction;
use crate::operators::{apply_s, apply_t_from, DualVector, ProblemData};
use crate::solver::{continuation_path, solve_picard, SolverConfig};

pub type MapFn<'a> = dyn Fn(&[f64]) -> Vec<f64> + Sync + 'a;

pub const DEFAULT_RESOLUTION: usize = 64;
/// Upper bound on boundary samples in 2D.
pub const MAX_SAMPLES: usize = 1 << 20;
/// Ratio between the boundary clearance and the sampling modulus.
pub const CERTIFICATE_FACTOR: f64 = 10.0;
/// Absolute clearance below which a boundary value counts as a hit.
const CLEARANCE: f64 = 1e-12;
/// Smallest loop parameter step; segments are not split below it.
const MIN_PARAM_STEP: f64 = 1e-12;

pub struct DegreeProblem<'a> {
    pub map: &'a MapFn<'a>,
    pub region: BoxDomain,
    pub target: Vec<f64>,
    /// Initial samples per edge in 2D.
    pub resolution: usize,
}

impl<'a> DegreeProblem<'a> {
    pub fn new(map: &'a MapFn<'a>, region: BoxDomain, target: Vec<f64>) -> Self {
        Self {
            map,
            region,
            target,
            resolution: DEFAULT_RESOLUTION,
        }
    }

    fn with_region(&self, region: BoxDomain) -> DegreeProblem<'a> {
        DegreeProblem {
            map: self.map,
            region,
            target: self.target.clone(),
            resolution: self.resolution,
        }
    }

    fn validate(&self) -> Result<()> {
        self.region.validate()?;
        let n = self.region.dim();
        if self.target.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.target.len(),
            });
        }
        if self.resolution < 2 {
            return Err(Error::InvalidParameter(format!(
                "boundary resolution {} must be at least 2",
                self.resolution
            )));
        }
        Ok(())
    }

    /// `F(x) - h`.
    fn shifted(&self, x: &[f64]) -> Result<Vec<f64>> {
        let y = (self.map)(x);
        if y.len() != self.target.len() {
            return Err(Error::DimensionMismatch {
                expected: self.target.len(),
                found: y.len(),
            });
        }
        let out: Vec<f64> = y.iter().zip(&self.target).map(|(a, b)| a - b).collect();
        if let Some(i) = out.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeCertificate {
    pub degree: i64,
    /// Smallest sampled `|F - h|` on the boundary.
    pub min_distance: f64,
    /// Largest change of `F - h` between consecutive boundary samples.
    pub modulus: f64,
    pub samples: usize,
}

pub fn degree(prob: &DegreeProblem) -> Result<DegreeCertificate> {
    prob.validate()?;
    match prob.region.dim() {
        1 => degree_1d(prob),
        _ => degree_2d(prob),
    }
}

pub fn degree_1d(prob: &DegreeProblem) -> Result<DegreeCertificate> {
    prob.validate()?;
    if prob.region.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: prob.region.dim(),
        });
    }
    let fa = prob.shifted(&prob.region.lower)?[0];
    let fb = prob.shifted(&prob.region.upper)?[0];
    let min_distance = fa.abs().min(fb.abs());
    let threshold = CLEARANCE * (1.0 + prob.target[0].abs());
    if !(min_distance > threshold) {
        return Err(Error::BoundaryHit {
            min_distance,
            threshold,
        });
    }
    let degree = ((fb.signum() - fa.signum()) / 2.0) as i64;
    Ok(DegreeCertificate {
        degree,
        min_distance,
        modulus: 0.0,
        samples: 2,
    })
}

/// Point on the counterclockwise boundary loop, `s` in `[0, 4)` one unit per edge.
fn loop_point(region: &BoxDomain, s: f64) -> [f64; 2] {
    let (a, b) = (&region.lower, &region.upper);
    let edge = (s.floor() as usize).min(3);
    let f = s - edge as f64;
    let lerp = |lo: f64, hi: f64, w: f64| lo + (hi - lo) * w;
    match edge {
        0 => [lerp(a[0], b[0], f), a[1]],
        1 => [b[0], lerp(a[1], b[1], f)],
        2 => [lerp(b[0], a[0], f), b[1]],
        _ => [a[0], lerp(b[1], a[1], f)],
    }
}

fn turn(g0: &[f64], g1: &[f64]) -> f64 {
    let cross = g0[0] * g1[1] - g0[1] * g1[0];
    let dot = g0[0] * g1[0] + g0[1] * g1[1];
    cross.atan2(dot)
}

fn norm2(g: &[f64]) -> f64 {
    g[0].hypot(g[1])
}

pub fn degree_2d(prob: &DegreeProblem) -> Result<DegreeCertificate> {
    prob.validate()?;
    if prob.region.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: prob.region.dim(),
        });
    }
    let threshold_floor = CLEARANCE * (1.0 + norm2(&prob.target));
    let eval = |params: &[f64]| -> Result<Vec<Vec<f64>>> {
        params
            .par_iter()
            .map(|&s| prob.shifted(&loop_point(&prob.region, s)))
            .collect()
    };

    let m = 4 * prob.resolution;
    let mut params: Vec<f64> = (0..m).map(|k| k as f64 * 4.0 / m as f64).collect();
    let mut values = eval(&params)?;
    loop {
        let min_distance = values.iter().map(|g| norm2(g)).fold(f64::INFINITY, f64::min);
        if !(min_distance > threshold_floor) {
            return Err(Error::BoundaryHit {
                min_distance,
                threshold: threshold_floor,
            });
        }
        let count = params.len();
        let mut split = Vec::new();
        let mut modulus: f64 = 0.0;
        let mut uncertified: f64 = 0.0;
        for k in 0..count {
            let (g0, g1) = (&values[k], &values[(k + 1) % count]);
            let jump = (g1[0] - g0[0]).hypot(g1[1] - g0[1]);
            modulus = modulus.max(jump);
            let clear = norm2(g0).min(norm2(g1)) > CERTIFICATE_FACTOR * jump;
            if !clear {
                uncertified = uncertified.max(jump);
            }
            if !clear || turn(g0, g1).abs() >= std::f64::consts::FRAC_PI_2 {
                split.push(k);
            }
        }
        if split.is_empty() {
            let total: f64 = (0..count)
                .map(|k| turn(&values[k], &values[(k + 1) % count]))
                .sum();
            let winding = total / std::f64::consts::TAU;
            let degree = winding.round();
            debug_assert!((winding - degree).abs() < 0.25);
            return Ok(DegreeCertificate {
                degree: degree as i64,
                min_distance,
                modulus,
                samples: count,
            });
        }
        let end = |k: usize| if k + 1 == count { 4.0 } else { params[k + 1] };
        let exhausted = split.iter().any(|&k| end(k) - params[k] <= MIN_PARAM_STEP);
        if exhausted || count + split.len() > MAX_SAMPLES {
            if uncertified > 0.0 {
                return Err(Error::BoundaryHit {
                    min_distance,
                    threshold: CERTIFICATE_FACTOR * uncertified,
                });
            }
            return Err(Error::RefinementLimit(MAX_SAMPLES));
        }
        let mids: Vec<f64> = split.iter().map(|&k| 0.5 * (params[k] + end(k))).collect();
        let mid_values = eval(&mids)?;
        let mut new_params = Vec::with_capacity(count + mids.len());
        let mut new_values = Vec::with_capacity(count + mids.len());
        let mut next = 0;
        for k in 0..count {
            new_params.push(params[k]);
            new_values.push(std::mem::take(&mut values[k]));
            if next < split.len() && split[next] == k {
                new_params.push(mids[next]);
                new_values.push(mid_values[next].clone());
                next += 1;
            }
        }
        params = new_params;
        values = new_values;
    }
}

/// Cut positions tried in turn when a subdivision plane passes through a root.
const CUTS: [f64; 5] = [0.5371, 0.4629, 0.6180, 0.3820, 0.5];
/// Subdivision stops once every side is below this fraction of the initial side.
const ROOT_WIDTH: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEstimate {
    pub point: Vec<f64>,
    /// `|F - h|_inf` at `point`.
    pub residual: f64,
    pub subdivisions: usize,
}

/// Locates a solution of `F(x) = h` inside a region of nonzero degree by
/// degree-guided subdivision, followed by a finite-difference Newton polish.
pub fn find_root(prob: &DegreeProblem) -> Result<RootEstimate> {
    search_root(prob, None)
}

/// As [`find_root`], searching first in small boxes centred at `hint`.
///
/// Boxes of growing size around `hint` are tried until one carries a
/// certified nonzero degree; subdivision then prefers the half containing
/// `hint`. Falls back to the whole region.
pub fn find_root_near(prob: &DegreeProblem, hint: &[f64]) -> Result<RootEstimate> {
    let n = prob.region.dim();
    if hint.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: hint.len(),
        });
    }
    for fraction in [1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0] {
        let mut lower = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        for k in 0..n {
            let (a, b) = (prob.region.lower[k], prob.region.upper[k]);
            let half = fraction * (b - a);
            lower.push((hint[k] - half).max(a));
            upper.push((hint[k] + half).min(b));
        }
        let Ok(local) = BoxDomain::new(lower, upper) else {
            continue;
        };
        let sub = prob.with_region(local);
        if let Ok(c) = degree(&sub) {
            if c.degree != 0 {
                return search_root(&sub, Some(hint));
            }
        }
    }
    search_root(prob, Some(hint))
}

fn search_root(prob: &DegreeProblem, hint: Option<&[f64]>) -> Result<RootEstimate> {
    let whole = degree(prob)?;
    if whole.degree == 0 {
        return Err(Error::InvalidParameter(
            "degree is zero; the region need not contain a root".into(),
        ));
    }
    let n = prob.region.dim();
    let widths0: Vec<f64> = (0..n)
        .map(|k| prob.region.upper[k] - prob.region.lower[k])
        .collect();
    let mut region = prob.region.clone();
    let mut subdivisions = 0;
    loop {
        let axis = (0..n)
            .max_by(|&a, &b| {
                let wa = (region.upper[a] - region.lower[a]) / widths0[a];
                let wb = (region.upper[b] - region.lower[b]) / widths0[b];
                wa.total_cmp(&wb)
            })
            .expect("nonempty region");
        let width = region.upper[axis] - region.lower[axis];
        if width <= ROOT_WIDTH * widths0[axis] {
            break;
        }
        let mut chosen = None;
        for cut in CUTS {
            let mid = region.lower[axis] + cut * width;
            let mut upper_half = region.clone();
            upper_half.lower[axis] = mid;
            let mut lower_half = region.clone();
            lower_half.upper[axis] = mid;
            let hint_below = hint.is_some_and(|x| x[axis] < mid);
            let halves = if hint_below {
                [lower_half, upper_half]
            } else {
                [upper_half, lower_half]
            };
            let mut hit = false;
            for half in halves {
                match degree(&prob.with_region(half.clone())) {
                    Ok(c) if c.degree != 0 => {
                        chosen = Some(half);
                        break;
                    }
                    Ok(_) => {}
                    Err(Error::BoundaryHit { .. }) => {
                        hit = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if chosen.is_some() || !hit {
                break;
            }
        }
        match chosen {
            Some(half) => region = half,
            None => break,
        }
        subdivisions += 1;
    }
    let point = newton_polish(prob, region.center(), &region)?;
    let residual = prob
        .shifted(&point)?
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(RootEstimate {
        point,
        residual,
        subdivisions,
    })
}

fn newton_polish(prob: &DegreeProblem, x0: Vec<f64>, cell: &BoxDomain) -> Result<Vec<f64>> {
    let n = x0.len();
    let size = |g: &[f64]| g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut x = x0;
    let mut g = prob.shifted(&x)?;
    // Newton steps may leave the final cell only by a few cell widths
    let slack: Vec<f64> = (0..n).map(|k| 4.0 * (cell.upper[k] - cell.lower[k])).collect();
    for _ in 0..30 {
        if size(&g) == 0.0 {
            break;
        }
        let mut jac = DMatrix::zeros(n, n);
        for k in 0..n {
            let step = 1e-7 * x[k].abs().max(1.0);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += step;
            xm[k] -= step;
            let (gp, gm) = (prob.shifted(&xp)?, prob.shifted(&xm)?);
            for i in 0..n {
                jac[(i, k)] = (gp[i] - gm[i]) / (2.0 * step);
            }
        }
        let Some(dx) = jac.lu().solve(&-DVector::from_column_slice(&g)) else {
            break;
        };
        let trial: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, b)| a + b).collect();
        let inside = (0..n).all(|k| {
            trial[k] >= cell.lower[k] - slack[k] && trial[k] <= cell.upper[k] + slack[k]
        });
        if !inside {
            break;
        }
        let gt = prob.shifted(&trial)?;
        if !(size(&gt) < size(&g)) {
            break;
        }
        x = trial;
        g = gt;
    }
    Ok(x)
}

/// Polynomial test maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapPreset {
    Identity,
    NegIdentity,
    /// `(x^2 - y^2, 2xy)`, i.e. `z^2`.
    ComplexSquare,
    /// `x^3 - x`.
    Cubic,
    /// `(x^2 - y^2 - 1, 2xy)`, i.e. `z^2 - 1`.
    ZSquaredMinusOne,
}

impl MapPreset {
    /// Required dimension, or `None` for maps defined in every dimension.
    pub fn dim(self) -> Option<usize> {
        match self {
            MapPreset::Identity | MapPreset::NegIdentity => None,
            MapPreset::Cubic => Some(1),
            MapPreset::ComplexSquare | MapPreset::ZSquaredMinusOne => Some(2),
        }
    }

    pub fn eval(self, x: &[f64]) -> Vec<f64> {
        match self {
            MapPreset::Identity => x.to_vec(),
            MapPreset::NegIdentity => x.iter().map(|v| -v).collect(),
            MapPreset::ComplexSquare => vec![x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]],
            MapPreset::Cubic => vec![x[0] * x[0] * x[0] - x[0]],
            MapPreset::ZSquaredMinusOne => {
                vec![x[0] * x[0] - x[1] * x[1] - 1.0, 2.0 * x[0] * x[1]]
            }
        }
    }

    pub fn check_dim(self, dim: usize) -> Result<()> {
        match self.dim() {
            Some(d) if d != dim => Err(Error::DimensionMismatch {
                expected: d,
                found: dim,
            }),
            _ => Ok(()),
        }
    }
}

impl std::str::FromStr for MapPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(MapPreset::Identity),
            "neg-identity" => Ok(MapPreset::NegIdentity),
            "complex-square" => Ok(MapPreset::ComplexSquare),
            "cubic" => Ok(MapPreset::Cubic),
            "z-squared-minus-one" => Ok(MapPreset::ZSquaredMinusOne),
            other => Err(Error::InvalidParameter(format!("unknown map preset {other:?}"))),
        }
    }
}

/// Parameters of the homotopy `H(t, v) = v + t S(T v)` at which the degree is computed.
pub const HOMOTOPY_TIMES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const MAX_DOUBLINGS: usize = 5;
/// Required agreement between the located root and the Picard solution.
pub const PICARD_AGREEMENT: f64 = 1e-6;
/// Tolerance of the inner `T` solves inside `H`.
const INNER_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomotopyStep {
    pub t: f64,
    pub degree: i64,
    pub min_distance: f64,
    pub modulus: f64,
    pub samples: usize,
    /// Root `v(t)` tracked by continuation.
    pub tracked_root: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomotopyVerdict {
    /// Half-side of the box `[-R, R]^n` on which the degree was computed.
    pub radius: f64,
    pub doublings: usize,
    pub steps: Vec<HomotopyStep>,
    pub all_degree_one: bool,
    /// Root of `H(1, .)` located by subdivision.
    pub root_v: Vec<f64>,
    pub root_u: Vec<f64>,
    pub root_residual: f64,
    /// `||T v_root - u_picard||_inf`, when the Picard solve converged.
    pub picard_distance: Option<f64>,
    pub passed: bool,
}

/// `T v` computed to high accuracy, warm-started from the linear guess.
fn invert(v: &[f64], data: &ProblemData) -> Result<GridFunction> {
    let dual = DualVector::new(v.to_vec())?;
    apply_t_from(&dual, data, INNER_TOL, &GridFunction::zeros(v.len()))
}

fn homotopy_map(data: &ProblemData, t: f64) -> impl Fn(&[f64]) -> Vec<f64> + Sync + '_ {
    move |v: &[f64]| {
        if t == 0.0 {
            return v.to_vec();
        }
        match invert(v, data).and_then(|u| apply_s(&u, data)) {
            Ok(su) => v.iter().zip(su.values()).map(|(a, b)| a + t * b).collect(),
            Err(_) => vec![f64::NAN; v.len()],
        }
    }
}

/// Checks homotopy invariance and the existence property for the reduced map
/// `v -> v + t S(T v)` on a mesh with at most two unknowns.
pub fn verify_homotopy_invariance(
    data: &ProblemData,
    cfg: &SolverConfig,
) -> std::result::Result<HomotopyVerdict, crate::solver::SolveError> {
    let n = data.len();
    if n == 0 || n > 2 {
        return Err(Error::InvalidParameter(format!(
            "homotopy verification needs a mesh with 1 or 2 unknowns, found {n}"
        ))
        .into());
    }
    let path = continuation_path(data, cfg, &HOMOTOPY_TIMES)?;
    let largest = path
        .iter()
        .flat_map(|p| p.v.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let mut radius = if largest > 0.0 { 2.0 * largest } else { 1.0 };

    for doublings in 0..=MAX_DOUBLINGS {
        let region = BoxDomain::new(vec![-radius; n], vec![radius; n])?;
        let mut steps = Vec::with_capacity(HOMOTOPY_TIMES.len());
        let mut hit = false;
        for point in &path {
            let map = homotopy_map(data, point.t);
            let prob = DegreeProblem::new(&map, region.clone(), vec![0.0; n]);
            match degree(&prob) {
                Ok(c) => steps.push(HomotopyStep {
                    t: point.t,
                    degree: c.degree,
                    min_distance: c.min_distance,
                    modulus: c.modulus,
                    samples: c.samples,
                    tracked_root: point.v.clone(),
                }),
                Err(Error::BoundaryHit { .. }) => {
                    hit = true;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        if hit {
            radius *= 2.0;
            continue;
        }
        let all_degree_one = steps.iter().all(|s| s.degree == 1);
        let map = homotopy_map(data, 1.0);
        let prob = DegreeProblem::new(&map, region, vec![0.0; n]);
        let tracked = &path.last().expect("five parameters").v;
        let root = find_root_near(&prob, tracked)?;
        let root_u = invert(&root.point, data)?;
        let picard_distance = solve_picard(data, cfg)
            .ok()
            .map(|r| root_u.sub(&r.u).sup_norm());
        let passed = all_degree_one
            && root.residual <= cfg.tol
            && picard_distance.is_none_or(|d| d <= PICARD_AGREEMENT);
        return Ok(HomotopyVerdict {
            radius,
            doublings,
            steps,
            all_degree_one,
            root_v: root.point,
            root_u: root_u.into_values(),
            root_residual: root.residual,
            picard_distance,
            passed,
        });
    }
    Err(Error::BoundaryHit {
        min_distance: 0.0,
        threshold: radius,
    }
    .into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> BoxDomain {
        BoxDomain::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap()
    }

    fn deg(preset: MapPreset, region: BoxDomain, target: Vec<f64>) -> Result<i64> {
        let f = move |x: &[f64]| preset.eval(x);
        degree(&DegreeProblem::new(&f, region, target)).map(|c| c.degree)
    }

    #[test]
    fn normalization_and_signs() {
        let line = BoxDomain::interval(-1.0, 1.0);
        assert_eq!(deg(MapPreset::Identity, line.clone(), vec![0.0]).unwrap(), 1);
        assert_eq!(deg(MapPreset::NegIdentity, line, vec![0.0]).unwrap(), -1);
        assert_eq!(deg(MapPreset::Identity, square(), vec![0.0, 0.0]).unwrap(), 1);
        assert_eq!(deg(MapPreset::NegIdentity, square(), vec![0.0, 0.0]).unwrap(), 1);
        assert_eq!(deg(MapPreset::ComplexSquare, square(), vec![0.0, 0.0]).unwrap(), 2);
    }

    #[test]
    fn equal_boundary_signs_give_zero() {
        let f = |x: &[f64]| vec![x[0] * x[0]];
        let prob = DegreeProblem::new(&f, BoxDomain::interval(-1.0, 1.0), vec![0.5]);
        assert_eq!(degree_1d(&prob).unwrap().degree, 0);
    }

    #[test]
    fn target_outside_image_gives_zero() {
        assert_eq!(deg(MapPreset::Identity, square(), vec![3.0, 0.5]).unwrap(), 0);
    }

    #[test]
    fn boundary_hits_are_refused() {
        let err = deg(MapPreset::Identity, BoxDomain::interval(0.0, 1.0), vec![0.0]).unwrap_err();
        assert!(matches!(err, Error::BoundaryHit { .. }));
        let region = BoxDomain::new(vec![0.0, -1.0], vec![1.0, 1.0]).unwrap();
        let err = deg(MapPreset::Identity, region, vec![0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::BoundaryHit { .. }));
    }

    #[test]
    fn roots_are_found() {
        let f = |x: &[f64]| MapPreset::Cubic.eval(x);
        let prob = DegreeProblem::new(&f, BoxDomain::interval(0.5, 2.0), vec![0.0]);
        let root = find_root(&prob).unwrap();
        assert!((root.point[0] - 1.0).abs() < 1e-12, "{root:?}");
        let f = |x: &[f64]| MapPreset::ZSquaredMinusOne.eval(x);
        let region = BoxDomain::new(vec![-2.0, -0.7], vec![-0.3, 0.9]).unwrap();
        let root = find_root(&DegreeProblem::new(&f, region, vec![0.0, 0.0])).unwrap();
        assert!((root.point[0] + 1.0).abs() < 1e-10 && root.point[1].abs() < 1e-10);
    }

    #[test]
    fn preset_names() {
        assert_eq!("complex-square".parse::<MapPreset>().unwrap(), MapPreset::ComplexSquare);
        assert!(MapPreset::Cubic.check_dim(2).is_err());
        assert!(MapPreset::Identity.check_dim(2).is_ok());
    }
}
