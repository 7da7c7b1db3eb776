//! Uniform cell-centred grids on boxes in R^1 and R^2, and the pairwise
//! singular kernel of the nonlocal operator.
//!
//! The kernel has two parts. The regional part couples every ordered pair of
//! distinct nodes with weight `w_i w_j / |x_i - x_j|^(N + s p_ij)`. The
//! exterior part carries the nonlocal Dirichlet condition `u = 0` outside the
//! box: node `i` interacts with the whole complement through
//! `kappa_i = w_i * integral_{R^N \ box} |x_i - y|^(-N - s q_i) dy`, evaluated
//! as `(w_i / sigma) * integral over directions of rho(theta)^(-sigma)`
//! where `rho` is the exit distance from `x_i` and `sigma = s q_i`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::ExponentField;

/// Axis-aligned box `prod_k (lower_k, upper_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let domain = Self { lower, upper };
        domain.validate()?;
        Ok(domain)
    }

    /// `(0, 1)^dim`.
    pub fn unit(dim: usize) -> Self {
        Self {
            lower: vec![0.0; dim],
            upper: vec![1.0; dim],
        }
    }

    /// `(0, length)` in one dimension.
    pub fn interval(lower: f64, upper: f64) -> Self {
        Self {
            lower: vec![lower],
            upper: vec![upper],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| b - a)
            .product()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.lower.len();
        if dim != self.upper.len() {
            return Err(Error::InvalidDomain(format!(
                "lower has {} coordinates, upper has {}",
                dim,
                self.upper.len()
            )));
        }
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidDomain(format!(
                "dimension {dim} unsupported (only 1 and 2)"
            )));
        }
        for k in 0..dim {
            let (a, b) = (self.lower[k], self.upper[k]);
            if !a.is_finite() || !b.is_finite() || b <= a {
                return Err(Error::InvalidDomain(format!(
                    "axis {k}: extent ({a}, {b}) has no positive length"
                )));
            }
        }
        Ok(())
    }

    /// Distance from an interior point to the boundary along a unit direction.
    fn exit_distance(&self, x: &[f64], dir: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        for k in 0..self.dim() {
            let t = if dir[k] > 0.0 {
                (self.upper[k] - x[k]) / dir[k]
            } else if dir[k] < 0.0 {
                (self.lower[k] - x[k]) / dir[k]
            } else {
                continue;
            };
            best = best.min(t);
        }
        best
    }
}

/// Cell-centred nodes with equal quadrature weights.
#[derive(Clone, Debug)]
pub struct Mesh {
    domain: BoxDomain,
    counts: Vec<usize>,
    spacing: Vec<f64>,
    nodes: Vec<f64>,
    weight: f64,
    weights: Vec<f64>,
}

impl Mesh {
    /// Uniform grid with `ceil(L_k / h)` cells along axis `k`.
    ///
    /// The actual spacing is `L_k / n_k <= h`, so the cells tile the box
    /// exactly and the weights sum to its volume.
    pub fn build(domain: &BoxDomain, h: f64) -> Result<Self> {
        domain.validate()?;
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidParameter(format!("mesh size h = {h} must be positive")));
        }
        let dim = domain.dim();
        let mut counts = Vec::with_capacity(dim);
        let mut spacing = Vec::with_capacity(dim);
        for k in 0..dim {
            let length = domain.upper[k] - domain.lower[k];
            // tolerate L/h landing a few ulps above an integer
            let cells = (length / h - 1e-9).ceil().max(0.0);
            if cells < 1.0 || !cells.is_finite() {
                return Err(Error::EmptyMesh(format!(
                    "axis {k} of length {length} holds no cell for h = {h}"
                )));
            }
            if cells > 1e6 {
                return Err(Error::InvalidParameter(format!(
                    "axis {k} would need {cells} cells"
                )));
            }
            let cells = cells as usize;
            counts.push(cells);
            spacing.push(length / cells as f64);
        }
        let n: usize = counts.iter().product();
        let mut nodes = Vec::with_capacity(n * dim);
        for index in 0..n {
            let mut rest = index;
            for k in 0..dim {
                let ik = rest % counts[k];
                rest /= counts[k];
                nodes.push(domain.lower[k] + (ik as f64 + 0.5) * spacing[k]);
            }
        }
        let weight: f64 = spacing.iter().product();
        Ok(Self {
            domain: domain.clone(),
            counts,
            spacing,
            nodes,
            weight,
            weights: vec![weight; n],
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Largest cell width.
    pub fn h(&self) -> f64 {
        self.spacing.iter().cloned().fold(0.0, f64::max)
    }

    pub fn node(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.nodes[i * d..(i + 1) * d]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn cell_volume(&self) -> f64 {
        self.weight
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        distance(self.node(i), self.node(j))
    }

    /// Distance from node `i` to the boundary of the box.
    pub fn boundary_distance(&self, i: usize) -> f64 {
        let x = self.node(i);
        (0..self.dim())
            .map(|k| (x[k] - self.domain.lower[k]).min(self.domain.upper[k] - x[k]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Index of the node obtained by reflecting node `i` through the box centre.
    pub fn mirror_index(&self, i: usize) -> usize {
        let mut rest = i;
        let mut stride = 1;
        let mut mirrored = 0;
        for &c in &self.counts {
            let ik = rest % c;
            rest /= c;
            mirrored += (c - 1 - ik) * stride;
            stride *= c;
        }
        mirrored
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// How the nodes interact with the complement of the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExteriorCoupling {
    /// Only pairs inside the box; constants then lie in the kernel of `L`.
    Regional,
    /// Regional pairs plus the zero exterior, which makes `L` injective.
    Dirichlet,
}

/// Pairwise singular weights `K(i, j)` plus exterior weights `kappa_i`.
#[derive(Clone, Debug)]
pub struct KernelTable {
    n: usize,
    s: f64,
    coupling: ExteriorCoupling,
    pair: Vec<f64>,
    exterior: Vec<f64>,
}

impl KernelTable {
    /// Kernel with the Dirichlet exterior coupling.
    pub fn build(mesh: &Mesh, s: f64, field: &ExponentField) -> Result<Self> {
        Self::build_with(mesh, s, field, ExteriorCoupling::Dirichlet)
    }

    pub fn build_with(
        mesh: &Mesh,
        s: f64,
        field: &ExponentField,
        coupling: ExteriorCoupling,
    ) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidOrder(s));
        }
        let n = mesh.len();
        if field.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: field.len(),
            });
        }
        let dim = mesh.dim() as f64;
        let w = mesh.weights();
        // upper triangle row by row, mirrored afterwards so K(i,j) == K(j,i) bitwise
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (i + 1..n)
                    .map(|j| {
                        let d = mesh.distance(i, j);
                        w[i] * w[j] / d.powf(dim + s * field.p(i, j))
                    })
                    .collect()
            })
            .collect();
        let mut pair = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            for (offset, &k) in row.iter().enumerate() {
                let j = i + 1 + offset;
                pair[i * n + j] = k;
                pair[j * n + i] = k;
            }
        }
        let exterior = match coupling {
            ExteriorCoupling::Regional => vec![0.0; n],
            ExteriorCoupling::Dirichlet => (0..n)
                .into_par_iter()
                .map(|i| {
                    let sigma = s * field.q()[i];
                    w[i] * exterior_integral(mesh.domain(), mesh.node(i), sigma)
                })
                .collect(),
        };
        Ok(Self {
            n,
            s,
            coupling,
            pair,
            exterior,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn order(&self) -> f64 {
        self.s
    }

    pub fn coupling(&self) -> ExteriorCoupling {
        self.coupling
    }

    /// `K(i, j)`; the diagonal is excluded and reads as zero.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pair[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.pair[i * self.n..(i + 1) * self.n]
    }

    /// Exterior weights `kappa_i`; each appears twice in the modular (both orderings).
    pub fn exterior(&self) -> &[f64] {
        &self.exterior
    }
}

/// `integral_{R^N \ box} |x - y|^(-N - sigma) dy` for `x` inside the box.
pub(crate) fn exterior_integral(domain: &BoxDomain, x: &[f64], sigma: f64) -> f64 {
    match domain.dim() {
        1 => {
            let left = x[0] - domain.lower[0];
            let right = domain.upper[0] - x[0];
            (left.powf(-sigma) + right.powf(-sigma)) / sigma
        }
        _ => {
            // angular integral of rho^-sigma, split at the corner directions so
            // each arc sees a single smooth branch of the exit distance
            let corners = [
                (domain.upper[0], domain.upper[1]),
                (domain.lower[0], domain.upper[1]),
                (domain.lower[0], domain.lower[1]),
                (domain.upper[0], domain.lower[1]),
            ];
            let mut angles: Vec<f64> = corners
                .iter()
                .map(|&(cx, cy)| {
                    let a = (cy - x[1]).atan2(cx - x[0]);
                    if a < 0.0 {
                        a + std::f64::consts::TAU
                    } else {
                        a
                    }
                })
                .collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let integrand = |theta: f64| {
                let dir = [theta.cos(), theta.sin()];
                domain.exit_distance(x, &dir).powf(-sigma)
            };
            let mut total = 0.0;
            for k in 0..4 {
                let a = angles[k];
                let b = if k == 3 {
                    angles[0] + std::f64::consts::TAU
                } else {
                    angles[k + 1]
                };
                total += gauss_legendre(&integrand, a, b, 8);
            }
            total / sigma
        }
    }
}

/// Composite 8-point Gauss-Legendre rule over `panels` equal panels.
fn gauss_legendre(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const NODES: [f64; 4] = [
        0.183_434_642_495_649_8,
        0.525_532_409_916_329,
        0.796_666_477_413_626_7,
        0.960_289_856_497_536_3,
    ];
    const WEIGHTS: [f64; 4] = [
        0.362_683_783_378_362,
        0.313_706_645_877_887_3,
        0.222_381_034_453_374_5,
        0.101_228_536_290_376_3,
    ];
    let width = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let half = 0.5 * width;
        for (x, w) in NODES.iter().zip(&WEIGHTS) {
            sum += w * (f(mid - half * x) + f(mid + half * x)) * half;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::{ExponentField, PairExponent, PointExponent};

    fn constant_field(mesh: &Mesh, p: f64, r: f64) -> ExponentField {
        ExponentField::from_presets(
            mesh,
            &PairExponent::Constant { value: p },
            &PointExponent::Constant { value: r },
        )
        .unwrap()
    }

    #[test]
    fn unit_interval_quarter_spacing() {
        let mesh = Mesh::build(&BoxDomain::unit(1), 0.25).unwrap();
        assert_eq!(mesh.len(), 4);
        let xs: Vec<f64> = (0..4).map(|i| mesh.node(i)[0]).collect();
        assert_eq!(xs, vec![0.125, 0.375, 0.625, 0.875]);
        assert!(mesh.weights().iter().all(|&w| w == 0.25));
    }

    #[test]
    fn unit_square_half_spacing() {
        let mesh = Mesh::build(&BoxDomain::unit(2), 0.5).unwrap();
        assert_eq!(mesh.len(), 4);
        assert!(mesh.weights().iter().all(|&w| w == 0.25));
        assert_eq!(mesh.node(1), &[0.75, 0.25]);
        assert_eq!(mesh.node(2), &[0.25, 0.75]);
    }

    #[test]
    fn oversized_spacing_gives_single_node() {
        let mesh = Mesh::build(&BoxDomain::unit(1), 2.0).unwrap();
        assert_eq!(mesh.len(), 1);
        assert_eq!(mesh.node(0), &[0.5]);
        assert_eq!(mesh.weights(), &[1.0]);
    }

    #[test]
    fn weights_tile_the_box() {
        for &h in &[0.3, 0.1, 0.07, 0.013] {
            let domain = BoxDomain::new(vec![0.0, -1.0], vec![2.0, 0.5]).unwrap();
            let mesh = Mesh::build(&domain, h).unwrap();
            let total: f64 = mesh.weights().iter().sum();
            assert!((total - domain.volume()).abs() <= 1e-12 * domain.volume());
            for i in 0..mesh.len() {
                assert!(mesh.boundary_distance(i) > 0.0);
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            BoxDomain::new(vec![0.0], vec![0.0]),
            Err(Error::InvalidDomain(_))
        ));
        assert!(matches!(
            Mesh::build(&BoxDomain::unit(1), 0.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            BoxDomain::new(vec![0.0; 3], vec![1.0; 3]),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn mirror_is_an_involution() {
        let mesh = Mesh::build(&BoxDomain::unit(2), 0.2).unwrap();
        let c = mesh.domain().center();
        for i in 0..mesh.len() {
            let m = mesh.mirror_index(i);
            assert_eq!(mesh.mirror_index(m), i);
            for k in 0..2 {
                assert!((mesh.node(i)[k] + mesh.node(m)[k] - 2.0 * c[k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn two_node_kernel_entry() {
        let mesh = Mesh::build(&BoxDomain::unit(1), 0.5).unwrap();
        let field = constant_field(&mesh, 2.0, 1.5);
        let kernel =
            KernelTable::build_with(&mesh, 0.5, &field, ExteriorCoupling::Regional).unwrap();
        // 0.5 * 0.5 / 0.5^(1 + 0.5 * 2)
        assert!((kernel.get(0, 1) - 1.0).abs() < 1e-15);
        assert_eq!(kernel.get(0, 1), kernel.get(1, 0));
        assert_eq!(kernel.get(0, 0), 0.0);
        assert_eq!(kernel.exterior(), &[0.0, 0.0]);
    }

    #[test]
    fn order_outside_unit_interval_is_rejected() {
        let mesh = Mesh::build(&BoxDomain::unit(1), 0.5).unwrap();
        let field = constant_field(&mesh, 2.0, 1.5);
        for s in [1.2, 0.0, 1.0, -0.3, f64::NAN] {
            assert!(matches!(
                KernelTable::build(&mesh, s, &field),
                Err(Error::InvalidOrder(_))
            ));
        }
    }

    #[test]
    fn kernel_decreases_with_distance_for_constant_exponent() {
        let mesh = Mesh::build(&BoxDomain::unit(1), 0.05).unwrap();
        let field = constant_field(&mesh, 2.5, 1.5);
        let kernel = KernelTable::build(&mesh, 0.3, &field).unwrap();
        for j in 2..mesh.len() {
            assert!(kernel.get(0, j) < kernel.get(0, j - 1));
        }
    }

    #[test]
    fn exterior_integral_1d_closed_form() {
        let domain = BoxDomain::unit(1);
        let sigma = 0.8;
        let got = exterior_integral(&domain, &[0.3], sigma);
        let want = (0.3f64.powf(-sigma) + 0.7f64.powf(-sigma)) / sigma;
        assert!((got - want).abs() < 1e-13 * want);
    }

    #[test]
    fn exterior_integral_2d_disc_bound() {
        // the box centre sees the exterior of the inscribed disc (radius 1/2)
        // from outside and of the circumscribed disc from inside
        let domain = BoxDomain::unit(2);
        let sigma = 0.7;
        let got = exterior_integral(&domain, &[0.5, 0.5], sigma);
        let tau = std::f64::consts::TAU;
        let outer = tau * 0.5f64.powf(-sigma) / sigma;
        let inner = tau * (0.5f64 * 2f64.sqrt()).powf(-sigma) / sigma;
        assert!(got < outer && got > inner);
        // same integral by brute force over directions
        let m = 200_000;
        let brute: f64 = (0..m)
            .map(|k| {
                let th = (k as f64 + 0.5) * tau / m as f64;
                domain
                    .exit_distance(&[0.5, 0.5], &[th.cos(), th.sin()])
                    .powf(-sigma)
            })
            .sum::<f64>()
            * tau
            / m as f64
            / sigma;
        assert!((got - brute).abs() < 1e-8 * brute);
    }
}
