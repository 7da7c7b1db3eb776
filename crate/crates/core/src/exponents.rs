//! Variable exponents: the symmetric two-point exponent `p(x, y)`, its
//! diagonal trace `q(x) = p(x, x)`, and the source exponent `r(x)`.
//!
//! A field is validated by a full scan on construction:
//!
//! * `1 < p- <= p(i, j) <= p+ < inf` over all node pairs,
//! * `p(i, j) == p(j, i)`,
//! * `1 < r- <= r(i) <= r+ < p-`.
//!
//! Fields are immutable; there is no way to obtain an unvalidated one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{distance, Mesh};

/// Closed-form two-point exponents available from configuration files.
///
/// `mean(x, y)` below is the average of all coordinates of `x` and `y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "lowercase")]
pub enum PairExponent {
    /// `value`
    Constant { value: f64 },
    /// `base + slope * mean(x, y)`
    Affine { base: f64, slope: f64 },
    /// `base + slope * |x - y|`
    Distance { base: f64, slope: f64 },
    /// `base + amplitude * (|x - c|^2 + |y - c|^2) / 2`, `c` defaults to the origin
    Radial {
        base: f64,
        amplitude: f64,
        #[serde(default)]
        center: Vec<f64>,
    },
    /// `base + amplitude * sin(frequency * mean(x, y))`
    Oscillating {
        base: f64,
        amplitude: f64,
        frequency: f64,
    },
}

/// Closed-form one-point exponents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "lowercase")]
pub enum PointExponent {
    Constant { value: f64 },
    /// `base + slope * mean(x)`
    Affine { base: f64, slope: f64 },
    /// `base + amplitude * |x - c|^2`
    Radial {
        base: f64,
        amplitude: f64,
        #[serde(default)]
        center: Vec<f64>,
    },
    /// `base + amplitude * sin(frequency * mean(x))`
    Oscillating {
        base: f64,
        amplitude: f64,
        frequency: f64,
    },
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn squared_offset(x: &[f64], center: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(k, xk)| {
            let c = center.get(k).copied().unwrap_or(0.0);
            (xk - c) * (xk - c)
        })
        .sum()
}

impl PairExponent {
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            PairExponent::Constant { value } => *value,
            PairExponent::Affine { base, slope } => base + slope * 0.5 * (mean(x) + mean(y)),
            PairExponent::Distance { base, slope } => base + slope * distance(x, y),
            PairExponent::Radial {
                base,
                amplitude,
                center,
            } => base + amplitude * 0.5 * (squared_offset(x, center) + squared_offset(y, center)),
            PairExponent::Oscillating {
                base,
                amplitude,
                frequency,
            } => base + amplitude * (frequency * 0.5 * (mean(x) + mean(y))).sin(),
        }
    }
}

impl PointExponent {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            PointExponent::Constant { value } => *value,
            PointExponent::Affine { base, slope } => base + slope * mean(x),
            PointExponent::Radial {
                base,
                amplitude,
                center,
            } => base + amplitude * squared_offset(x, center),
            PointExponent::Oscillating {
                base,
                amplitude,
                frequency,
            } => base + amplitude * (frequency * mean(x)).sin(),
        }
    }
}

/// Validated exponent data sampled on a mesh.
#[derive(Clone, Debug)]
pub struct ExponentField {
    n: usize,
    p: Vec<f64>,
    q: Vec<f64>,
    r: Vec<f64>,
    p_minus: f64,
    p_plus: f64,
    q_minus: f64,
    q_plus: f64,
    r_minus: f64,
    r_plus: f64,
}

impl ExponentField {
    /// Samples `p` on all node pairs and `r` on all nodes, symmetrizes `p`
    /// by averaging, and validates the bounds.
    pub fn build<P, R>(mesh: &Mesh, p: P, r: R) -> Result<Self>
    where
        P: Fn(&[f64], &[f64]) -> f64,
        R: Fn(&[f64]) -> f64,
    {
        let n = mesh.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = p(mesh.node(i), mesh.node(j));
            }
        }
        let r_values = (0..n).map(|i| r(mesh.node(i))).collect();
        Self::from_values(n, values, r_values)
    }

    pub fn from_presets(mesh: &Mesh, p: &PairExponent, r: &PointExponent) -> Result<Self> {
        Self::build(mesh, |x, y| p.eval(x, y), |x| r.eval(x))
    }

    /// Row-major `n x n` pair exponents and per-node `r`.
    pub fn from_values(n: usize, mut p: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMesh("exponent field over zero nodes".into()));
        }
        if p.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: p.len(),
            });
        }
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (p[i * n + j] + p[j * n + i]);
                p[i * n + j] = avg;
                p[j * n + i] = avg;
            }
        }
        let q: Vec<f64> = (0..n).map(|i| p[i * n + i]).collect();
        let (p_minus, p_plus) = extrema(&p);
        let (q_minus, q_plus) = extrema(&q);
        let (r_minus, r_plus) = extrema(&r);
        let field = Self {
            n,
            p,
            q,
            r,
            p_minus,
            p_plus,
            q_minus,
            q_plus,
            r_minus,
            r_plus,
        };
        field.validate()?;
        Ok(field)
    }

    /// Full scan of the standing exponent assumptions.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let v = self.p[i * n + j];
                if !(v.is_finite() && v > 1.0) {
                    return Err(Error::ExponentOutOfRange {
                        condition: "1 < p- <= p(x,y) <= p+ < inf",
                        location: format!("pair ({i}, {j})"),
                        value: v,
                    });
                }
                if v != self.p[j * n + i] {
                    return Err(Error::ExponentOutOfRange {
                        condition: "p(x,y) = p(y,x)",
                        location: format!("pair ({i}, {j})"),
                        value: v,
                    });
                }
            }
            if self.q[i] != self.p[i * n + i] {
                return Err(Error::ExponentOutOfRange {
                    condition: "q(x) = p(x,x)",
                    location: format!("node {i}"),
                    value: self.q[i],
                });
            }
        }
        for (i, &v) in self.r.iter().enumerate() {
            if !(v.is_finite() && v > 1.0) {
                return Err(Error::ExponentOutOfRange {
                    condition: "1 < r- <= r(x)",
                    location: format!("node {i}"),
                    value: v,
                });
            }
            if v >= self.p_minus {
                return Err(Error::ExponentOutOfRange {
                    condition: "r(x) <= r+ < p-",
                    location: format!("node {i} (p- = {})", self.p_minus),
                    value: v,
                });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn p(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.n + j]
    }

    pub fn p_row(&self, i: usize) -> &[f64] {
        &self.p[i * self.n..(i + 1) * self.n]
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn q_minus(&self) -> f64 {
        self.q_minus
    }

    pub fn q_plus(&self) -> f64 {
        self.q_plus
    }

    pub fn r_minus(&self) -> f64 {
        self.r_minus
    }

    pub fn r_plus(&self) -> f64 {
        self.r_plus
    }

    /// Largest `|p(i,j) - p(j,i)|`; zero for every constructed field.
    pub fn asymmetry(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max((self.p[i * n + j] - self.p[j * n + i]).abs());
            }
        }
        worst
    }

    pub fn conjugate(&self) -> ConjugateExponent {
        conjugate(self)
    }
}

fn extrema(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Pointwise conjugate `q' = q / (q - 1)` of the diagonal trace.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateExponent {
    values: Vec<f64>,
}

impl ConjugateExponent {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn minus(&self) -> f64 {
        extrema(&self.values).0
    }

    pub fn plus(&self) -> f64 {
        extrema(&self.values).1
    }
}

pub fn conjugate(field: &ExponentField) -> ConjugateExponent {
    ConjugateExponent {
        values: field.q.iter().map(|&q| q / (q - 1.0)).collect(),
    }
}
