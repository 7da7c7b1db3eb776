//! Curvature-preconditioned descent with Armijo backtracking.
//!
//! Used for every variational solve in the crate: inverting `L` and
//! minimizing the energy of the full problem. Each step tries two search
//! directions, both solving `H d = -g` with a clamped model Hessian `H`:
//!
//! * Newton: the exact second derivative, dropping its indefinite part if
//!   needed and falling back to diagonally scaled steepest descent.
//! * Majorizer: sub-quadratic terms `|t|^e` with `e < 2` use the curvature of
//!   their quadratic majorizer, `|t|^(e-2)` instead of `(e-1)|t|^(e-2)`. Newton
//!   on such a term overshoots a minimizer sitting at `t = 0` (for `e <= 1.5`
//!   it flips sign without converging); the majorizer step does not.
//!
//! The better of the two accepted steps is kept. Every accepted step either
//! satisfies the Armijo condition or, once the objective no longer resolves
//! the decrease, leaves it unchanged up to rounding while shrinking the
//! gradient.

use nalgebra::{DMatrix, DVector};

use crate::modular::sup_norm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Model {
    Newton,
    /// Newton without indefinite contributions.
    Convex,
    /// Convex, with majorizer curvature for sub-quadratic terms.
    Majorizer,
}

impl Model {
    pub fn convex_only(self) -> bool {
        self != Model::Newton
    }

    /// Curvature factor of `|t|^e / e` relative to `|t|^(e-2)`.
    pub fn factor(self, e: f64) -> f64 {
        if self == Model::Majorizer && e < 2.0 {
            1.0
        } else {
            e - 1.0
        }
    }
}

pub(crate) trait Objective {
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
    fn curvature(&self, x: &[f64], model: Model) -> DMatrix<f64>;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Settings {
    pub max_iter: usize,
    /// Target for the sup norm of the gradient.
    pub tol: f64,
    /// When no further progress is possible, also accept if both search
    /// directions are below `step_tol * max(1, ||x||_inf)`: stationary to
    /// working precision.
    pub step_tol: Option<f64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `(gradient sup norm, objective)` after every accepted step, starting point included.
    pub history: Vec<(f64, f64)>,
}

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 80;
const STALL_LIMIT: usize = 40;
/// Rounding allowance, in units of `eps |f|`, for gradient-reducing steps.
const NOISE_FACTOR: f64 = 1024.0;

struct Point {
    x: Vec<f64>,
    f: f64,
    g: Vec<f64>,
    r: f64,
}

impl Point {
    fn at(obj: &impl Objective, x: Vec<f64>, f: f64) -> Self {
        let g = obj.gradient(&x);
        let r = sup_norm(&g);
        Self { x, f, g, r }
    }
}

fn noise(f: f64) -> f64 {
    NOISE_FACTOR * f64::EPSILON * (f.abs() + 1.0)
}

pub(crate) fn minimize(obj: &impl Objective, x0: Vec<f64>, settings: Settings) -> Outcome {
    let f0 = obj.value(&x0);
    let mut cur = Point::at(obj, x0, f0);
    let mut history = vec![(cur.r, cur.f)];
    let mut best_r = cur.r;
    let mut stalled = 0;
    let mut iterations = 0;
    let mut stuck = false;

    while cur.r > settings.tol && iterations < settings.max_iter {
        iterations += 1;
        let newton = direction(obj, &cur, &[Model::Newton, Model::Convex]);
        let major = direction(obj, &cur, &[Model::Majorizer]);
        let mut next = line_search(obj, &cur, &newton);
        if major != newton {
            if let Some(b) = line_search(obj, &cur, &major) {
                next = Some(match next {
                    Some(a) => better(a, b),
                    None => b,
                });
            }
        }
        let Some(next) = next else {
            stuck = true;
            break;
        };
        cur = next;
        history.push((cur.r, cur.f));
        if cur.r < 0.999 * best_r {
            best_r = cur.r;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled > STALL_LIMIT {
                stuck = true;
                break;
            }
        }
    }
    let settled = stuck
        && settings.step_tol.is_some_and(|step_tol| {
            let newton = direction(obj, &cur, &[Model::Newton, Model::Convex]);
            let major = direction(obj, &cur, &[Model::Majorizer]);
            sup_norm(&newton).max(sup_norm(&major)) <= step_tol * sup_norm(&cur.x).max(1.0)
        });
    Outcome {
        converged: settled || cur.r <= settings.tol,
        residual: cur.r,
        x: cur.x,
        iterations,
        history,
    }
}

/// Lower objective wins; within rounding, the smaller gradient.
fn better(a: Point, b: Point) -> Point {
    let tie = noise(a.f.abs().max(b.f.abs()));
    let b_wins = if (a.f - b.f).abs() > tie { b.f < a.f } else { b.r < a.r };
    if b_wins {
        b
    } else {
        a
    }
}

fn line_search(obj: &impl Objective, cur: &Point, d: &[f64]) -> Option<Point> {
    let slope: f64 = cur.g.iter().zip(d).map(|(a, b)| a * b).sum();
    let noise = noise(cur.f);
    let mut alpha = 1.0;
    for _ in 0..MAX_BACKTRACKS {
        let trial: Vec<f64> = cur.x.iter().zip(d).map(|(xi, di)| xi + alpha * di).collect();
        if trial == cur.x {
            return None;
        }
        let ft = obj.value(&trial);
        if ft.is_finite() {
            if ft <= cur.f + ARMIJO * alpha * slope {
                return Some(Point::at(obj, trial, ft));
            }
            // Near the minimizer the decrease drowns in rounding; the gradient
            // is still resolved, so accept steps that shrink it.
            if ft <= cur.f + noise {
                let p = Point::at(obj, trial, ft);
                if p.r <= (1.0 - ARMIJO * alpha) * cur.r {
                    return Some(p);
                }
            }
        }
        alpha *= 0.5;
    }
    None
}

fn direction(obj: &impl Objective, cur: &Point, models: &[Model]) -> Vec<f64> {
    let rhs = DVector::from_column_slice(&cur.g);
    let mut last = None;
    for &model in models {
        let h = obj.curvature(&cur.x, model);
        if let Some(chol) = h.clone().cholesky() {
            let d = -chol.solve(&rhs);
            let slope = d.dot(&rhs);
            if slope < 0.0 && d.iter().all(|v| v.is_finite()) {
                return d.as_slice().to_vec();
            }
        }
        last = Some(h);
    }
    // scaled steepest descent
    let h = last.expect("at least one model");
    cur.g
        .iter()
        .enumerate()
        .map(|(i, gi)| {
            let diag = h[(i, i)];
            if diag.is_finite() && diag > 0.0 {
                -gi / diag
            } else {
                -gi
            }
        })
        .collect()
}
