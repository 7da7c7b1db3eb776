//! Variable-exponent function spaces and solvers for the nonlocal Dirichlet
//! problem driven by the fractional p(x)-Laplacian,
//!
//! ```text
//! (-Delta_p(x))^s u + |u|^(q(x)-2) u = lambda |u|^(r(x)-2) u   in Omega,
//! u = 0                                                          outside Omega,
//! ```
//!
//! discretized on uniform cell-centred grids over boxes in one and two
//! dimensions.
//!
//! * [`exponents`]: validated exponent fields `p(x,y)`, `q(x)`, `r(x)`.
//! * [`mesh`]: grids and the singular pair kernel.
//! * [`modular`]: modulars, Luxemburg norms and the norm-modular inequalities.
//! * [`operators`]: `L`, `S`, the energy, and `T = L^-1`.
//! * [`solver`]: energy minimization, Picard iteration on `v + S(T v) = 0`,
//!   homotopy continuation, and the a priori bound.
//! * [`degree`]: Brouwer degree in one and two dimensions.

pub mod degree;
mod descent;
pub mod error;
pub mod exponents;
pub mod mesh;
pub mod modular;
pub mod operators;
pub mod solver;

pub use error::{Error, Result};
pub use exponents::{ConjugateExponent, ExponentField, PairExponent, PointExponent};
pub use mesh::{BoxDomain, ExteriorCoupling, KernelTable, Mesh};
pub use modular::{GridFunction, NormReport};
pub use operators::{DualVector, ProblemData};
pub use solver::{SolveError, SolveReport, SolverConfig, Strategy};

/// Version of this crate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
