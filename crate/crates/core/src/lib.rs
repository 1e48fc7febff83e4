//! Fuzzy implication laboratory: connectives on the unit interval, the five
//! classical implication construction families, the `▽` composition, and
//! residual checks for the iterative functional equation
//! `I(I(y,x), I(x,y)) = I(x,y)` — numerically on sampled grids and exactly on
//! small finite chains.
//!
//! Continuous checks are generic over the scalar type via [`Real`] (`f32` or
//! `f64`); the finite-chain module works on integer chain indices and is
//! exact by construction. All public types default to `f64`.

use std::fmt;

use num_traits::{Float, FromPrimitive, NumCast};

pub mod algebra;
pub mod connectives;
pub mod constructors;
pub mod error;
pub mod expr;
pub mod finite_lattice;
pub mod grid;
pub mod implications;
pub mod numeric;
pub mod report;

pub use error::FieqError;
pub use report::{CheckReport, Verdict, Witness};

/// Scalar type for all continuous checks: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into the working scalar type.
pub(crate) fn real<F: Real>(v: f64) -> F {
    <F as NumCast>::from(v).expect("constant not representable in scalar type")
}

/// Default budgets shared by the checks and the CLI.
pub mod defaults {
    /// Grid resolution for two-variable sweeps.
    pub const GRID_2VAR: usize = 128;
    /// Grid resolution for three-variable sweeps (associativity, exchange).
    pub const GRID_3VAR: usize = 32;
    /// Residual tolerance for closed-form evaluations.
    pub const TOL_CLOSED_FORM: f64 = 1e-9;
    /// Residual tolerance once a bisection-backed evaluation is involved.
    pub const TOL_BISECTION: f64 = 1e-6;
    /// Accuracy of the supremum bisection inside residual implications.
    pub const SUP_TOL: f64 = 1e-10;
    /// Accuracy of bisection inversion of monotone generators.
    pub const INVERSE_TOL: f64 = 1e-12;
    /// Coarse scan resolution for counterexample search (17×17 points).
    pub const COARSE_N: usize = 16;
    /// Local mesh-halving rounds around the incumbent counterexample.
    pub const REFINE_DEPTH: usize = 5;
}

// Concrete aliases for the common double-precision instantiation.
pub type Implication64 = implications::Implication<f64>;
pub type TNorm64 = connectives::TNorm<f64>;
pub type TConorm64 = connectives::TConorm<f64>;
pub type Negation64 = connectives::Negation<f64>;
pub type CheckReport64 = report::CheckReport<f64>;
pub type Witness64 = report::Witness<f64>;
