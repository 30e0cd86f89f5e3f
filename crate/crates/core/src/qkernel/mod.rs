//! Exact scalar and polynomial arithmetic plus an exact linear solver.

mod linsolve;
mod poly;
mod valuation;

pub use linsolve::{solve_linear, LinearSolveOutcome, Matrix};
pub use poly::{int, rat, LinearPower, Polynomial, Rational};
pub use valuation::{is_prime, vp, Valuation};

pub use crate::derivimage::ImageShape;
