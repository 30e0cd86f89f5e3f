//! Exact computations with derivations and E-derivations of the univariate
//! polynomial algebra over the rationals.
//!
//! The crate is `no_std` and only needs `alloc`. Every scalar is an
//! arbitrary-precision reduced fraction ([`Rational`]) and every polynomial is
//! a dense coefficient vector ([`Polynomial`]).
//!
//! Layout:
//! - [`qkernel`]: rational/polynomial arithmetic, exact linear solving, p-adic valuations.
//! - [`bernoulli`]: Bernoulli numbers and polynomials, the `D_n` family.
//! - [`derivimage`]: images of ideals under `a(x)·d/dx`.
//! - [`ederiv`]: images under `I - φ` for an arbitrary substitution `x ↦ w(x)`.
//! - [`translation`]: the locally nilpotent case `x ↦ x + c`.
//! - [`mathieu`]: homogeneous Mathieu subspaces and truncated radical scans.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bernoulli;
pub mod derivimage;
pub mod ederiv;
mod error;
pub mod mathieu;
pub mod qkernel;
pub mod translation;

pub use error::{Error, Result};
pub use qkernel::{int, rat, ImageShape, Polynomial, Rational};
