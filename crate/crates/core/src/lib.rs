//! Jacob's ladders built from the Riemann-Siegel Z function, and numerical
//! checks of the Poisson-Lobachevsky integral identities they satisfy.
//!
//! The crate is organised bottom-up:
//!
//! * [`special_fn`] evaluates θ(t), Z(t) and |ζ(½+it)|².
//! * [`primes`] and [`zeros`] supply π(t), consecutive primes and
//!   consecutive critical-line zeros.
//! * [`kernel`] is the log-trigonometric kernel ln(1 + a² − 2a cos τ).
//! * [`quadrature`] is adaptive Gauss-Legendre integration.
//! * [`ladder`] integrates the ladder φ₁ with φ₁′ = Z̃² and inverts it.
//! * [`verification`] assembles windowed integrals into pass/fail records.
//! * [`cli`] is the command-line front end.

// negated comparisons are how NaN is rejected alongside out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod kernel;
pub mod ladder;
pub mod primes;
pub mod quadrature;
pub mod special_fn;
pub mod verification;
pub mod zeros;

pub use error::{Error, Result};

/// Largest height supported by the evaluators and the ladder builder.
pub const T_MAX: f64 = 1.0e7;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
