//! Higher-order von Mangoldt statistics over F_q[T].
//!
//! The crate covers exact arithmetic in F_q[T] ([`fq`]), the arithmetic
//! functions μ, Λ_j and δ_m ([`arith`]), short-interval sums
//! ([`intervals`]), Dirichlet characters modulo T^m ([`characters`]),
//! their L-polynomials and Frobenius spectra ([`lfunc`]), unitary-group
//! statistics ([`rmt`]), and the covariance experiments built from them
//! ([`experiments`]).

pub mod arith;
pub mod characters;
pub mod config;
pub mod error;
pub mod experiments;
pub mod fq;
pub mod intervals;
pub mod lfunc;
pub mod rmt;

pub use error::{Error, Result};

/// Exact rational used for averages and covariances.
pub type Rational = num_rational::Ratio<i128>;
