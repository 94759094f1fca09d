//! Analysis toolkit for Toeplitz operators on the Hardy space `H²` whose
//! symbols have the shape `Φ(z) = R(1/z) + φ(z)`: an antianalytic part coming
//! from a rational function `R` with all poles outside the closed unit disk,
//! plus a bounded analytic tail `φ`.
//!
//! The crate provides
//!
//! * [`symbol`] — symbol representation, evaluation, derivatives, resolvents
//!   `h_λ = 1/(Φ−λ)` and Fourier coefficients on the circle;
//! * [`conformal`] — the elementary and elliptic conformal maps used to build
//!   the example symbols (Blaschke products, rectangle ↔ disk via Jacobi `sn`,
//!   annulus-sector maps) together with ready-made example presets;
//! * [`valence`] — argument-principle preimage counts, adaptive boundary
//!   curves with self-intersection records, and grid decompositions of the
//!   plane into components of constant valence with an adjacency graph;
//! * [`conditions`] — checkers for the necessary N-valence condition and the
//!   sufficient hypercyclicity conditions (maximal valence, increasing
//!   argument, descending valence chains), a numerical spectrum estimate and
//!   an aggregated classification verdict;
//! * [`operator`] — finite Toeplitz sections with dense and FFT apply paths,
//!   the explicit eigenvector and adjoint-eigenvector formulas,
//!   eigenvector-span density evidence and orbit simulation.
//!
//! Everything is deterministic given the inputs and the seeds carried in the
//! configuration structs; all types are immutable after construction and safe
//! to share across threads.

pub mod conditions;
pub mod conformal;
pub mod elliptic;
pub mod error;
pub mod expr;
pub mod fourier;
pub mod operator;
pub mod poly;
pub mod symbol;
pub mod valence;

pub use error::{Error, Result};
pub use expr::Expr;
pub use symbol::{RationalPart, ResolventSymbol, Symbol};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Convenience constructor for [`C64`].
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
