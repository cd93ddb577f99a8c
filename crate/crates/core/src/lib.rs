//! Traceless SU(2) character varieties of 2-stranded tangles.
//!
//! The library computes the representation variety `R(Y0, T0)` of a
//! 2-stranded tangle (torus-knot tangles, pretzel tangles, and the general
//! binary dihedral classification), restricts it to the pillowcase, and
//! counts the generators of the reduced instanton chain complex from
//! diagonal crossings of the image curves.
//!
//! Pipeline for a torus-knot tangle:
//!
//! 1. [`torus::compute_components`] solves the polynomial system cut out by
//!    two Chebyshev-type equations in the unit cube and assembles the
//!    solution curves into classified components.
//! 2. [`torus::image_path`] maps each component into the pillowcase as a
//!    continuous lift.
//! 3. [`census::count_generators`] counts diagonal crossings and converts
//!    them into generator counts.
//!
//! The `cli` module drives the pipeline and emits JSON/CSV/SVG artifacts.

pub mod census;
pub mod cheb;
pub mod cli;
pub mod dihedral;
pub mod pillowcase;
pub mod pretzel;
pub mod quat;
pub mod torus;
pub mod zeroset;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Numerically inconsistent inputs (e.g. a cosine triple with no solution).
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    /// Invalid tangle or configuration parameters.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A computed result violates an internal invariant.
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Residual tolerance used to accept solutions of the polynomial system.
///
/// `TANGLES_TOL` in the environment overrides the default of `1e-8`.
pub fn residual_tolerance() -> f64 {
    std::env::var("TANGLES_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(1e-8)
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
