//! Characteristic polynomials of Frobenius over the integers.
//!
//! Polynomials are coefficient vectors from the constant term up. A
//! [`WeilPolynomial`] is always the reciprocal form det(1 - tF); the scaled
//! characteristic polynomial of F/q^r is derived from it on demand.

mod intpoly;
mod power;
mod roots;
mod split;
mod weil;

pub use intpoly::{cyclotomic, euler_phi, format_poly, IntPoly};
pub use power::{power_sums, tensor_square_charpoly, wedge_square_charpoly};
pub use roots::max_root_norm_deviation;
pub use split::{cyclotomic_split, CyclotomicFactor, CyclotomicSplit};
pub use weil::{min_precision, weil_lift, ScaledCharpoly, WeilPolynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("lifting needs {needed} trusted digits, only {available} available")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("inconsistent lift: {0}")]
    InconsistentLift(String),
    #[error("bad input: {0}")]
    BadInput(String),
}
