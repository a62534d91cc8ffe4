//! Homogeneous polynomials in graded pieces, the grevlex order, and the
//! Macaulay matrices of Jacobian ideals.

mod macaulay;
mod monomial;
mod parse;
mod poly;

pub use macaulay::{jacobian_hilbert_coefficient, macaulay_matrix};
pub use monomial::{binomial, grevlex_compare, monomials_of_degree, Monomial, MonomialIndex};
pub use parse::{default_variable_order, parse_poly, parse_poly_with_vars};
pub use poly::{GradedPoly, Ring, SparsePoly};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("operands have different coefficient rings")]
    RingMismatch,
    #[error("integer coefficient overflow")]
    Overflow,
    #[error("no generators")]
    Empty,
}
