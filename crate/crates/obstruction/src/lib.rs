//! Tate spaces per cyclotomic factor, the obstruction projection, and the
//! accumulated upper bound on the span of algebraic classes.

mod report;
mod tate;

pub use report::{accumulate_bound, BoundMode, BoundRoute, FactorRecord, ObstructionReport, ReportFlags};
pub use tate::{
    corank_upper_bound, obstruction_matrix, obstruction_matrix_for_basis, pi_i_matrix, stacked_obstruction,
    tate_basis, TateFactor, Workspace,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error(transparent)]
    Padic(#[from] padic_core::PadicError),
    #[error("bad input: {0}")]
    BadInput(String),
}
