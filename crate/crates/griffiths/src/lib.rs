//! Griffiths bases of primitive middle cohomology and pole-order reduction
//! modulo the Jacobian ideal over Z/p^M.

mod basis;
mod division;
pub mod echelon;
mod input;
mod reduce;

pub use basis::{griffiths_basis, BasisManifest, GriffithsBasis};
pub use echelon::{leading_echelon_mod_p, LeadingEchelon};
pub use input::{
    good_prime_check, jacobian_ring_vanishes_mod_p, squarefree_mod_p, HypersurfaceInput, Mode, Rejection,
};
pub use reduce::{griffiths_dwork_reduce, ReducedClass, Reducer, Term};

use padic_core::PadicError;
use polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GriffithsError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Rejected(#[from] Rejection),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("no unit pivot while inverting the degree-{degree} division system")]
    SingularDivision { degree: u32 },
    #[error("reduced class is not integral: denominator p^{shift} exceeds what the numerator carries")]
    NotIntegral { shift: u32 },
}
