//! Arithmetic in Z/p^N: residues, matrices, Howell-style reduction and
//! characteristic polynomials, all carrying a count of lost p-adic digits.

mod charpoly;
mod context;
mod howell;
mod matrix;

pub use charpoly::{charpoly_mod_pn, PolyMod};
pub use context::{is_prime, FastMod, PadicContext};
pub use howell::{howell_form, kernel_mod_pn, rank_lower_bound, HowellForm};
pub use matrix::PadicMatrix;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be positive")]
    ZeroPrecision,
    #[error("{p}^{prec} does not fit the residue type")]
    ModulusTooLarge { p: u64, prec: u32 },
    #[error("precision exhausted: lost {loss} of {prec} digits")]
    PrecisionExhausted { loss: u32, prec: u32 },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("residue {0} is out of range for the modulus")]
    EntryOutOfRange(u128),
    #[error("operands live in different rings")]
    ContextMismatch,
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("empty input")]
    Empty,
    #[error("entries are not divisible by p^{0}")]
    NotDivisible(u32),
}
