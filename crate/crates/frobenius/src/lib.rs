//! Frobenius on crystalline cohomology, approximated mod p^N.
//!
//! Two backends compute it (pole reduction for hypersurfaces and plane
//! curves, Kedlaya's algorithm for odd-degree hyperelliptic curves) and a
//! JSON format imports and exports it.

mod approx;
mod hyperelliptic;
mod hypersurface;
mod io;
mod sign;

pub use approx::{BasisVector, CohomologyKind, FrobeniusApprox, Provenance};
pub use hyperelliptic::{frobenius_hyperelliptic, hyperelliptic_truncation};
pub use hypersurface::{frobenius_hypersurface, hypersurface_truncation, working_precision};
pub use io::{export_frobenius, import_frobenius, parse_frobenius, FrobeniusFile};
pub use sign::functional_equation_sign;

use griffiths::{GriffithsError, HypersurfaceInput, Mode};
use padic_core::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobeniusError {
    #[error(transparent)]
    Griffiths(#[from] GriffithsError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("entry ({row}, {col}) changed when the series was extended")]
    TruncationInsufficient { row: usize, col: usize },
    #[error("precision exhausted: {available} digits left, {needed} requested")]
    PrecisionExhausted { needed: u32, available: u32 },
    #[error("functional-equation sign is undetermined: determinant is {0} mod p")]
    SignUndetermined(u64),
    #[error("io error: {0}")]
    Io(String),
}

/// Extra series terms and digits on top of the computed plan; the stability
/// recheck runs with one of each.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FrobeniusOptions {
    pub extra_truncation: u32,
    pub extra_precision: u32,
}

/// Dispatches on the input mode.
pub fn compute_frobenius(
    input: &HypersurfaceInput,
    p: u64,
    n_digits: u32,
    opts: FrobeniusOptions,
) -> Result<FrobeniusApprox, FrobeniusError> {
    griffiths::good_prime_check(input, p, 0).map_err(GriffithsError::from)?;
    match input.mode {
        Mode::JacobianHyperelliptic => {
            frobenius_hyperelliptic(&input.hyperelliptic_coeffs()?, p, n_digits, opts)
        }
        _ => {
            let basis = griffiths::griffiths_basis(input, p)?;
            frobenius_hypersurface(input, p, n_digits, &basis, opts)
        }
    }
}

/// Recomputes with one more series term and one more digit and checks that
/// every digit of `f` is reproduced.
pub fn stability_recheck(input: &HypersurfaceInput, f: &FrobeniusApprox) -> Result<(), FrobeniusError> {
    let opts = FrobeniusOptions { extra_truncation: 1, extra_precision: 0 };
    let g = compute_frobenius(input, f.p, f.precision + 1, opts)?;
    compare_digits(f, &g)
}

/// Ok when `g` agrees with `f` to all of f's trusted digits.
pub fn compare_digits(f: &FrobeniusApprox, g: &FrobeniusApprox) -> Result<(), FrobeniusError> {
    let m = (f.p as u128).pow(f.matrix.trusted_prec());
    for r in 0..f.dim() {
        for c in 0..f.dim() {
            if g.matrix.get(r, c) % m != f.matrix.get(r, c) % m {
                return Err(FrobeniusError::TruncationInsufficient { row: r, col: c });
            }
        }
    }
    Ok(())
}

impl From<polyring::PolyError> for FrobeniusError {
    fn from(e: polyring::PolyError) -> Self {
        FrobeniusError::Griffiths(e.into())
    }
}
