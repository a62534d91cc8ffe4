//! End-to-end driver: input polynomial or imported Frobenius matrix in, an
//! upper bound for the geometric middle Picard number out.

mod batch;
mod error;
mod pipeline;
mod prime;

pub use batch::{batch_line_json, resolve_mode, run_batch, BatchItem};
pub use error::CliError;
pub use pipeline::{
    chi_display, run, Backend, InputSource, RecheckStatus, RunConfig, RunMode, RunOutput, RunProvenance,
};
pub use prime::{next_good_prime, DEFAULT_PRIME_CEILING};
