use griffiths::{good_prime_check, HypersurfaceInput};
use padic_core::is_prime;

use crate::CliError;

/// Default upper end of the prime search.
pub const DEFAULT_PRIME_CEILING: u64 = 10_000;

/// Smallest prime >= max(lower, 2r + 7, n + 2) at which `input` passes
/// [`good_prime_check`].
pub fn next_good_prime(
    input: &HypersurfaceInput,
    lower: u64,
    char_bound: u64,
    ceiling: u64,
) -> Result<u64, CliError> {
    let r = input.twist() as u64;
    let start = lower.max(2 * r + 7).max(input.n as u64 + 2);
    (start..=ceiling)
        .filter(|&p| is_prime(p))
        .find(|&p| good_prime_check(input, p, char_bound).is_ok())
        .ok_or(CliError::SearchExhausted { lower: start, ceiling })
}
