use frobenius::FrobeniusError;
use griffiths::{GriffithsError, Rejection};
use obstruction::ObstructionError;
use padic_core::PadicError;
use tensor::TensorError;
use zeta::ZetaError;

/// Failure classes of a run; each has a fixed process exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("singular reduction: {0}")]
    SingularReduction(String),
    #[error("no good prime in [{lower}, {ceiling}]")]
    SearchExhausted { lower: u64, ceiling: u64 },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("inconsistent lift: {0}")]
    InconsistentLift(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadInput(_) => 2,
            CliError::SingularReduction(_) | CliError::SearchExhausted { .. } => 3,
            CliError::PrecisionExhausted(_) => 4,
            CliError::InconsistentLift(_) => 5,
        }
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::ModulusTooLarge { .. }
            | PadicError::PrecisionExhausted { .. }
            | PadicError::NotDivisible(_) => CliError::PrecisionExhausted(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<Rejection> for CliError {
    fn from(e: Rejection) -> Self {
        match e {
            Rejection::NotPrime { .. } | Rejection::BadCharacteristic { .. } => {
                CliError::BadInput(e.to_string())
            }
            Rejection::DividesDegree { .. } | Rejection::SingularReduction { .. } => {
                CliError::SingularReduction(e.to_string())
            }
        }
    }
}

impl From<GriffithsError> for CliError {
    fn from(e: GriffithsError) -> Self {
        match e {
            GriffithsError::Rejected(r) => r.into(),
            GriffithsError::Padic(p) => p.into(),
            GriffithsError::SingularDivision { .. } => CliError::SingularReduction(e.to_string()),
            GriffithsError::NotIntegral { .. } => CliError::PrecisionExhausted(e.to_string()),
            GriffithsError::BadInput(_) | GriffithsError::Poly(_) => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<FrobeniusError> for CliError {
    fn from(e: FrobeniusError) -> Self {
        match e {
            FrobeniusError::Griffiths(g) => g.into(),
            FrobeniusError::Padic(p) => p.into(),
            FrobeniusError::TruncationInsufficient { .. }
            | FrobeniusError::PrecisionExhausted { .. }
            | FrobeniusError::SignUndetermined(0) => CliError::PrecisionExhausted(e.to_string()),
            // det F / p^(sum of levels) must be +-1 mod p.
            FrobeniusError::SignUndetermined(_) => CliError::InconsistentLift(e.to_string()),
            FrobeniusError::Schema(_) | FrobeniusError::InvariantViolation(_) | FrobeniusError::Io(_) => {
                CliError::BadInput(e.to_string())
            }
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::InsufficientPrecision { .. } => CliError::PrecisionExhausted(e.to_string()),
            ZetaError::InconsistentLift(m) => CliError::InconsistentLift(m),
            ZetaError::BadInput(m) => CliError::BadInput(m),
        }
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Padic(p) => p.into(),
            ObstructionError::BadInput(m) => CliError::BadInput(m),
        }
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::Padic(p) => p.into(),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_class() {
        let too_big: CliError = PadicError::ModulusTooLarge { p: 89, prec: 34 }.into();
        assert_eq!(too_big.exit_code(), 4);
        let singular: CliError = Rejection::SingularReduction { p: 13 }.into();
        assert_eq!(singular.exit_code(), 3);
        let divides: CliError = Rejection::DividesDegree { p: 5, d: 5 }.into();
        assert_eq!(divides.exit_code(), 3);
        let not_prime: CliError = Rejection::NotPrime { p: 33 }.into();
        assert_eq!(not_prime.exit_code(), 2);
        let lift: CliError = ZetaError::InconsistentLift("x".into()).into();
        assert_eq!(lift.exit_code(), 5);
        let short: CliError = ZetaError::InsufficientPrecision { needed: 5, available: 3 }.into();
        assert_eq!(short.exit_code(), 4);
        let schema: CliError = FrobeniusError::Schema("x".into()).into();
        assert_eq!(schema.exit_code(), 2);
        assert_eq!(CliError::from(FrobeniusError::SignUndetermined(0)).exit_code(), 4);
        assert_eq!(CliError::from(FrobeniusError::SignUndetermined(26)).exit_code(), 5);
    }
}
