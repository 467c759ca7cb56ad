use cai_core::algebra::ParseError;
use cai_core::approx_roots::ApproxRootError;
use cai_core::moduli::ModuliError;
use cai_core::recognize::RecognizeError;
use cai_core::semigroup::SemigroupError;
use cai_core::splice::ChainError;
use serde_json::json;

/// Exit status for domain failures.
pub const EXIT_DOMAIN: u8 = 1;
/// Exit status for malformed invocations and unparsable input.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub detail: String,
    pub exit: u8,
}

impl CliError {
    pub fn domain(code: &'static str, detail: impl ToString) -> Self {
        Self {
            code,
            detail: detail.to_string(),
            exit: EXIT_DOMAIN,
        }
    }

    pub fn usage(code: &'static str, detail: impl ToString) -> Self {
        Self {
            code,
            detail: detail.to_string(),
            exit: EXIT_USAGE,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "code": self.code, "detail": self.detail } })
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::usage("PARSE_ERROR", e)
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Invalid(_) => Self::domain("INVALID_CHAIN", e),
            ChainError::IndexOutOfRange(_) => Self::domain("OUT_OF_RANGE", e),
            _ => Self::usage("MALFORMED_CHAIN", e),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::InvalidChain(_) => Self::domain("INVALID_CHAIN", e),
            SemigroupError::LevelOutOfRange(_) => Self::domain("OUT_OF_RANGE", e),
            _ => Self::domain("SEMIGROUP", e),
        }
    }
}

impl From<RecognizeError> for CliError {
    fn from(e: RecognizeError) -> Self {
        let code = match &e {
            RecognizeError::NonBirational { .. } => "NON_BIRATIONAL",
            RecognizeError::ConstantCurve => "CONSTANT_CURVE",
            RecognizeError::Line => "LINE",
            RecognizeError::TruncationTooSmall { .. } => "TRUNCATION_TOO_SMALL",
            RecognizeError::Chain(c) => return c.clone().into(),
            _ => "INTERNAL",
        };
        Self::domain(code, e)
    }
}

impl From<ApproxRootError> for CliError {
    fn from(e: ApproxRootError) -> Self {
        match e {
            ApproxRootError::Recognize(r) => r.into(),
            _ => Self::domain("APPROX_ROOT", e),
        }
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        let code = match &e {
            ModuliError::Chain(c) => return c.clone().into(),
            ModuliError::NotSufficientlyNegative => "NOT_SUFFICIENTLY_NEGATIVE",
            ModuliError::NotPositiveBraid => "NOT_POSITIVE_BRAID",
            ModuliError::BadY { .. } => "BAD_Y",
            ModuliError::StageOutOfRange { .. } => "OUT_OF_RANGE",
            ModuliError::Infeasible { .. } => "INFEASIBLE",
            ModuliError::TriangularityViolation { .. } => "TRIANGULARITY_VIOLATION",
            ModuliError::AllDegenerate { .. } => "DEGENERATE",
            ModuliError::RoundTrip { .. } => "ROUND_TRIP",
        };
        Self::domain(code, e)
    }
}
