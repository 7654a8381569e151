use thiserror::Error;
use valfrob_core::{
    ClassifyError, FieldError, GroupError, ParseError, SeriesError, SplitError, ValuationError,
};

/// Exit status for verification failures.
pub const EXIT_VERIFY: i32 = 1;
/// Exit status for malformed invocations, files and expressions.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a series or irrational comparison ran out of precision.
pub const EXIT_PRECISION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("bad descriptor: {0}")]
    Descriptor(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("bad expression: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

fn group_precision(e: &GroupError) -> bool {
    matches!(e, GroupError::PrecisionExhausted { .. })
}

fn valuation_precision(e: &ValuationError) -> bool {
    matches!(e, ValuationError::Group(g) if group_precision(g))
}

fn split_precision(e: &SplitError) -> bool {
    matches!(e, SplitError::Valuation(v) if valuation_precision(v))
}

impl CliError {
    pub fn descriptor(message: impl Into<String>) -> Self {
        CliError::Descriptor(message.into())
    }

    /// Whether the failure is a precision limit rather than a wrong answer.
    pub fn is_precision(&self) -> bool {
        match self {
            CliError::Series(SeriesError::PrecisionExhausted { .. } | SeriesError::HahnBoundExhausted { .. }) => true,
            CliError::Series(SeriesError::Group(g)) | CliError::Group(g) => group_precision(g),
            CliError::Valuation(v) => valuation_precision(v),
            CliError::Split(s) => split_precision(s),
            CliError::Classify(ClassifyError::Valuation(v)) => valuation_precision(v),
            CliError::Classify(ClassifyError::Split(s)) => split_precision(s),
            _ => false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_precision() {
            return EXIT_PRECISION;
        }
        match self {
            CliError::Verify(_)
            | CliError::Split(SplitError::ClaimFailed { .. })
            | CliError::Classify(
                ClassifyError::Inconsistent(_)
                | ClassifyError::InequalityViolated { .. }
                | ClassifyError::Split(SplitError::ClaimFailed { .. }),
            ) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        }
    }
}
