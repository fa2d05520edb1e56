use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("budget exceeded: handle reduction used more than {budget} steps")]
    BudgetExceeded { budget: u64 },

    #[error("inconclusive truncation: Magnus expansion vanished up to degree {degree}")]
    InconclusiveTruncation { degree: usize },

    #[error("size limit: search exceeded {limit} nodes")]
    SizeLimit { limit: u64 },

    #[error("identity input: sign is undefined at the identity")]
    IdentityInput,

    #[error("empty positives: ball of radius {radius} has no positive element")]
    EmptyPositives { radius: usize },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("unsupported field: eigenvalues lie outside Q(sqrt {d})")]
    UnsupportedField { d: u64 },

    #[error("field mismatch: Q(sqrt {left}) vs Q(sqrt {right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("totality violation: {0}")]
    NotTotal(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl OrderError {
    /// Short stable name of the error class, used in CLI output.
    pub fn class(&self) -> &'static str {
        match self {
            OrderError::BudgetExceeded { .. } => "budget-exceeded",
            OrderError::InconclusiveTruncation { .. } => "inconclusive-truncation",
            OrderError::SizeLimit { .. } => "size-limit",
            OrderError::IdentityInput => "identity-input",
            OrderError::EmptyPositives { .. } => "empty-positives",
            OrderError::SingularMatrix => "singular-matrix",
            OrderError::UnsupportedField { .. } => "unsupported-field",
            OrderError::FieldMismatch { .. } => "field-mismatch",
            OrderError::NotTotal(_) => "totality-violation",
            OrderError::PreconditionFailed(_) => "precondition-failed",
            OrderError::RejectedInput(_) => "rejected-input",
            OrderError::Parse(_) => "parse-error",
        }
    }
}

pub type Result<T, E = OrderError> = std::result::Result<T, E>;
