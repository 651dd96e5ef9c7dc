use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IreError {
    #[error("invalid label {0:?}: labels are non-empty identifiers over [A-Za-z0-9_]")]
    InvalidLabel(String),
    #[error("duplicate label {0:?} in alphabet")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("mapping is not a bijection: {0}")]
    NotABijection(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("scheme is not an interval exchange: {0}")]
    NotAnIet(String),
    #[error("malformed two-row notation: {0}")]
    MalformedTwoRow(String),

    #[error("endpoints are not allowed by the {side} scheme: relation fails at label {label}")]
    NotInEndpointSpace { side: Side, label: String },
    #[error("lengths are not allowed by the {side} scheme: cycle {cycle} does not close")]
    NotInLengthSpace { side: Side, cycle: usize },
    #[error("vector has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no anchor given for cycle {0}")]
    MissingAnchor(usize),
    #[error("more than one anchor given for cycle {0}")]
    DuplicateAnchor(usize),

    #[error("induction step labels must differ, got {0} twice")]
    RepeatedStepLabel(String),
    #[error("step {step} is not applicable: {reason}")]
    StepNotApplicable { step: String, reason: String },
    #[error("scheme is not in the image of step {step}: {reason}")]
    NotInImage { step: String, reason: String },
    #[error("tie between lengths of {alpha} and {beta}: the step is undefined")]
    TieDetected { alpha: String, beta: String },
    #[error("step {step} would make the length of {label} non-positive")]
    PositivityLost { step: String, label: String },

    #[error("the {side} data is not positive")]
    NotPositive { side: Side },
    #[error("cycle {0} is degenerate (all beginning or all ending)")]
    DegenerateCycle(usize),
    #[error("explicit branch coordinate {coordinate} lies outside segment [{lo}, {hi}]")]
    ExplicitBranchOutOfRange {
        coordinate: String,
        lo: String,
        hi: String,
    },
    #[error("explicit branch rule ran out of coordinates after {0}")]
    ExplicitBranchExhausted(usize),
    #[error("point {point} lies outside interval {interval}")]
    PointOutsideInterval { interval: String, point: String },

    #[error("invalid document: {0}")]
    Document(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// Which member of a natural extension an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Primal => f.write_str("primal"),
            Side::Dual => f.write_str("dual"),
        }
    }
}

pub type Result<T> = std::result::Result<T, IreError>;
