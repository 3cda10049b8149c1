use thiserror::Error;

/// Errors raised by lattice construction, mass handling and the combination rules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("frame of size {n} exceeds the configured maximum of {max}")]
    FrameTooLarge { n: usize, max: usize },
    #[error("hypothesis index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("operands are defined over different frames")]
    FrameMismatch,
    #[error("the frame has no hypotheses")]
    EmptyFrame,
    #[error("invalid hypothesis label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate hypothesis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown hypothesis label {0:?}")]
    UnknownLabel(String),
    #[error("argument must not be the empty element")]
    EmptyArgument,
    #[error("first element is not included in the second")]
    NotASubset,
    #[error("set operand is empty")]
    EmptyOperand,
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("total mass is zero")]
    ZeroTotalMass,
    #[error("selected value {value} lies outside the imprecise mass of a focal element")]
    SelectionOutsideSet { value: f64 },
    #[error("no value selected for a focal element")]
    MissingSelection,
    #[error("invalid mass assignment: {0}")]
    InvalidMass(String),
    #[error("combination needs at least two sources, got {got}")]
    FewerThanTwoSources { got: usize },
    #[error("this rule combines exactly two sources, got {got}")]
    RequiresTwoSources { got: usize },
    #[error("total conflict: normalization factor 1 - k12 is zero")]
    TotalConflict,
    #[error("model empties the total ignorance; no element can receive transferred mass")]
    DegenerateModel,
    #[error("all weighted products vanish; normalization constant undefined")]
    DegenerateNormalization,
    #[error("operation requires a Shafer-compatible model")]
    ModelNotShafer,
    #[error("candidate list is empty")]
    EmptyCandidates,
    #[error("triple components sum to zero")]
    ZeroSum,
    #[error("operation requires point-valued triple components")]
    SetValuedTriple,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
