use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("frame of discernment must contain at least one event")]
    EmptyFrame,

    #[error("frame has {0} events; at most {max} are supported", max = crate::frame::MAX_EVENTS)]
    TooManyEvents(usize),

    #[error("duplicate event label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown event label `{0}`")]
    UnknownLabel(String),

    #[error("subset {0:#b} is not contained in the frame")]
    SubsetOutsideFrame(u32),

    #[error("the empty set cannot carry mass")]
    EmptySetFocal,

    #[error("negative mass {mass} on subset {subset:#b}")]
    NegativeMass { subset: u32, mass: f64 },

    #[error("masses sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("mass functions are defined on different frames")]
    FrameMismatch,

    #[error("total conflict (K = {0}); Dempster's rule is undefined")]
    TotalConflict(f64),

    #[error("event index {index} out of range for a frame of {n} events")]
    EventOutOfRange { index: usize, n: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("at least {0} piece(s) of evidence required")]
    NotEnoughEvidence(usize),

    #[error("weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),

    #[error("distance coefficient must be positive, got {0}")]
    NonpositiveTau(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("iteration did not converge within {steps} steps (last delta {delta})")]
    NotConverged { steps: usize, delta: f64 },

    #[error("class `{0}` has no training records")]
    MissingClass(String),

    #[error("dataset contains no records")]
    EmptyDataset,

    #[error("row {row}, column `{column}`: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("invalid evidence document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
