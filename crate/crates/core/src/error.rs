use thiserror::Error;

/// Errors produced anywhere in the pooling pipeline.
///
/// Frame, joint and channel indices carried by variants are 1-based, the
/// same convention used by every file format in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value at channel {0}, frame {1}, joint {2}")]
    NonFiniteValue(usize, usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("sequence too short: {0} frame(s), at least 2 required")]
    TooShort(usize),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("tau {tau} exceeds frame count {frames}")]
    TauTooLarge { tau: usize, frames: usize },
    #[error("mask selects no joints")]
    EmptyMask,
    #[error("negative or non-finite motion value at frame {0}")]
    NegativeInput(usize),
    #[error("cumulative curve decreases at frame {0}")]
    NonMonotoneCurve(usize),
    #[error("flat cumulative curve; use the uniform matrix instead")]
    DegenerateCurve,
    #[error("plan shape mismatch: {0}")]
    PlanShapeMismatch(String),

    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: malformed record: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("truncated input in frame {0}")]
    TruncatedFrame(usize),
    #[error("line {line}: expected {expected} joints, got {got}")]
    JointCountMismatch { line: usize, expected: usize, got: usize },
    #[error("no frame contains a tracked body")]
    NoValidFrames,
    #[error("duplicate cell at frame {0}, joint {1}")]
    DuplicateCell(usize, usize),
    #[error("missing cell at frame {0}, joint {1}")]
    MissingCell(usize, usize),
    #[error("line {line}: expected {expected} fields, got {got}")]
    RaggedChannelCount { line: usize, expected: usize, got: usize },
    #[error("schema violation at key `{0}`")]
    SchemaViolation(String),
    #[error("invalid synthetic segment {0}: {1}")]
    InvalidSegment(usize, String),
}

impl Error {
    /// True for errors caused by malformed input text rather than bad parameters.
    pub fn is_format_error(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteValue(..)
                | Error::DimensionMismatch(_)
                | Error::TooShort(_)
                | Error::MalformedHeader { .. }
                | Error::MalformedLine { .. }
                | Error::TruncatedFrame(_)
                | Error::JointCountMismatch { .. }
                | Error::NoValidFrames
                | Error::DuplicateCell(..)
                | Error::MissingCell(..)
                | Error::RaggedChannelCount { .. }
                | Error::SchemaViolation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
