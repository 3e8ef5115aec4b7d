use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Two tensors disagree on the size of a shared label, or data does not
    /// match the declared shape.
    #[error("shape error: {0}")]
    Shape(String),

    #[error("unknown label {0}")]
    UnknownLabel(usize),

    #[error("index {index} out of range for axis of size {size}")]
    Index { index: usize, size: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate distribution: total sum is zero")]
    Degenerate,

    #[error("size error: {what} requires {required} entries, cap is {cap}")]
    Size {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid model: {0}")]
    Invalid(String),

    #[error("plan error: {0}")]
    Plan(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn size(what: &'static str, required: u128, cap: u128) -> Self {
        Error::Size {
            what,
            required,
            cap,
        }
    }
}
