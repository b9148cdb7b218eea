use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} is outside the range {lo}..={hi}")]
    DegreeOutOfRange { degree: i32, lo: i32, hi: i32 },

    /// A structural law failed (d∘d ≠ 0, a broken action, a non-closed subspace, ...).
    #[error("structural error: {0}")]
    Structural(String),

    /// A hypothesis of the underlying theorem is violated; the string names it.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
