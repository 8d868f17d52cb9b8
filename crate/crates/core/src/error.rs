use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes under substitution {0}")]
    Pole(String),

    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error("cell ({row}, {col}) lies outside the Young diagram")]
    CellOutside { row: usize, col: usize },

    /// An arithmetic identity that must hold for valid inputs failed. This
    /// is an implementation bug, never a property of the input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for errors that signal a defect in the computation rather than a
    /// bad request.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
