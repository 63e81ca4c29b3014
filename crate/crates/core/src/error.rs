use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label set must not be empty")]
    EmptyLabelSet,

    #[error("labels must be non-empty text")]
    EmptyLabel,

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("membership degree {0} is outside [0, 1]")]
    DegreeOutOfRange(String),

    #[error("expected {expected} {what}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{context}: labels {left:?} do not match {right:?}")]
    LabelMismatch {
        context: &'static str,
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("expected a single-row relation, found {0} rows")]
    NotARow(usize),

    #[error(
        "enumeration bound exceeded: problem has {unknowns} unknowns and {equations} equations, \
         cap is {max_unknowns}x{max_equations}"
    )]
    EnumerationCapExceeded {
        unknowns: usize,
        equations: usize,
        max_unknowns: usize,
        max_equations: usize,
    },

    #[error("tolerance must be non-negative, got {0}")]
    NegativeTolerance(String),

    #[error("grade distribution has no students")]
    EmptyDistribution,

    #[error("rounding to {0} digits is not supported (use 0..=9)")]
    RoundDigits(u32),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
