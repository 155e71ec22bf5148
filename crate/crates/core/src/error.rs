use thiserror::Error;

/// Errors surfaced by the library.
///
/// Internal invariant violations (a product of lifts that is not `±lift`,
/// a character table that fails orthogonality) are reported as
/// [`Error::Inconsistency`]; they always indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: rank {left_n} sign {left_sign} vs rank {right_n} sign {right_sign}")]
    SignatureMismatch {
        left_n: usize,
        left_sign: i8,
        right_n: usize,
        right_sign: i8,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("closure exceeded size bound of {bound} elements")]
    SizeBound { bound: usize },
    #[error("no suitable Dixon prime below {0}")]
    NoDixonPrime(u64),
    #[error("eigenspace splitting failed after {0} attempts")]
    SplittingFailed(usize),
    #[error("center has order {0}, expected a cyclic group of order 2")]
    CenterNotOrderTwo(usize),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("factorization budget exhausted on {0}")]
    FactorBudget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for errors caused by hitting a configured resource cap.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::SizeBound { .. } | Error::FactorBudget(_) | Error::NoDixonPrime(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
