use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Indices are zero-based, matching the affine convention `α_0, α_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("DiagonalNotTwo({0}): diagonal entry is not 2")]
    DiagonalNotTwo(usize),
    #[error("PositiveOffDiagonal({0},{1}): off-diagonal entry is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("AsymmetricZero({0},{1}): a_ij = 0 but a_ji != 0")]
    AsymmetricZero(usize, usize),
    #[error("NotSymmetrizable: no positive diagonal symmetrizer exists")]
    NotSymmetrizable,
    #[error("invalid symmetrizer: {0}")]
    InvalidSymmetrizer(String),
    #[error("DimensionMismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("OutOfWindow: {0}")]
    OutOfWindow(String),
    #[error("WindowMismatch: {0}")]
    WindowMismatch(String),
    #[error("NonUnitLeadingTerm: leading coefficient is not a unit")]
    NonUnitLeadingTerm,
    #[error("NotStrictlyDominant: {0}")]
    NotStrictlyDominant(String),
    #[error("NotDominant: {0}")]
    NotDominant(String),
    #[error("NotBelow: {0}")]
    NotBelow(String),
    #[error("NotARoot: {0}")]
    NotARoot(String),
    #[error("weight {0} is outside the Tits cone (J is undefined)")]
    NotInTitsCone(String),
    #[error("WindowTooSmall: {0}")]
    WindowTooSmall(String),
    #[error("InconsistentLimit: N(0) = {series} but dim L(lambda)_nu = {expected}")]
    InconsistentLimit { series: i64, expected: i64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OutOfWindow(_)
            | Error::WindowMismatch(_)
            | Error::WindowTooSmall(_)
            | Error::NonUnitLeadingTerm => 2,
            Error::Internal(_) | Error::InconsistentLimit { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
