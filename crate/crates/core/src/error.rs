//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone)]
pub enum Error {
    #[error("element is not a unit (residue zero)")]
    NotAUnit,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimError { expected: usize, got: usize },
    #[error("subspace is not stable under the group action")]
    NotSubmodule,
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("tower step obstructed: {0}")]
    Obstruction(String),
    #[error("degree bound {bound} too small: {reason}")]
    NeedLargerBound { bound: usize, reason: String },
    #[error("module is not Cohen-Macaulay; finite-length witness in degree {degree}")]
    NotCohenMacaulay { degree: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no power of J up to {n_max} annihilates the module")]
    NotInCategoryC { n_max: usize },
    #[error("incompatible auxiliary action: {0}")]
    BadAction(String),
    #[error("filtration is not good: {0}")]
    NotGood(String),
    #[error("module is not pure: {0}")]
    NotPure(String),
    #[error("unsupported prime p = {0} (compiled for 5, 7, 11, 13)")]
    UnsupportedPrime(u64),
    #[error("unsupported truncation level N = {0} (base ring is Z_q/p^2, so N = 2)")]
    UnsupportedLevel(u8),
    #[error("bad recipe: {0}")]
    BadRecipe(String),
}

pub type Result<T> = std::result::Result<T, Error>;
