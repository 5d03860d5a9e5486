use thiserror::Error;

use crate::mask::SubsetMask;

/// Errors raised while building posets, families, codes and certificates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("hierarchical shape requires 1 <= m <= n, got m = {m}, n = {n}")]
    InvalidShape { m: usize, n: usize },

    #[error("ground set size {n} exceeds the supported maximum of {cap}")]
    GroundSetTooLarge { n: usize, cap: usize },

    #[error("element {element} is outside the ground set 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("relation is not antisymmetric: {i} and {j} lie below each other")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("{0} is not an order ideal")]
    NotAnIdeal(SubsetMask),

    #[error("ideal {ideal} has {size} elements; enumerating its down-sets is capped at {cap}")]
    EnumerationCap { ideal: SubsetMask, size: usize, cap: usize },

    #[error("the ideal family is empty")]
    EmptyFamily,

    #[error("the inclusion-exclusion expansion is capped at {cap} ideals, got {size}")]
    FamilyTooLarge { size: usize, cap: usize },

    #[error("the down-sets of the family cover every subset, so the defining set is empty")]
    EmptyDefiningSet,

    #[error("the Boolean function has empty support (the family only generates the empty ideal)")]
    TrivialFunction,

    #[error("n = {n} exceeds the {path} cap of {cap}")]
    CapExceeded { path: &'static str, n: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("exhaustive minimality needs the full codeword list")]
    MissingCodewords,

    #[error("code has dimension 0")]
    ZeroDimension,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
