use thiserror::Error;

use crate::partition::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("series truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term {0} is not a unit")]
    NonUnitConstantTerm(String),

    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("table for {family:?} covers 0..={max_n}, index {requested} requested")]
    TableTooSmall {
        family: Family,
        max_n: usize,
        requested: usize,
    },

    #[error("expected a {expected:?} table, got {actual:?}")]
    FamilyMismatch { expected: Family, actual: Family },

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("k = {k} is outside the asymptotic regime for n = {n}")]
    RegimeViolation { n: u64, k: u64 },

    #[error("{0} is outside the supported range")]
    OutOfRange(String),

    #[error("quadrature did not converge after {nodes} nodes (last change {last_change:e})")]
    NoConvergence { nodes: usize, last_change: f64 },
}
