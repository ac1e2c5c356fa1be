use thiserror::Error;

/// Errors raised by the numeric layers and the evaluators built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error("series division by a series with zero constant term")]
    DivisionBySingularSeries,

    #[error("series composition requires an inner series with zero constant term")]
    CompositionRequiresZeroConstantTerm,

    #[error("series is not revertible (needs s[0] == 0 and s[1] != 0)")]
    NotRevertible,

    #[error("gamma function pole at {0}")]
    GammaPole(String),

    #[error("required working precision of {required} digits exceeds the cap of {cap}")]
    PrecisionBudgetExceeded { required: u32, cap: u32 },

    #[error("optimal truncation index {m} exceeds the cap of {cap}")]
    TruncationOverflow { m: u64, cap: u64 },

    #[error("pole u0 = i c is too close to the saddle (|omega| = {omega:e}); use the near-one tables")]
    PoleTooCloseToSaddle { omega: f64 },

    #[error("near-one coefficient tables stop at B_4 (requested kmax = {0})")]
    TableOrderUnavailable(usize),

    #[error("domain error: {0}")]
    DomainError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
