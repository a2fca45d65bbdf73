use thiserror::Error;

/// Errors surfaced by the exact-arithmetic engine and the verifiers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function has a pole at the expansion origin{0}")]
    PoleAtOrigin(String),

    #[error("evaluation hits a vanishing denominator{0}")]
    EvaluationPole(String),

    #[error("value contains odd powers of the projected variable: {0}")]
    OddPowerResidue(String),

    #[error("denominator Nekrasov factor vanishes identically for lambda={lambda} mu={mu} j={j}")]
    ZeroDenominator {
        lambda: String,
        mu: String,
        j: usize,
    },

    #[error("division left a nonzero remainder (input not symmetric?): {0}")]
    NonExactDivision(String),

    #[error("polynomial is not in the span of the requested Macdonald basis: {0}")]
    NotInSpan(String),

    #[error("re-expansion differs between headroom {h} and {h_next} at order {order}")]
    InstableTruncation {
        h: usize,
        h_next: usize,
        order: usize,
    },

    #[error("cache error: {0}")]
    Cache(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
