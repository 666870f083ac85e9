use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero polynomial has no tropicalization")]
    ZeroPolynomial,

    #[error("curve extraction needs at least two support points, got a monomial")]
    MonomialInput,

    #[error("coefficient valuations differ; the tropicalization is not conical")]
    MixedValuations,

    #[error("coordinate {index} is the zero series; the point lies outside the torus")]
    ZeroCoordinate { index: usize },

    #[error("the zero vector spans no ray")]
    ZeroVector,

    #[error("basis index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("fan rays do not span the lattice; the relations cannot be eliminated")]
    RaysDoNotSpan,

    #[error("elimination is not integral for this pivot set")]
    NonIntegralReduction,

    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },
}

impl Error {
    /// Validation error naming the offending field, for parse-and-check paths.
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
