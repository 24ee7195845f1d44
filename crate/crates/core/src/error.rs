use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("element has negative valuation")]
    NegativeValuation,
    #[error("matrix entry ({row}, {col}) is not in the valuation ring")]
    NonIntegralEntry { row: usize, col: usize },
    #[error("transition matrix is singular")]
    SingularTransition,
    #[error("basis vectors are linearly dependent")]
    SingularBasis,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lattices or submodules live in different ambient lattices")]
    AmbientMismatch,
    #[error("submodule is not split")]
    NotSplit,
    #[error("inner submodule is not split inside the outer submodule")]
    NotSplitInside,
    #[error("matrix is not invertible over the valuation ring")]
    NotUnimodular,
    #[error("linear form has no unit coefficient")]
    NotPrimitive,
    #[error("ImproperGenericIntersection: the forms are linearly dependent over K")]
    ImproperGenericIntersection,
    #[error("ProperFail: {0}")]
    ProperFail(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("EnumerationTooLarge: {count} subspaces exceed the cap of {cap}")]
    EnumerationTooLarge { count: u128, cap: u64 },
    #[error("GenerationExhausted: no admissible instance after {0} attempts")]
    GenerationExhausted(usize),
    #[error("invalid scalar literal {0:?}")]
    InvalidScalar(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
