use thiserror::Error;

/// Errors raised by poset, algebra, grading and identity computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("poset must have at least one element")]
    EmptyPoset,
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("relation is not antisymmetric: {0} and {1} are mutually comparable")]
    Cycle(String, String),
    #[error("index {index} out of range for poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("elements {0} and {1} are not comparable (x ⪯ y required)")]
    NotComparable(usize, usize),
    #[error("operands live on different posets")]
    PosetMismatch,
    #[error("not invertible: diagonal entry at element {0} is zero")]
    NotInvertible(usize),
    #[error("function is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("not a poset automorphism: {0}")]
    NotPosetAutomorphism(String),
    #[error("not an algebra automorphism: {0}")]
    NotAutomorphism(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unknown group element {0:?}")]
    UnknownGroupElement(String),
    #[error("gradings are not comparable: {0}")]
    Mismatch(String),
    #[error("enumeration budget exceeded: {needed} maps > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("degree {degree} exceeds cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("dimension mismatch: {0} vs {1} columns")]
    DimensionMismatch(usize, usize),
    #[error("Aut(P) does not act transitively on the maximal chains")]
    NotChainTransitive,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
