use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("malformed cycle: {0}")]
    MalformedCycle(String),
    #[error("subgroup is not contained in the ambient group")]
    NotContained,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not maximal")]
    NotMaximal,
    #[error("index {index} exceeds the coset-action degree cap {cap}")]
    IndexExceedsCap { index: String, cap: usize },
    #[error("group order {order} exceeds the cap {cap}")]
    OrderExceedsCap { order: String, cap: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {0} is outside the supported range")]
    FieldTooLarge(u64),
    #[error("modulus is not irreducible over GF({0})")]
    ModulusNotIrreducible(u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no chief factor K/L with L <= M and K not in M exists for this maximal subgroup")]
    NoChiefPair,
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
