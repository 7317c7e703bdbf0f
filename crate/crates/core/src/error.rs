use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the supported table size")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("invalid modulus: {0}")]
    BadModulus(&'static str),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("discrete logarithm of zero")]
    DlogOfZero,
    #[error("element encoding {value} out of range for q = {q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("value table has length {got}, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("polynomial does not satisfy the hypotheses: {0}")]
    PolyHypothesis(&'static str),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("function is not a permutation")]
    NotPermutation,
    #[error("exact computation not supported for this field: {0}")]
    Unsupported(&'static str),
    #[error("invalid family parameters: {0}")]
    FamilyParams(String),
    #[error("function space too large to enumerate")]
    SpaceTooLarge,
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}
