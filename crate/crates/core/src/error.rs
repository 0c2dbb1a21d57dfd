use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a positive rational, got {0}")]
    NonPositive(String),
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DuplexError {
    /// A witness that does not re-certify. This is a caller bug, not the
    /// honest "unknown" outcome of a search.
    #[error("apartness witness m = {m} does not certify |x| > 1/m at level {level}")]
    InvalidWitness { m: String, level: u32 },
    #[error("locate needs a < b, got a = {a}, b = {b}")]
    EmptyInterval { a: String, b: String },
    #[error("contracting intervals violate nesting at index {index}")]
    NotNested { index: u64 },
    #[error("contracting interval {index} is empty or reversed")]
    EmptyContractingInterval { index: u64 },
    #[error("nullity certificate rejected at level {level}")]
    InvalidNullity { level: u32 },
    #[error("square root of negative rational {0}")]
    NegativeSqrt(String),
    #[error(transparent)]
    Rational(#[from] RationalError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("truth table needs {atoms} atoms, limit is {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("alpha must exceed 1, got {0}")]
    AlphaTooSmall(String),
    #[error("need at least one point")]
    NoPoints,
    #[error("alpha^{power} needs {bits} bits, cap is {cap}")]
    TooLarge { power: u64, bits: u64, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("q_max must be at least 1")]
    EmptyRange,
    #[error("convergent {p}/{q} failed re-certification at 2^-{bits}")]
    Precision { p: String, q: String, bits: u32 },
    #[error(transparent)]
    Duplex(#[from] DuplexError),
}
