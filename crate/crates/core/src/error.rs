use thiserror::Error;

/// Errors raised while building schemes or looking up sequences.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("coefficient a_{index} is negative ({value})")]
    NegativeCoefficient { index: usize, value: i64 },
    #[error("full-history rule produces negative coefficients: {0}")]
    NegativeRule(String),
    #[error("invalid scheme descriptor: {0}")]
    Descriptor(String),
    #[error("matrix strategy requires a finite scheme; `{0}` is full-history")]
    UnsupportedStrategy(String),
    #[error("unknown sequence `{0}`")]
    NotFound(String),
    #[error("classic view `{name}` disagrees with its reference value at n={n}: expected {expected}, got {actual}")]
    OffsetMismatch {
        name: String,
        n: i64,
        expected: String,
        actual: String,
    },
}

/// Errors raised by the tiling oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("enumeration would produce {predicted} tilings, budget is {budget}")]
    BudgetExceeded { predicted: String, budget: u64 },
    #[error("break position {position} outside 1..{board_length}")]
    PositionOutOfRange { position: usize, board_length: usize },
    #[error("argument error: {0}")]
    Argument(String),
    #[error("bijection requires an uncolored m-nacci scheme with m >= 2: {0}")]
    Unsupported(String),
    #[error("bijection requires n >= m + 1 (m={m}, n={n})")]
    Precondition { m: usize, n: usize },
}

/// Errors raised while parsing identity text or corpus files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("non-linear index expression at offset {offset}: {message}")]
    NonLinearIndex { offset: usize, message: String },
    #[error("line {line}: {message}")]
    Corpus { line: usize, message: String },
}

/// Errors raised while evaluating or verifying identities.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("cannot resolve sequence `{0}`")]
    Unresolved(String),
    #[error("no value bound for variable `{0}`")]
    Unbound(char),
    #[error("empty range for variable `{var}`: {lo}..{hi}")]
    EmptyRange { var: char, lo: i64, hi: i64 },
    #[error("index overflow while evaluating `{0}`")]
    IndexOverflow(String),
}
