use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("symbol {symbol} out of range for alphabet size {k}")]
    SymbolOutOfRange { symbol: usize, k: usize },
    #[error("alphabet size {0} unsupported (must be 1..=256)")]
    BadAlphabet(usize),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("occurrences not overlapping")]
    NotOverlapping,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("census too large; use primitive_count identities")]
    CensusTooLarge,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{0}")]
    Validation(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
