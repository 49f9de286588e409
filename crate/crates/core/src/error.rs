use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field GF({p}^{k}) exceeds the supported order {max}")]
    FieldTooLarge { p: u32, k: u32, max: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("all input rows are zero")]
    ZeroRows,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a subspace of rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("enumeration of {count} items exceeds the budget of {budget}")]
    BudgetExceeded { count: String, budget: u64 },
    #[error("Pluecker relations do not hold")]
    NotDecomposable,
    #[error("Pluecker vectors of different flavors or sizes cannot be paired")]
    FlavorMismatch,
    #[error("duplicate line at position {0}")]
    DuplicateLine(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search exhausted without finding {0}")]
    SearchExhausted(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
