use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring parameters: {0}")]
    InvalidParams(String),
    #[error("modulus residue is not irreducible over F_p")]
    NotIrreducible,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("divisor is not regular")]
    DivisorNotRegular,
    #[error("polynomial is not regular")]
    NotRegular,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("factors are not pairwise coprime")]
    FactorsNotCoprime,
    #[error("operation needs a single primary component")]
    NotPrimaryComponent,
    #[error("operation needs characteristic p^2, got a = {0}")]
    WrongCharacteristic(u32),
    #[error("index {0} out of range")]
    OutOfRange(u64),
    #[error("p = 2 is outside the hypotheses of this result")]
    EvenPrime,
    #[error("x^2 + 1 is reducible over F_{{{p}^{m}}}")]
    ReducibleModulus { p: u64, m: usize },
    #[error("the zero code has no generators")]
    ZeroCode,
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("enumeration budget exceeded: need {needed}, allowed {allowed}")]
    BudgetExceeded { needed: u128, allowed: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
