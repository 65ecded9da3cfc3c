use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// The variants map onto the process exit codes used by the `abelzeta`
/// binary (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid cover: {0}")]
    Validation(String),

    #[error("enumeration budget exceeded: {needed} elements requested, budget is {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("invariant breach: {0}")]
    Invariant(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field F_{p}^{n} exceeds the supported size")]
    FieldTooLarge { p: u64, n: u32 },

    #[error("field context mismatch: F_{left} vs F_{right}")]
    ContextMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) => 2,
            Error::Validation(_) | Error::NotPrime(_) | Error::FieldTooLarge { .. } => 3,
            Error::Budget { .. } => 4,
            Error::Invariant(_) => 5,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Upper limit on the number of field elements a single enumeration may touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 26);

    pub fn check(self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::Budget { needed, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
