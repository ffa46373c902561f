use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a series that vanishes on its whole window")]
    ZeroDivision,

    #[error("coefficient of q^{exponent} requested but the series is only known below q^{trunc}")]
    OutOfPrecision { exponent: i64, trunc: i64 },

    #[error("pochhammer factor {factor} is identically zero")]
    ZeroFactor { factor: String },

    #[error("sum did not reach the truncation after {iterations} terms")]
    NonConvergent { iterations: u64 },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
