//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("substitution hit a pole: denominator vanished")]
    EvaluationAtPole,
    #[error("deformation `{0}` carries no tau factorization")]
    MissingTauFactorization(String),
    #[error("factorial index must be nonnegative, got {0}")]
    NegativeIndex(i64),
    #[error("binomial indices out of range: m={m}, n={n}")]
    IndexOutOfRange { m: i64, n: i64 },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("linear combination mixes operator parities")]
    MixedParity,
    #[error("degenerate bracket weights at (m1, m2) = ({m1}, {m2}): {reason}")]
    DegenerateWeights { m1: i64, m2: i64, reason: String },
    #[error("singular prefactor: {0}")]
    SingularPrefactor(String),
    #[error("bracket arity {0} exceeds the supported maximum of 6")]
    UnsupportedArity(usize),
    #[error("truncation exceeded: {0}")]
    TruncationExceeded(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
