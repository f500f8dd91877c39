use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is not invertible modulo {modulus}")]
    NotInvertible { modulus: String },

    #[error("moduli are not pairwise coprime")]
    ModuliNotCoprime,

    #[error("rational reconstruction failed")]
    ReconstructionFailed,

    #[error("commutation scalar c[{i}][{j}] is zero")]
    ZeroScalar { i: usize, j: usize },

    #[error("ordering is not admissible: tail d[{i}][{j}] is not below x_{i}*x_{j}")]
    NotAdmissible { i: usize, j: usize },

    #[error("nondegeneracy fails for the triple ({i}, {j}, {k})")]
    Degenerate { i: usize, j: usize, k: usize },

    #[error("prime {0} is rejected for this presentation")]
    BadPrime(u64),

    #[error("leading data of the zero polynomial")]
    ZeroPolynomial,

    #[error("no elimination ordering exists for the requested variables")]
    NoEliminationOrdering,

    #[error("the algebra admits no positive grading")]
    NotGraded,

    #[error("prime pool exhausted")]
    PrimePoolExhausted,

    #[error("modular driver gave up after {0} rounds")]
    RoundCapExceeded(usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
