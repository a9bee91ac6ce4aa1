use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("supplied inverse is inconsistent: M * Minv != I")]
    InconsistentInverse,
    #[error("structure constants violate the {chirality} Leibniz identity at (i={i}, j={j}, p={p}, k={k})")]
    NotLeibniz {
        chirality: &'static str,
        i: usize,
        j: usize,
        p: usize,
        k: usize,
    },
    #[error("groebner degree cap {cap} exceeded (S-pair of degree {degree})")]
    DegreeCapExceeded { cap: u32, degree: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown symbol: {0}")]
    UnknownSymbol(String),
    #[error("algebra is not a Lie algebra")]
    NotLie,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
