use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Axioms of a fan matrix, by the letter used in reports.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Axiom {
    /// rank equals the number of rows
    A,
    /// no zero column
    B,
    /// no column is a positive multiple of another
    C,
    /// the columns positively span the whole space
    D,
    /// every column is primitive
    E,
    /// the columns span the integer lattice
    F,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            Axiom::A => 'a',
            Axiom::B => 'b',
            Axiom::C => 'c',
            Axiom::D => 'd',
            Axiom::E => 'e',
            Axiom::F => 'f',
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("axiom ({axiom}) violated: {witness}")]
    AxiomViolation { axiom: Axiom, witness: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cone is not full-dimensional (dimension {dim} in R^{ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("weight does not define a term order: coordinate {index} is negative")]
    NotATermOrder { index: usize },

    #[error("weight is not generic: tie on binomial {binomial}")]
    NonGenericWeight { binomial: String },

    #[error("monomial ideal does not define a fan: {0}")]
    NotAFan(String),

    #[error("gcd({p}, {q}) is not 1")]
    NotCoprime { p: u64, q: u64 },

    #[error("secondary-fan plot needs rank 3, got rank {0}")]
    UnsupportedRank(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
