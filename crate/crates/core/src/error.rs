use thiserror::Error;

/// Errors raised by the matrix, structure and chain operations.
///
/// Variants split into two groups: input validation failures (shape
/// mismatches, malformed partitions, vectors outside the expected kernel)
/// and numerical failures (an identity that should hold exactly was violated
/// beyond tolerance, or an iteration did not converge).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("matrix is not h-cyclic with the given partition: arc ({0}, {1}) leaves the block pattern")]
    NotCyclic(usize, usize),

    #[error("partition is not consecutive")]
    NotConsecutive,

    #[error("chain orientation mismatch: expected {expected}")]
    Orientation { expected: &'static str },

    #[error("vector is not in the null space of B_{class} (residual {residual:.3e})")]
    NotInNullSpace { class: usize, residual: f64 },

    #[error("zero vector given where a nonzero vector is required")]
    ZeroVector,

    #[error("matrix is singular")]
    Singular,

    #[error("chain hypotheses violated: {0}")]
    Hypothesis(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
}

impl Error {
    /// True for failures caused by the numbers rather than the shape of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Numerical(_) | Error::NoConvergence(_) | Error::Singular
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
