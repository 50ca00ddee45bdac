use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into three families: malformed input (`InvalidInput`,
/// `MalformedPermutation`, `IndexOutOfRange`, `DimensionMismatch`), mathematical
/// refusals (`NonRetractable`, `TrivialSolution`, `Precondition`, `SizeCap`,
/// `CapExceeded`), and internal-consistency failures (`Inconsistent`,
/// `Overflow`) which indicate a bug or a violated theoretical guarantee.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: i64, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("size cap exceeded: n = {n}, limit {limit}")]
    SizeCap { n: usize, limit: usize },

    #[error("cap exceeded: {what} (cap {cap})")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("non-retractable: order oracle not constructed (tower stuck at size {stuck_size})")]
    NonRetractable { stuck_size: usize },

    #[error("trivial solution: bi-orderable, no generalized torsion")]
    TrivialSolution,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
