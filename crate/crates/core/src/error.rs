use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-positive parameter: {0}")]
    NonPositiveParameter(String),

    #[error("arrival rates must be strictly decreasing: λ_{index} = {left} is not greater than λ_{next} = {right}", next = .index + 1)]
    NotStrictlyDecreasing {
        index: usize,
        left: String,
        right: String,
    },

    #[error("last arrival rate must be zero, got λ_N = {0}")]
    LastRateNonzero(String),

    #[error("negative arrival rate λ_{index} = {value}")]
    NegativeRate { index: usize, value: String },

    #[error("arrival-rate sequence is empty")]
    EmptySequence,

    #[error("phase {phase} out of range 1..={n}")]
    PhaseOutOfRange { phase: usize, n: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("path order {path} does not match model size {model}")]
    OrderMismatch { path: usize, model: usize },

    #[error("invalid Dyck path {0:?}")]
    InvalidPath(Vec<u32>),

    #[error("allocation {0:?} is not feasible")]
    NotFeasible(Vec<u32>),

    #[error("allocation is empty")]
    EmptyAllocation,

    #[error("allocation has no nonzero entry")]
    ZeroAllocation,

    #[error("degenerate rates: λ_{k} = λ_{n}")]
    DegenerateRates { k: usize, n: usize },

    #[error("model must be built in proportional mode (λ_n = λ(N − n))")]
    RequiresProportionalMode,

    #[error("matrix is singular: zero diagonal entry at ({0}, {0})")]
    SingularMatrix(usize),

    #[error("generating function has a pole at z = 1/ρ_{0}")]
    PoleAtArgument(usize),

    #[error("N = {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("invalid model config: {0}")]
    Config(String),
}

impl Error {
    /// True for errors caused by a size guard rather than bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
