use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {n} outside the supported range 1..={max}")]
    DegreeOutOfRange { n: usize, max: usize },
    #[error("rank {rank} out of range for a set of {total} permutations")]
    RankOutOfRange { rank: usize, total: usize },
    #[error("weight mismatch: partition of {lambda} evaluated on class of {alpha}")]
    WeightMismatch { lambda: usize, alpha: usize },
    #[error("partition weight {weight} exceeds the limit {max}")]
    WeightTooLarge { weight: usize, max: usize },
    #[error("not a rim hook of {0}")]
    NotARimHook(String),
    #[error("matrix order {order} exceeds the limit {max}")]
    MatrixTooLarge { order: usize, max: usize },
    #[error("modulus {0} is not an admissible prime (need a prime in (2^29, 2^31))")]
    BadModulus(u64),
    #[error("modular ranks disagree across primes: {0:?}")]
    PrimeDisagreement(Vec<(u64, usize)>),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("symbol {0:?} is not in the automaton's alphabet")]
    UnknownSymbol(char),
    #[error("behavior space exceeded the budget of {0} states")]
    StateBudgetExceeded(usize),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
