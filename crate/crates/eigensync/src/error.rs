use thiserror::Error;

/// Errors raised by domain operations.
///
/// Every message names the violated precondition so that CLI users can see
/// which requirement failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is not strongly connected")]
    NotStronglyConnected,

    #[error("letter index {letter} out of range for alphabet size {k}")]
    LetterOutOfRange { letter: usize, k: usize },

    #[error("destination {dest} out of range for {n} states (row {row})")]
    DestinationOutOfRange { row: usize, dest: usize, n: usize },

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("partition is not a congruence: block {block} splits under letter {letter}")]
    NotACongruence { block: usize, letter: usize },

    #[error("input is not Eulerian: state {state} has in-degree {in_degree}, out-degree {out_degree}")]
    NotEulerian {
        state: usize,
        in_degree: usize,
        out_degree: usize,
    },

    #[error("subset search budget exceeded: {n} states > budget {max_n} (use bounds instead)")]
    SubsetBudgetExceeded { n: usize, max_n: usize },

    #[error("coloring enumeration budget exceeded: more than {budget} transition functions")]
    EnumerationBudgetExceeded { budget: u64 },

    #[error("automaton is not synchronizing")]
    NotSynchronizing,

    #[error("automaton is synchronizing; operation applies only to non-synchronizing automata")]
    SynchronizingInput,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weight sum {total} exceeds the partition-analysis limit {limit}")]
    WeightSumTooLarge { total: String, limit: u128 },

    #[error("failed to sample a primitive digraph within {attempts} attempts")]
    SamplingBudgetExceeded { attempts: u64 },

    #[error("eigenvector computation failed: {0}")]
    Spectral(String),
}

/// Convenient result alias for this crate.
pub type Result<T> = std::result::Result<T, Error>;
