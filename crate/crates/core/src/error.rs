use thiserror::Error;

use crate::labeling::Labeling;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the workspace. Domain errors carry the
/// offending vertex/edge/value so callers can report precisely.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no usable data")]
    EmptyInput,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) closes a cycle")]
    CycleDetected(usize, usize),
    #[error("edge set does not connect all vertices")]
    Disconnected,
    #[error("{what} {value} is out of range")]
    OutOfRange { what: &'static str, value: usize },
    #[error("vertex {0} has no label")]
    MissingLabel(usize),
    #[error("label {label} on vertex {vertex} exceeds the allowed maximum {max}")]
    LabelOutOfRange { vertex: usize, label: u64, max: u64 },
    #[error("labeling does not split into two contiguous label blocks across the bipartition")]
    NotContiguousBipartite,
    #[error("tree is not a lobster")]
    NotALobster,
    #[error("tree is not a shell")]
    NotAShell,
    #[error("matching does not cover the required vertex set")]
    NotPerfect,
    #[error("contracted tree is not a caterpillar")]
    ContreeNotCaterpillar,
    #[error("labeling precondition failed: {0}")]
    PreconditionLabeling(&'static str),
    #[error("edge weight {0} collides with an existing weight")]
    WeightCollision(u64),
    #[error("diameter {got} is outside the range supported by this operation (limit {limit})")]
    DiameterTooSmall { limit: usize, got: usize },
    #[error("search budget exceeded; returning is possible via the best labeling found so far")]
    SearchBudgetExceeded { best: Box<Labeling> },
    #[error("computation budget exceeded")]
    BudgetExceeded,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}
