use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has {n} vertices, need more than {k}")]
    TooFewVertices { n: usize, k: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("k must be a positive integer")]
    InvalidK,

    #[error("graph6: malformed header")]
    MalformedHeader,
    #[error("graph6: byte {0:#04x} outside the printable range 63..=126")]
    BadCharacter(u8),
    #[error("graph6: adjacency data truncated")]
    Truncated,
    #[error("graph6: trailing data after adjacency bits")]
    TrailingData,
    #[error("graph6 short form supports at most 62 vertices, got {0}")]
    TooLarge(usize),
    #[error("edge list: {0}")]
    EdgeList(String),

    #[error("state is not a fixed point: vertex {0} can still force")]
    NotAFixedPoint(usize),

    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("budget exhausted: no k-forcing set of size <= {proven_none_up_to} ({tested} subsets tested)")]
    BudgetExceeded {
        proven_none_up_to: usize,
        tested: u64,
    },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("corpus spec: {0}")]
    Corpus(String),
    #[error("report output: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;
