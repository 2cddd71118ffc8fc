use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loops are not allowed (vertex `{0}`)")]
    Loop(String),
    #[error("endpoints must be distinct (both are `{0}`)")]
    EqualEndpoints(String),
    #[error("no edge between `{0}` and `{1}` (or count exceeds its multiplicity)")]
    UnknownEdge(String, String),
    #[error("vertices `{0}` and `{1}` are adjacent but lie in the same contraction class")]
    NonContractible(String, String),
    #[error("invalid contraction classes: {0}")]
    InvalidClasses(String),
    #[error("vertex set is not contractible: `{0}` and `{1}` are adjacent")]
    NonContractibleSet(String, String),
    #[error("vertex set is not a component of the graph minus the separator")]
    NotAComponent,
    #[error("not a subgraph: {0}")]
    NotASubgraph(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("orientation does not belong to this graph: {0}")]
    OrientationMismatch(String),
    #[error("base graph mismatch: {0}")]
    BaseMismatch(String),
    #[error("part orientation mismatch: {0}")]
    PartMismatch(String),
    #[error("fragment orientation mismatch: {0}")]
    FragmentMismatch(String),
    #[error("invalid block tree: {0}")]
    InvalidBlockTree(String),
    #[error("inconsistent provenance: {0}")]
    InconsistentProvenance(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("search exhausted after {0} nodes without finding an orientation")]
    SearchExhausted(u64),
    #[error("graph is not connected")]
    NotConnected,
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("inconsistent symbolic orientation: {0}")]
    InconsistentClasses(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("path is not efficient: {0}")]
    NotEfficient(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
