use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("flag {0} is not a vertex")]
    UnknownVertex(usize),
    #[error("flag {0} is not part of an edge")]
    NotAnEdge(usize),
    #[error("contracting flag {0} would collapse a loop")]
    LoopContraction(usize),
    #[error("subgraph is not a legless forest")]
    NotForest,
    #[error("stability violated: {0}")]
    Unstable(String),
    #[error("graph is not a tree")]
    NotTree,
    #[error("split {0:?} is trivial")]
    TrivialSplit(Vec<u32>),
    #[error("label {0} is not present")]
    MissingLabel(u32),
    #[error("flag map does not commute with the graph structure: {0}")]
    NotAMorphism(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("fiber over target edge {0} contains a cycle")]
    FiberCycle(usize),
    #[error("hurwitz degree {d} exceeds the brute-force bound {bound}")]
    DegreeBound { d: u32, bound: u32 },
    #[error("inconsistent parameters: {0}")]
    Parameters(String),
    #[error("node budget of {0} exhausted")]
    Budget(u64),
    #[error("g + r must be even (g = {g}, r = {r})")]
    Parity { g: u32, r: u32 },
    #[error("matrix is {rows}x{cols}, not square")]
    NonSquare { rows: usize, cols: usize },
    #[error("ramification pattern violated: {0}")]
    Ramification(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
