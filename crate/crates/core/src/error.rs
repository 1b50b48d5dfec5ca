use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("loop arc ({0}, {0})")]
    LoopArc(usize),
    #[error("arcs ({0}, {1}) and ({1}, {0}) form a digon")]
    Digon(usize, usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    IdOutOfRange { id: usize, n: usize },
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("expected {expected} vertices with a consistent role assignment, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error(
        "S_{{{k},{l}}} has a center of zero in- or out-degree; directed stars are Huang's case and are not handled here"
    )]
    EllZero { k: usize, l: usize },
    #[error("the optimal constructions for S_{{1,1}} are not bipartite orientations; no objective applies")]
    PathStar,
    #[error("argument {name} = {value} outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("{0} is defined only for {1}")]
    WrongBranch(&'static str, &'static str),
    #[error("infeasible class sizes: {0}")]
    InfeasibleSizes(String),
    #[error("order {n} exceeds the exhaustive-search cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("range [{lo}, {hi}] not contained in [{min}, {max}]")]
    Range {
        lo: usize,
        hi: usize,
        min: usize,
        max: usize,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("overflow: {0}")]
    Overflow(&'static str),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
