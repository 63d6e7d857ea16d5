use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParameters(String),
    #[error("graph on {n} vertices exceeds the capacity of {cap} vertices")]
    CapacityExceeded { n: usize, cap: usize },
    #[error("malformed graph6 record: {0}")]
    MalformedGraph6(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("vertex set over {set} vertices used with a graph on {graph} vertices")]
    DimensionMismatch { set: usize, graph: usize },
    #[error("domination profile is undefined for the empty graph")]
    EmptyGraph,
    #[error("reconfiguration graph would have more than {cap} nodes")]
    ReconfigTooLarge { cap: usize },
    #[error("k = {k} is below the domination number {gamma}")]
    BoundBelowGamma { k: usize, gamma: usize },
    #[error("vertex set {0} does not dominate the seed graph")]
    NotDominating(String),
    #[error("vertex set {set} has more than k = {k} vertices")]
    AboveBound { set: String, k: usize },
    #[error("reconfiguration graph is not Eulerian")]
    NotEulerian,
    #[error("reconfiguration graph has no edges")]
    NoEdges,
    #[error("operation requires a reconfiguration graph built from a seed graph")]
    NotSeedBuilt,
    #[error("no characterization covers {0}")]
    UncharacterizedInstance(String),
    #[error("unknown claim '{0}'")]
    ClaimUnknown(String),
    #[error("graph spec parse error at position {pos}: {msg}")]
    SpecParse { pos: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Capacity-type errors get their own exit code in the CLI.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::CapacityExceeded { .. }
                | Error::ReconfigTooLarge { .. }
                | Error::BoundExceeded(_)
        )
    }
}
