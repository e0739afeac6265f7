use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DuplicateVertexId(u32),
    DuplicateEdgeId(u32),
    /// An edge endpoint or the root refers to a vertex that was never declared.
    UnknownVertex(u32),
    NonPositiveCost(u32),
    NegativePrize(u32),
    /// A vertex with positive prize is not reachable from the root.
    UnreachablePrizeVertex(u32),
    /// The edge set is not a tree containing the root.
    NotARootedSubtree,
    /// An edge id that does not survive the contraction (or does not exist).
    ForeignEdgeId(u32),
    /// Two vertices of the subtree tie for the minimum distance to the root
    /// and no base tree was supplied to break the tie.
    AmbiguousAnchor(u32, u32),
    NotATree,
    NotInTree,
    /// The (contracted) instance carries no prize, so no densest subtree exists.
    NoPrizeLeft,
    InstanceTooLarge { edges: usize, bound: usize },
    TreeTooLarge { edges: usize, bound: usize },
    /// Some prefix of the ordering does not induce a rooted subtree, or the
    /// full ordering misses a positive-prize vertex.
    InvalidOrdering { position: usize, message: String },
    BadParameter(String),
    Parse { line: usize, message: String },
    Io(String),
}

impl Error {
    /// Stable machine-readable error name, used by the CLI error JSON.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateVertexId(_) => "DuplicateVertexId",
            Error::DuplicateEdgeId(_) => "DuplicateEdgeId",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::NonPositiveCost(_) => "NonPositiveCost",
            Error::NegativePrize(_) => "NegativePrize",
            Error::UnreachablePrizeVertex(_) => "UnreachablePrizeVertex",
            Error::NotARootedSubtree => "NotARootedSubtree",
            Error::ForeignEdgeId(_) => "ForeignEdgeId",
            Error::AmbiguousAnchor(_, _) => "AmbiguousAnchor",
            Error::NotATree => "NotATree",
            Error::NotInTree => "NotInTree",
            Error::NoPrizeLeft => "NoPrizeLeft",
            Error::InstanceTooLarge { .. } => "InstanceTooLarge",
            Error::TreeTooLarge { .. } => "TreeTooLarge",
            Error::InvalidOrdering { .. } => "InvalidOrdering",
            Error::BadParameter(_) => "BadParameter",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateVertexId(v) => write!(f, "duplicate vertex id {v}"),
            Error::DuplicateEdgeId(e) => write!(f, "duplicate edge id {e}"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex id {v}"),
            Error::NonPositiveCost(e) => write!(f, "edge {e} has nonpositive cost"),
            Error::NegativePrize(v) => write!(f, "vertex {v} has negative prize"),
            Error::UnreachablePrizeVertex(v) => {
                write!(f, "prize vertex {v} is unreachable from the root")
            }
            Error::NotARootedSubtree => write!(f, "edge set is not a rooted subtree"),
            Error::ForeignEdgeId(e) => write!(f, "edge {e} does not survive the contraction"),
            Error::AmbiguousAnchor(a, b) => {
                write!(f, "vertices {a} and {b} tie for the subtree anchor")
            }
            Error::NotATree => write!(f, "instance is not a tree"),
            Error::NotInTree => write!(f, "edge or vertex does not belong to the tree"),
            Error::NoPrizeLeft => write!(f, "no positive prize remains"),
            Error::InstanceTooLarge { edges, bound } => {
                write!(f, "instance has {edges} edges, enumeration bound is {bound}")
            }
            Error::TreeTooLarge { edges, bound } => {
                write!(f, "tree has {edges} edges, subset-search bound is {bound}")
            }
            Error::InvalidOrdering { position, message } => {
                write!(f, "invalid ordering at position {position}: {message}")
            }
            Error::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
            Error::Parse { line, message } => write!(f, "parse error on line {line}: {message}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
