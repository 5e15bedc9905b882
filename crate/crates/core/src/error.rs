use core::fmt;

use crate::AsNumber;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An arc whose tail and head are the same AS.
    SelfLoop(AsNumber),
    /// A vertex argument that is not part of the digraph.
    UnknownVertex(AsNumber),
    /// Source and target of a path query coincide.
    SameEndpoints(AsNumber),
    /// Adjacency matrix side does not match the vertex list.
    DimensionMismatch {
        expected: usize,
        row: Option<usize>,
        found: usize,
    },
    /// A matrix cell outside `{0, 1}`.
    BadEntry {
        row: usize,
        column: usize,
        value: u8,
    },
    NonzeroDiagonal(AsNumber),
    /// Vertex list of an adjacency matrix repeats an AS.
    DuplicateVertex(AsNumber),
    /// A path that still visits an AS twice after prepending is collapsed.
    LoopedPath,
    EmptyPath,
    /// Policy rule whose subject and peer coincide.
    SelfPolicy(AsNumber),
    RosterTooSmall(usize),
    /// Digraph maps whose keys or vertex sets disagree on the roster.
    InconsistentRoster(AsNumber),
    /// Exhaustive oracle refused an input above its arc budget.
    OracleCapacity {
        arcs: usize,
        limit: usize,
    },
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop(v) => write!(f, "self-loop at AS{v}"),
            Error::UnknownVertex(v) => write!(f, "AS{v} is not a vertex of the digraph"),
            Error::SameEndpoints(v) => write!(f, "source and target are both AS{v}"),
            Error::DimensionMismatch { expected, row: None, found } => {
                write!(f, "dimension mismatch: {expected} vertices but {found} rows")
            }
            Error::DimensionMismatch { expected, row: Some(r), found } => {
                write!(f, "dimension mismatch: row {r} has {found} columns, expected {expected}")
            }
            Error::BadEntry { row, column, value } => {
                write!(f, "bad entry {value} at row {row}, column {column}")
            }
            Error::NonzeroDiagonal(v) => write!(f, "nonzero diagonal at AS{v}"),
            Error::DuplicateVertex(v) => write!(f, "AS{v} listed twice"),
            Error::LoopedPath => f.write_str("path visits an AS twice"),
            Error::EmptyPath => f.write_str("empty path"),
            Error::SelfPolicy(v) => write!(f, "AS{v} has a policy toward itself"),
            Error::RosterTooSmall(n) => write!(f, "roster has {n} members, need at least 2"),
            Error::InconsistentRoster(v) => write!(f, "inconsistent roster at AS{v}"),
            Error::OracleCapacity { arcs, limit } => {
                write!(f, "oracle limited to {limit} arcs, digraph has {arcs}")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
