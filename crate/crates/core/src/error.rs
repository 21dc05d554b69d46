use thiserror::Error;

use crate::geometry::Edge;
use crate::triangulation::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a point set needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("point {index} has a coordinate outside [-{limit}, {limit}]")]
    CoordinateOutOfRange { index: usize, limit: i64 },
    #[error("edge {0} refers to a point outside the point set")]
    EdgeOutOfRange(Edge),

    #[error("edge set is not a triangulation: {0}")]
    NotATriangulation(String),
    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),
    #[error("edge {0} is not present in the triangulation")]
    NotPresent(Edge),
    #[error("edge {0} is not flippable")]
    NotFlippable(Edge),
    #[error("event {index} cannot be applied: {reason}")]
    InvalidAt { index: usize, reason: String },

    #[error("constrained edges {0} and {1} cross")]
    ConstraintCrossing(Edge, Edge),
    #[error("constrained edge {0} is missing from the starting triangulation")]
    ConstraintMissing(Edge),
    #[error("pinned edge {0} is missing from one of the triangulations")]
    PinnedMissing(Edge),
    #[error("triangulations are over different point sets")]
    PointSetMismatch,

    #[error("no swap vertex is reachable from the pair ({0}, {1})")]
    NotFound(Edge, Edge),
    #[error("search budget of {0} pair states exhausted")]
    BudgetExhausted(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("label universes differ: {0}")]
    LabelUniverseMismatch(String),
    #[error("label {label} sits on {from} and {to}, which lie in different orbits")]
    Infeasible { label: Label, from: Edge, to: Edge },
    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("instance has {n} points, above the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("state budget of {0} exceeded during enumeration")]
    StateBudget(usize),
    #[error("angle vectors tie for triangulation pairs {0:?}")]
    DegenerateOrder(Vec<(usize, usize)>),
}
