use thiserror::Error;

use crate::geometry::EdgeKey;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),

    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),

    #[error("a point set needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("coordinate of point {0} exceeds the supported magnitude of 2^62")]
    CoordinateOutOfRange(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex index {0} is out of range")]
    InvalidVertex(usize),

    #[error("edge {0} is not in the triangulation")]
    EdgeNotInTriangulation(EdgeKey),

    #[error("edge {0} is not flippable")]
    NotFlippable(EdgeKey),

    #[error("edge set is not ps-flippable: {0}")]
    NotPsFlippable(String),

    #[error("edges {0} and {1} cross")]
    CrossingEdges(EdgeKey, EdgeKey),

    #[error("edge set is not a triangulation: {0}")]
    NotATriangulation(String),

    #[error("{what} is capped at N = {cap}, instance has N = {n}")]
    InstanceTooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("argument {value} outside domain of {function}: {expected}")]
    DomainError {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("optimizer for {0} failed to converge")]
    ConvergenceFailure(&'static str),

    #[error("invalid generator size: {0}")]
    SizeError(String),

    #[error("could not place points in general position: {0}")]
    GeneralPositionFailure(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
