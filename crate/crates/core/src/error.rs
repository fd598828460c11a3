use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{n} vertices exceeds the configured cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },

    #[error("{what} needs at least {min} vertices, got {n}")]
    TooFewVertices {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("expected a vertex set of size {expected}, got {size}")]
    InvalidSetSize { size: usize, expected: &'static str },

    #[error("vertices {0:?} are not pairwise distinct")]
    RepeatedVertex(Vec<usize>),

    #[error("{0:?} is not an edge")]
    NotAnEdge([usize; 3]),

    #[error("edge {0:?} lies in no copy of K4")]
    EdgeNotInTetrahedron([usize; 3]),

    #[error("walks do not overlap: {left:?} vs {right:?}")]
    OverlapMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("at most {max} pairs are allowed, got {given}")]
    TooManyPairs { given: usize, max: usize },

    #[error("absorber label collision on vertex {0}")]
    LabelCollision(usize),

    #[error("target vertex {0} belongs to the absorber")]
    TargetInAbsorber(usize),

    #[error("vertex {0} is not donatable")]
    NotDonatable(usize),

    #[error("no available absorber for tuple {0:?}")]
    InsufficientAbsorbers(Vec<usize>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
