use thiserror::Error;

use crate::recognition::ForbiddenWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has {n} vertices; at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex order must list every vertex exactly once")]
    InvalidOrder,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set is not a module of the host graph")]
    NotAModule,

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("input is not (P5, co-P5)-free: {0}")]
    NotFree(ForbiddenWitness),

    #[error("vertices {0:?} do not induce a C5 in the given cyclic order")]
    NotAC5(Vec<usize>),

    #[error("maximal buoy grown from {seed:?} is neither full nor a module")]
    BuoyNotModule { seed: Vec<usize> },

    #[error("invalid buoy: {0}")]
    InvalidBuoy(String),

    #[error("pseudo-buoy coloring precondition violated: {0}")]
    PseudoBuoyPrecondition(String),

    #[error("verification of level {k} failed for {graph6}: {reason}")]
    Verification {
        k: usize,
        graph6: String,
        reason: String,
    },

    #[error("level {k} family lookup failed for {graph6}: {reason}")]
    FamilyMiss {
        k: usize,
        graph6: String,
        reason: String,
    },

    #[error("family cache: {0}")]
    Cache(String),

    #[error("certificate parse error at line {line}: {message}")]
    CertificateParse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
