use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),

    #[error("commutativity condition of loops fails at {0}")]
    LoopCommutativity(String),

    #[error("expected a loop-free bound quiver")]
    HasLoops,

    #[error("representation does not satisfy relation {relation}")]
    RelationViolated { relation: usize },

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("operation needs a finite field")]
    InfiniteField,

    #[error("search space of {0} elements exceeds the configured ceiling")]
    SearchCeiling(u128),

    #[error("no witness found: {0}")]
    NotFound(String),

    #[error("invalid matrix: {0}")]
    Matrix(String),

    #[error("numerical method did not converge: {0}")]
    NoConvergence(String),

    #[error("input matrices do not commute")]
    NonCommuting,

    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}
