use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("angle {0} is outside (0, 1)")]
    AngleOutOfRange(String),

    #[error("braid is not positive (letter {position} is {letter})")]
    NotPositive { position: usize, letter: i32 },

    #[error("closure has {components} components; a knot is required")]
    NotAKnot { components: usize },

    #[error("quasi-morphism {name} is undefined here: {reason}")]
    Undefined { name: String, reason: String },

    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("invalid Reeb tree: {0}")]
    InvalidTree(String),

    #[error("profile does not match tree: {0}")]
    ProfileMismatch(String),

    #[error("grid rejected: {0}")]
    Grid(String),

    #[error("numerical fault: {0}")]
    Numerical(String),

    #[error("degenerate crossing configuration: {0}")]
    DegenerateCrossing(String),

    #[error("too many rejected samples: {rejected} of {attempted}")]
    TooManyRejections { rejected: usize, attempted: usize },
}
