use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("order matrix is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("order axiom `{axiom}` violated at {witness:?}")]
    AxiomViolated { axiom: &'static str, witness: Vec<usize> },
    #[error("index {index} out of range for poset with {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("lower set does not belong to the given poset")]
    BaseMismatch,
    #[error("map is not monotone: {0} <= {1} but images are not ordered")]
    NotMonotone(usize, usize),
    #[error("size guard exceeded: {what} is {size}, bound is {bound}")]
    SizeGuard { what: &'static str, size: usize, bound: usize },
    #[error("poset is not a complete lattice")]
    NotALattice,
    #[error("lattice is not continuous for doctrine `{0}`")]
    NotContinuous(String),
    #[error("lattice is not algebraic for doctrine `{0}`")]
    NotAlgebraic(String),
    #[error("map has no left adjoint (does not preserve all meets)")]
    NoLeftAdjoint,
    #[error("map is not a morphism: {law} fails at {witness}")]
    NotAMorphism { law: &'static str, witness: String },
    #[error("required meet missing: {0}")]
    MissingMeet(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Invariant(String),
    #[error("value out of range [0,1]: {0}")]
    OutOfRange(String),
    #[error("piecewise-linear map is invalid: {0}")]
    InvalidPl(String),
    #[error("map is not surjective (not an element of U)")]
    NotSurjective,
    #[error("incompatible pieces for stacking; witness u' = {u}, v' = {v}")]
    Incompatible { u: String, v: String },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("not way-below: {0}")]
    NotWayBelow(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown doctrine `{0}`")]
    UnknownDoctrine(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
