use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unsupported prime {0}")]
    UnsupportedPrime(u32),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singularities are not isolated (Hilbert polynomial of degree {0})")]
    NonIsolatedSingularities(usize),

    #[error("Hilbert polynomial is not that of a free divisor: {0}")]
    NotFreeCompatible(String),

    #[error("genericity failure: {0}")]
    GenericityFailure(String),

    #[error("fiber of the gradient map is not zero-dimensional")]
    NonZeroDimensionalFiber,

    #[error("affine chart does not contain all singular points")]
    ChartFailure,

    #[error("degenerate target point: {0}")]
    DegenerateTarget(String),

    #[error("arrangement is not generic: {0}")]
    NotGeneric(String),

    #[error("degree {d} out of range for {family}")]
    DegreeOutOfRange { family: String, d: u32 },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::InvalidRing(_) => 2,
            Error::ResourceLimit(_) => 4,
            _ => 3,
        }
    }
}
