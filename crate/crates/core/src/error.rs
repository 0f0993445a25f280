use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("zero coordinate on invertible variable `{0}`")]
    ZeroCoordinate(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("coefficient {coefficient} in degree {degree:?} is not in the canonical ideal")]
    Membership { degree: Vec<i64>, coefficient: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("hypothesis failed: {hypothesis} (witness: {witness})")]
    Hypothesis { hypothesis: String, witness: String },
    #[error("orbit is not torsion-free: stabilizer contains {0:?}")]
    Torsion(Vec<i64>),
}

pub type Result<T> = std::result::Result<T, Error>;
