use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Closed forms containing 1/omega are undefined at omega = 0; limits are
    /// taken through sequences instead.
    #[error("omega = 0 is not admissible here; approach the limit with a sequence of nonzero omega")]
    ZeroFrequency,

    #[error("non-finite coefficient at k = {k}, t = {t}")]
    NonFiniteCoefficient { k: f64, t: f64 },

    #[error("accumulated exponent real part {value} exceeds cap {cap} at k = {k}")]
    ExponentOverflow { k: f64, value: f64, cap: f64 },

    #[error("boundary leakage: edge probability {mass:e} exceeds {threshold:e} at t = {t}")]
    BoundaryLeakage { mass: f64, threshold: f64, t: f64 },

    #[error("unstable time step: stability number {number} exceeds {limit}")]
    Unstable { number: f64, limit: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("time mesh mismatch: {0}")]
    MeshMismatch(String),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("quadrature failed on [{a}, {b}]: error estimate {estimate:e}")]
    Quadrature { a: f64, b: f64, estimate: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("config: {0}")]
    Config(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
