use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector entries must be finite")]
    NonFinite,

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("origin is not interior to the body")]
    OriginNotInterior,

    #[error("point lies outside every dilate of the body")]
    OutsideCone,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("total mass {total} is below 1; no unit-mass slice exists")]
    MassBelowOne { total: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("grid too coarse: cell diameter {diameter} exceeds {budget}; need resolution >= {required}")]
    GridTooCoarse {
        diameter: f64,
        budget: f64,
        required: u32,
    },

    #[error("rejection sampler stalled: {accepted} accepted out of {tried} candidates")]
    RejectionStalled { tried: u64, accepted: u64 },

    #[error("linear program failed: {0}")]
    LpFailure(String),

    #[error("no tabulated distance for this pair of bodies")]
    DistanceNotTabulated,

    #[error("atom set too large for exact vertex enumeration: {atoms} atoms in dimension {dim}")]
    TooManyAtoms { atoms: usize, dim: usize },

    #[error("atoms do not span the space; gauge is undefined")]
    DegenerateSpan,

    #[error("search produced no feasible cover")]
    SearchFailed,

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
