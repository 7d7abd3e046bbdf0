use crate::geom::Point;

/// Errors raised by the geometry, domain and query layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degenerate segment: both endpoints at ({}, {})", .0.x, .0.y)]
    DegenerateSegment(Point),

    #[error("ring is not simple")]
    NonSimpleRing,

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("point ({}, {}) lies outside the domain", .0.x, .0.y)]
    OutsideDomain(Point),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("path-length precondition violated: {0}")]
    NotVisible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed domain file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
