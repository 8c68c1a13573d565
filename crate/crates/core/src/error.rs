use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FenceError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("vertices {0} and {1} coincide")]
    CoincidentVertices(usize, usize),
    #[error("polygon is not counterclockwise convex at vertex {index} (cross = {cross:e})")]
    NotConvex { index: usize, cross: f64 },
    #[error("degenerate body: {0}")]
    Degenerate(String),
    #[error("point ({x}, {y}) is not on the body boundary (distance {distance:e})")]
    OffBoundary { x: f64, y: f64, distance: f64 },
    #[error("arc leaves the body")]
    ArcOutsideBody,
    #[error("angle {0} outside the admissible range")]
    AngleOutOfRange(f64),
    #[error("alpha must be at least 1/2, got {0}")]
    AlphaTooSmall(f64),
    #[error("invalid theta profile: {0}")]
    InvalidProfile(String),
    #[error("profile does not close: |∫ M (cos, sin)| over [0, π] = {0:e}")]
    ProfileNotClosed(f64),
    #[error("profile is infeasible: built boundary is not convex near sigma = {sigma}")]
    ProfileNotConvex { sigma: f64 },
    #[error("body is not centrosymmetric: vertex {0} has no mirror image")]
    NotCentrosymmetric(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, FenceError>;
