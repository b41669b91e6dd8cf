//! Crate-wide error type.

/// Everything that can go wrong in the geometry and measure pipelines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("point is not strictly interior to the body")]
    PointNotInterior,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("point is not on the boundary")]
    NotOnBoundary,
    #[error("operation requires a C2 representation (ellipse or support body)")]
    UnsupportedRepresentation,
    #[error("affine map is singular")]
    SingularMap,
    #[error("homography maps the body across the line at infinity")]
    ImageUnbounded,
    #[error("region is not contained in the body")]
    RegionNotInside,
    #[error("triangle is not contained in the body")]
    TriangleNotInside,
    #[error("boundary point is neither a corner nor on a flat edge")]
    NotACornerOrFlat,
    #[error("clearance delta is too large for this body")]
    DeltaTooLarge,
    #[error("argument outside [-1, 1]")]
    OutOfRange,
    #[error("t must be nonnegative")]
    NegativeT,
    #[error("t must be strictly positive")]
    NonpositiveT,
    #[error("point outside the open triangle domain")]
    OutsideDomain,
    #[error("point outside the open square")]
    OutsideSquare,
    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
    #[error("ellipse solver did not converge")]
    SolverDidNotConverge,
    #[error("body is an ellipse: both witness areas equal pi (john {john_area}, loewner {loewner_area})")]
    BodyIsEllipse { john_area: f64, loewner_area: f64 },
    #[error("ray misses the circle")]
    DegenerateDirection,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("chord does not meet the tangent circle inside the body")]
    NoIntersection,
    #[error("rectangle is not contained in the body")]
    RectangleNotInside,
}

pub type Result<T> = std::result::Result<T, Error>;
