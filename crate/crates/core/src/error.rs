use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero or non-finite vector cannot be normalized")]
    ZeroVector,
    #[error("lune poles are equal or antipodal")]
    DegenerateLune,
    #[error("arc endpoints are equal or antipodal")]
    DegenerateArc,
    #[error("side hint is orthogonal to the pole line")]
    AmbiguousSide,
    #[error("radius {0} outside (0, pi/2)")]
    BadRadius(f64),
    #[error("azimuth span {0} outside (0, 2pi]")]
    BadSpan(f64),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("point is {0:e} away from the boundary")]
    NotOnBoundary(f64),
    #[error("body is not self-dual (residual {0:e})")]
    NotSelfDual(f64),
    #[error("hemisphere does not support the body (deviation {0:e})")]
    NotSupporting(f64),
    #[error("piece {0} is a great arc, not strictly convex")]
    NotStrictlyConvex(usize),
    #[error("dual arc overlaps the cut region: {0}")]
    DualOverlap(String),
    #[error("body is not of constant width pi/2 (thickness {thickness}, spread {spread:e})")]
    NotConstantWidth { thickness: f64, spread: f64 },
    #[error("round budget exhausted after {rounds} rounds with {remaining} strictly convex pieces left")]
    BudgetExhausted { rounds: usize, remaining: usize },
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("seed is not contained in its polar (diameter {0})")]
    SeedNotSubdual(f64),
    #[error("hemisphere clip leaves an empty body")]
    EmptyIntersection,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Short machine-readable name, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::DegenerateLune => "DegenerateLune",
            Error::DegenerateArc => "DegenerateArc",
            Error::AmbiguousSide => "AmbiguousSide",
            Error::BadRadius(_) => "BadRadius",
            Error::BadSpan(_) => "BadSpan",
            Error::InvalidBody(_) => "InvalidBody",
            Error::NotOnBoundary(_) => "NotOnBoundary",
            Error::NotSelfDual(_) => "NotSelfDual",
            Error::NotSupporting(_) => "NotSupporting",
            Error::NotStrictlyConvex(_) => "NotStrictlyConvex",
            Error::DualOverlap(_) => "DualOverlap",
            Error::NotConstantWidth { .. } => "NotConstantWidth",
            Error::BudgetExhausted { .. } => "BudgetExhausted",
            Error::CertificationFailed(_) => "CertificationFailed",
            Error::SeedNotSubdual(_) => "SeedNotSubdual",
            Error::EmptyIntersection => "EmptyIntersection",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}
