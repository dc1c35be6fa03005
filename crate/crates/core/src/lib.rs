//! Convex bodies on the unit sphere, polar duality, widths, and polytope
//! approximation of bodies of constant width π/2.

pub mod approx;
pub mod body;
pub mod cli;
pub mod error;
pub mod generators;
pub mod io;
pub mod metrics;
pub mod render;
pub mod sphere;

pub use approx::{approximate_polytope, certify, ApproximationConfig, Certificate, StepRecord};
pub use body::{BoundaryPiece, ConvexBody, Polytope};
pub use error::{Error, Result};
pub use sphere::{GreatArc, Hemisphere, Lune, SmallCircleArc, UnitVector};
