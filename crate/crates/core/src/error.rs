use alloc::boxed::Box;
use core::fmt;

use crate::bernoulli::FreeBoundarySolution;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone)]
pub enum Error {
    /// Fewer than three distinct vertices, non-finite coordinates or a reflex turn.
    InvalidPolygon(&'static str),
    /// Erosion radius at or above the inradius of the body.
    EmptyErosion { radius: f64 },
    /// Anisotropy data violating positivity, ordering or upper semicontinuity.
    InvalidAnisotropy(&'static str),
    /// Inner body not inside the outer one with a gap of at least four grid cells.
    GeometryTooTight { gap: f64, required: f64 },
    /// The iterative linear solver failed to reach its residual target.
    SolveDiverged { iterations: usize, residual: f64 },
    /// A normal probe never crossed the requested level inside the annulus.
    NormalProbeFailed { x: f64, y: f64 },
    /// Evaluation at the point charge of the half-plane potential.
    SingularPoint,
    /// Invalid solver parameters.
    InvalidParams(&'static str),
    /// The trial iteration ran out of iterations; carries the best iterate.
    MaxIterExceeded { iterations: usize, best: Box<FreeBoundarySolution> },
    /// Fields resolved at grid spacings too different to be compared node by node.
    GridMismatch { h_a: f64, h_b: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPolygon(why) => write!(f, "invalid convex polygon: {why}"),
            Error::EmptyErosion { radius } => {
                write!(f, "erosion by radius {radius} leaves an empty body")
            }
            Error::InvalidAnisotropy(why) => write!(f, "invalid anisotropy: {why}"),
            Error::GeometryTooTight { gap, required } => {
                write!(f, "inner body too close to outer boundary: gap {gap:.3e} < required {required:.3e}")
            }
            Error::SolveDiverged { iterations, residual } => {
                write!(f, "linear solve failed after {iterations} iterations (residual {residual:.3e})")
            }
            Error::NormalProbeFailed { x, y } => {
                write!(f, "normal probe from ({x}, {y}) did not cross the level line")
            }
            Error::SingularPoint => write!(f, "evaluation at the point charge (0, 1)"),
            Error::InvalidParams(why) => write!(f, "invalid solver parameters: {why}"),
            Error::MaxIterExceeded { iterations, best } => write!(
                f,
                "free boundary iteration did not converge in {iterations} iterations \
                 (best max residual {:.3e})",
                best.max_residual()
            ),
            Error::GridMismatch { h_a, h_b } => {
                write!(f, "grid spacings {h_a} and {h_b} are too different to compare")
            }
        }
    }
}

impl core::error::Error for Error {}
