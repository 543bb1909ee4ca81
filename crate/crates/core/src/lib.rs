//! Numerical kernel for the exterior anisotropic Bernoulli free boundary problem in 2D.
//!
//! Given a compact convex core `K` and a boundary speed `Q` on the unit circle, the
//! problem asks for `u` harmonic in `{u > 0} \ K`, equal to one on `K`, whose free
//! boundary satisfies `|∇u| = Q(n)` with `n` the inner normal. This crate provides
//!
//! * [`geom`]: planar convex bodies (support functions, Minkowski dilation and erosion,
//!   facets, extreme and exposed points, Hausdorff distance),
//! * [`anisotropy`]: continuous and upper semicontinuous speeds together with their
//!   monotone Lipschitz approximations,
//! * [`harmonic`]: a Shortley–Weller finite difference solver for the annular Dirichlet
//!   problem and boundary gradient probes,
//! * [`bernoulli`]: the trial free boundary iteration computing minimal supersolutions,
//!   residual reports, comparisons and blow-up slopes.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
// NaN-rejecting comparisons such as `!(x > 0.0)` are intentional.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod anisotropy;
pub mod bernoulli;
mod error;
pub mod geom;
pub mod harmonic;
mod linalg;
pub(crate) mod math;

pub use anisotropy::{Anisotropy, AnisotropyKind};
pub use bernoulli::{CompareVerdict, Comparison, FacetStats, FreeBoundarySolution, ResidualReport, SolverParams};
pub use error::{Error, Result};
pub use geom::{ConvexPolygon, Direction, Facet, Point};
pub use harmonic::{BoundarySample, BoundaryTrace, HarmonicField};
