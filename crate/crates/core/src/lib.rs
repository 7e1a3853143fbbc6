//! Exact three-dimensional alpha shapes.
//!
//! The pipeline runs from integer point coordinates through a Delaunay
//! triangulation built by incremental flipping, to per-simplex alpha
//! intervals, the alpha spectrum and the shape signatures. Every sign decision
//! is made by the symbolically perturbed predicates in [`kernel`], so
//! degenerate input needs no special handling.

pub mod alpha;
pub mod delaunay;
pub mod kernel;
pub mod scalar;
pub mod shell;
pub mod signatures;

pub use delaunay::{DelaunayError, SimplexKey, Triangulation};
pub use kernel::{ExactPoint, Kernel, KernelError, Polarity, RadiusSq, Sign, Threshold};
pub use scalar::{ExactScalar, FloatScalar};

/// Coordinate type used by the pipeline.
pub type Coord = num_bigint::BigInt;
/// Point type used by the pipeline.
pub type Point = ExactPoint<Coord>;
/// Squared radius type used by the pipeline.
pub type Radius = RadiusSq<Coord>;
