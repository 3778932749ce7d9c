//! Triangulations, convex hulls and polytope measurements.

pub mod hull;
pub mod placing;
pub mod regular;

pub use hull::{Facet, HullDelta, Hyperplane, TriangulatedHull};
pub use placing::{affine_dim, Placement, Placing, PointKernel, RatPoints};
pub use regular::{lifted_placing, placing_refine, regular_subdivision, upper_simplices, LiftedColumns, RegularSubdivision};
