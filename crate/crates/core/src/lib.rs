//! Convex geometry kernel and plank-covering toolkit.
//!
//! The crate is organized by subsystem:
//!
//! - [`geometry`]: convex bodies behind a support/membership oracle, widths,
//!   volumes, projections, and an exact planar engine for circular-arc polygons.
//! - [`coverings`]: planks, cylinders, coverage certificates and the theorem
//!   harnesses built on top of them.
//! - [`inradii`]: relative inradii, rounded bodies, successive inradii and
//!   hyperplane slicing.
//! - [`partial`]: volumes covered by plank unions inside balls and triangles.
//! - [`lattice`]: lattice points, lattice width and hyperplane covers.
//! - [`bounds`]: closed-form extremal constants and ball-polyhedra.
//!
//! Stochastic routines take an explicit seed and are bit-identical whether run
//! serially or on the rayon pool (see [`exec`]).

pub mod bounds;
pub mod coverings;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod inradii;
pub mod lattice;
pub mod lp;
pub mod partial;
pub mod quad;

pub use error::{Error, Result};
pub use geometry::{ArcPolygon, ConvexBody, Direction, Polytope, Vector};

/// Module-wide geometric tolerance for membership and width comparisons.
pub const EPS: f64 = 1e-9;
