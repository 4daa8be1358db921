//! Widths, billiards and min-max sweepouts of convex polygons.
//!
//! - [`geom`]: primitives and predicates.
//! - [`width`]: geometric width, partition lower bounds, length lattices and
//!   certificates of p-width values.
//! - [`billiards`]: trajectory simulation, unfolding and the reflection
//!   tessellation of the equilateral triangle.
//! - [`sweepouts`]: masses of explicit sweepout families and their maximizer.
//! - [`svg`]: figures of polygons with paths drawn over them.

pub mod billiards;
pub mod geom;
pub mod svg;
pub mod sweepouts;
pub mod tol;
pub mod width;
