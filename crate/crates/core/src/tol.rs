//! Numerical tolerances shared across the crate.
//!
//! All lengths are absolute, in input coordinate units.

/// A boundary hit within this distance of a vertex is a vertex hit.
pub const VERTEX_SNAP: f64 = 1e-9;

/// A point within this distance of a line or plane lies on it.
pub const ON_LINE: f64 = 1e-12;

/// Signed-area tolerance for containment / disjointness of partition pieces.
pub const AREA: f64 = 1e-12;

/// Position and direction closure tolerance for periodic billiards.
pub const CLOSE: f64 = 1e-9;

/// Angular tolerance (radians) for orthogonal endpoints of a billiard chord.
pub const ANGLE: f64 = 1e-9;

/// Incoming directions closer than this to edge-parallel are treated as grazing.
pub const TANGENTIAL: f64 = 1e-12;

/// Maximal gap between a numeric upper bound and an exact lower bound.
pub const CERTIFY: f64 = 1e-7;

/// Deduplication tolerance for reflection-group elements.
pub const GROUP_DEDUP: f64 = 1e-9;
