//! Billiard trajectories in convex polygons.
//!
//! Plain billiards stop at vertices. In the equilateral triangle the
//! T-billiard rule instead reflects a vertex hit across `ℓ_v`, the line
//! through the vertex parallel to the opposite side. Trajectories can be
//! unfolded through the reflection tessellation, and closed ones have lengths
//! in the triangle length lattice.

mod export;
mod simulate;
mod unfold;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Feature, GeomError, Point2, Segment2, Vector2};

pub use export::{trajectory_json, trajectory_svg};
pub use simulate::{ell_v, simulate, step_reflect, Budget, Reflection};
pub use unfold::{
    lattice_membership, tessellate, unfold, LatticeFit, TessellationElement, Unfolding,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BilliardError {
    #[error("T-billiard mode needs an equilateral triangle")]
    NotEquilateral,
    #[error("start point ({0}, {1}) is outside the polygon")]
    StartOutside(f64, f64),
    #[error("point ({0}, {1}) is not on the boundary")]
    OffBoundary(f64, f64),
    #[error("direction does not arrive at the boundary")]
    NotArriving,
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// Reflection rule at vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Vertex hits end the trajectory.
    #[default]
    Plain,
    /// Vertex hits reflect across `ℓ_v` (equilateral triangles only).
    TBilliard,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::TBilliard => "t-billiard",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Mode::Plain),
            "t-billiard" => Ok(Mode::TBilliard),
            _ => Err(format!("unknown mode `{s}` (expected plain or t-billiard)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truncation {
    BounceBudget,
    LengthBudget,
    /// The incoming direction was within 1e-12 of edge-parallel.
    Tangential,
}

/// How a simulated trajectory ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum TerminalClass {
    /// Returned to the start point with the start direction.
    Periodic {
        residual: f64,
    },
    /// Started and ended meeting the boundary orthogonally. Angles are the
    /// deviations from π/2 at both ends.
    OrthogonalChord {
        start_dev: f64,
        end_dev: f64,
    },
    /// Stopped at a vertex. `closing` is set in an equilateral triangle when
    /// both ends are orthogonal to the boundary or to `ℓ_v`.
    VertexTerminated {
        vertex: usize,
        closing: bool,
    },
    Truncated {
        reason: Truncation,
    },
}

impl TerminalClass {
    pub fn name(&self) -> &'static str {
        match self {
            TerminalClass::Periodic { .. } => "periodic",
            TerminalClass::OrthogonalChord { .. } => "orthogonal-chord",
            TerminalClass::VertexTerminated { .. } => "vertex-terminated",
            TerminalClass::Truncated { .. } => "truncated",
        }
    }
}

impl fmt::Display for TerminalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounce {
    pub point: Point2,
    pub feature: Feature,
    pub dir_in: Vector2,
    pub dir_out: Vector2,
}

/// Segments of a billiard path. `bounces[k]` joins `segments[k]` to
/// `segments[k + 1]`; a periodic orbit started on the boundary also records
/// its closing bounce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub mode: Mode,
    pub segments: Vec<Segment2>,
    pub bounces: Vec<Bounce>,
    pub terminal: TerminalClass,
}

impl Trajectory {
    pub fn length(&self) -> f64 {
        self.segments.iter().map(|s| s.length()).sum()
    }

    pub fn start(&self) -> Option<Point2> {
        self.segments.first().map(|s| s.a)
    }

    pub fn end(&self) -> Option<Point2> {
        self.segments.last().map(|s| s.b)
    }
}
