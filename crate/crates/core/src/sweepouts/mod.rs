//! Sweepout families, the mass of their slices, and a deterministic grid
//! maximizer over their parameter spaces.

mod chain;
mod conic;
mod family;
mod maximize;
mod phi;
mod slices;

use thiserror::Error;

pub use chain::{ChainMass, ChainPiece};
pub use conic::{
    adaptive_simpson, hyperbola_sweepout_mass, monotone_graph_bound_check, AxisRect, ConicSlice,
    MonotoneAudit,
};
pub use family::{
    hemisphere_point, maximize_mass, Family, FamilyId, FamilyPoint, MaximizerReport, MIN_GRID,
};
pub use maximize::{grid_maximize, GridSpec, ParamRange, SearchResult};
pub use phi::{pair_phi_mass, phi_mass, PhiMap};
pub use slices::{line_sweepout_mass, plane_sweepout_mass};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("the map is defined on equilateral triangles only")]
    NotEquilateral,
    #[error("point ({0}, {1}) is not on the boundary")]
    OffBoundary(f64, f64),
    #[error("domain is not an axis-parallel rectangle")]
    NotAxisRectangle,
    #[error("all coefficients are zero")]
    ZeroCoefficients,
    #[error("need at least two samples of equal length")]
    BadSamples,
    #[error("samples are not monotone")]
    NonMonotone,
    #[error("grid needs at least {min} points per dimension, got {got}")]
    GridTooCoarse { min: usize, got: usize },
    #[error("no admissible parameter point on the grid")]
    NoAdmissiblePoint,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}
