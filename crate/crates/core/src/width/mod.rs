//! Geometric width, partition lower bounds, length lattices and the
//! certificates that combine them with sweepout upper bounds.

mod caliper;
mod certify;
mod lattice;
mod partition;

use thiserror::Error;

use crate::geom::GeomError;

pub use caliper::{canonical_direction, geometric_width, WidthResult};
pub use certify::{
    certify, decimal17, max_parallel_chord, CertifyError, CertifyOptions, Estimate, LowerMethod,
    LowerStep, WidthCertificate, WidthProblem,
};
pub use lattice::{
    lattice_lengths, min_sum_at_least, nearest_length, GapBound, LatticeKind, LatticeValue,
    LengthLattice,
};
pub use partition::{
    diagonal_split, ls_lower_bound, medial_subdivision, quadrisect, width_rule, PartitionBound,
    PieceBound,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WidthError {
    #[error("partition has no pieces")]
    EmptyPartition,
    #[error("piece {0} has p = 0")]
    ZeroIndex(usize),
    #[error("pieces {i} and {j} overlap in area {area:e}")]
    Overlap { i: usize, j: usize, area: f64 },
    #[error("piece {piece} has vertex ({x}, {y}) outside the domain")]
    NotContained { piece: usize, x: f64, y: f64 },
    #[error("expected a {0}")]
    WrongShape(&'static str),
    #[error("threshold must be positive and finite, got {0}")]
    InvalidThreshold(f64),
    #[error("lattice cutoff {cutoff} is below the required {needed}")]
    InsufficientLattice { cutoff: f64, needed: f64 },
    #[error(transparent)]
    Geometry(#[from] GeomError),
}
