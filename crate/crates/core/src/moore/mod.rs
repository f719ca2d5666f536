//! Moore families, transversals of chains, simplicial complexes, flats,
//! boolean representability and the matroid exchange property. Nothing in
//! here knows about groups.

mod complex;
mod family;
mod text;

pub use complex::{ComplexBases, Representability, RepresentabilityCertificate, SimplicialComplex};
pub use family::{validate_moore_family, ChainWitness, MooreFamily};
pub use text::{parse_moore_text, MooreDocument};

use thiserror::Error;

use crate::PointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MooreError {
    #[error("ground set is not a member")]
    GroundMissing,
    #[error("{0} ∩ {1} is not a member")]
    NotIntersectionClosed(PointSet, PointSet),
    #[error("{0} is not contained in the ground set")]
    NotInGround(PointSet),
    #[error("point {} is not in the ground set", .0 + 1)]
    PointOutsideGround(usize),
    #[error("point {} listed twice", .0 + 1)]
    DuplicateEntries(usize),
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("the empty set must be independent")]
    MissingEmptySet,
    #[error("{set} is independent but its subset {missing} is not")]
    NotDownwardClosed { set: PointSet, missing: PointSet },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
