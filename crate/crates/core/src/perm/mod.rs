//! Permutations, permutation groups, orbits and pointwise stabilizers.

mod chain;
mod group;
mod permutation;

pub use chain::StabChain;
pub use group::{enumerate_elements, ElementStore, PermutationGroup, Subgroup, DEFAULT_ELEMENT_CAP};
pub use permutation::Permutation;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("point {} outside domain of degree {degree}", point + 1)]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("image table is not a bijection")]
    NotBijection,
    #[error("point {} appears in two cycles", point + 1)]
    CyclesNotDisjoint { point: usize },
    #[error("group order exceeds element cap {cap}")]
    OrderExceedsCap { cap: usize },
    #[error("{0} is not an element of the parent group")]
    NotInParent(String),
}
