//! Closure lattices, irredundant bases and Boolean representable simplicial
//! complexes of finite permutation groups.

pub mod actions;
pub mod brsc;
pub mod cli;
pub mod explorer;
pub mod galois;
pub mod moore;
pub mod perm;
pub mod pointset;

pub use perm::{PermError, Permutation, PermutationGroup, StabChain, Subgroup};
pub use pointset::PointSet;
