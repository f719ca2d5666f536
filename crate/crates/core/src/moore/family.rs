use std::collections::{HashMap, HashSet};

use super::{MooreError, SimplicialComplex};
use crate::PointSet;

/// An intersection-closed family of subsets of `ground` containing `ground`.
///
/// Members are kept deduplicated in canonical order. An optional set of
/// join generators restricts which points may appear in independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreFamily {
    ground: PointSet,
    members: Vec<PointSet>,
    generators: Option<PointSet>,
}

/// A chain `F_0 ⊂ F_1 ⊂ .. ⊂ F_k` of members starting at the bottom, with
/// `enumeration[i] ∈ chain[i + 1] \ chain[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub chain: Vec<PointSet>,
    pub enumeration: Vec<usize>,
}

impl ChainWitness {
    pub fn len(&self) -> usize {
        self.enumeration.len()
    }

    pub fn is_empty(&self) -> bool {
        self.enumeration.is_empty()
    }

    /// Strictly increasing chain and each point new at its own step.
    pub fn is_valid(&self) -> bool {
        self.chain.len() == self.enumeration.len() + 1
            && self.enumeration.iter().enumerate().all(|(i, &x)| {
                let (lo, hi) = (&self.chain[i], &self.chain[i + 1]);
                lo.is_subset(hi) && lo != hi && hi.contains(x) && !lo.contains(x)
            })
    }
}

/// Checks the Moore family axioms and builds the family.
pub fn validate_moore_family(members: Vec<PointSet>, ground: PointSet) -> Result<MooreFamily, MooreError> {
    let width = ground.width();
    let mut unique: Vec<PointSet> = Vec::with_capacity(members.len());
    let mut seen = HashSet::new();
    for m in members {
        if m.width() != width {
            return Err(MooreError::WidthMismatch { expected: width, found: m.width() });
        }
        if !m.is_subset(&ground) {
            return Err(MooreError::NotInGround(m));
        }
        if seen.insert(m.clone()) {
            unique.push(m);
        }
    }
    if !seen.contains(&ground) {
        return Err(MooreError::GroundMissing);
    }
    unique.sort();
    for (i, a) in unique.iter().enumerate() {
        for b in &unique[i + 1..] {
            if !seen.contains(&a.intersection(b)) {
                return Err(MooreError::NotIntersectionClosed(a.clone(), b.clone()));
            }
        }
    }
    Ok(MooreFamily { ground, members: unique, generators: None })
}

impl MooreFamily {
    /// Builds a family already known to satisfy the axioms.
    pub(crate) fn from_sorted_unchecked(ground: PointSet, members: Vec<PointSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        MooreFamily { ground, members, generators: None }
    }

    /// Designates the join generators; independence is then only
    /// considered for subsets of `generators`.
    pub fn with_generators(mut self, generators: PointSet) -> Result<Self, MooreError> {
        if !generators.is_subset(&self.ground) {
            return Err(MooreError::NotInGround(generators));
        }
        self.generators = Some(generators);
        Ok(self)
    }

    pub fn ground(&self) -> &PointSet {
        &self.ground
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn generators(&self) -> Option<&PointSet> {
        self.generators.as_ref()
    }

    /// Points that may appear in independent sets.
    pub fn points(&self) -> &PointSet {
        self.generators.as_ref().unwrap_or(&self.ground)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Intersection of all members. Chains for transversals start here;
    /// it is empty in every family coming from a group without trivial
    /// orbits but need not be in general.
    pub fn bottom(&self) -> PointSet {
        self.members[0].clone()
    }

    /// Smallest member containing `y`. Also the join of two members via
    /// `closure(&a.union(&b))`.
    pub fn closure(&self, y: &PointSet) -> PointSet {
        assert!(y.is_subset(&self.ground), "{y} is not a subset of the ground set");
        let mut out = self.ground.clone();
        for m in &self.members {
            if y.is_subset(m) {
                out.intersect_with(m);
            }
        }
        out
    }

    pub fn join(&self, a: &PointSet, b: &PointSet) -> PointSet {
        self.closure(&a.union(b))
    }

    /// Whether `seq`, in this exact order, is a transversal of the
    /// successive differences of some chain. The canonical chain
    /// `F_i = closure({x_1, .., x_i})` witnesses it whenever any chain does.
    pub fn is_transversal(&self, seq: &[usize]) -> Result<Option<ChainWitness>, MooreError> {
        let mut prefix = PointSet::empty(self.ground.width());
        for &x in seq {
            if !self.ground.contains(x) {
                return Err(MooreError::PointOutsideGround(x));
            }
            if prefix.contains(x) {
                return Err(MooreError::DuplicateEntries(x));
            }
            prefix.insert(x);
        }
        let mut chain = vec![self.bottom()];
        let mut prefix = PointSet::empty(self.ground.width());
        for &x in seq {
            if chain.last().unwrap().contains(x) {
                return Ok(None);
            }
            prefix.insert(x);
            chain.push(self.closure(&prefix));
        }
        Ok(Some(ChainWitness { chain, enumeration: seq.to_vec() }))
    }

    /// Finds the lexicographically least enumeration of `y` that is a
    /// transversal, if any.
    pub fn is_independent_in_family(&self, y: &PointSet) -> Option<ChainWitness> {
        if !y.is_subset(self.points()) {
            return None;
        }
        let mut search =
            TransversalSearch { family: self, target: y, failed: HashSet::new(), closures: HashMap::new() };
        let mut order = Vec::with_capacity(y.len());
        let start = PointSet::empty(self.ground.width());
        if !search.extend(&start, &mut order) {
            return None;
        }
        self.is_transversal(&order).expect("search yields distinct points")
    }

    /// The complex `Tr(F)` on the designated points: every subset with
    /// an enumeration that is a transversal.
    pub fn transversal_complex(&self) -> SimplicialComplex {
        let width = self.ground.width();
        let mut visited: HashSet<PointSet> = HashSet::new();
        let mut stack = vec![PointSet::empty(width)];
        visited.insert(PointSet::empty(width));
        while let Some(set) = stack.pop() {
            let closed = self.closure(&set);
            for x in self.points().difference(&closed).iter() {
                let next = set.with(x);
                if visited.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        let mut independents: Vec<PointSet> = visited.into_iter().collect();
        independents.sort();
        SimplicialComplex::from_sorted_unchecked(self.points().clone(), independents)
    }
}

struct TransversalSearch<'a> {
    family: &'a MooreFamily,
    target: &'a PointSet,
    /// Prefix sets from which no completion exists.
    failed: HashSet<PointSet>,
    closures: HashMap<PointSet, PointSet>,
}

impl TransversalSearch<'_> {
    fn extend(&mut self, prefix: &PointSet, order: &mut Vec<usize>) -> bool {
        if prefix == self.target {
            return true;
        }
        if self.failed.contains(prefix) {
            return false;
        }
        let closed = match self.closures.get(prefix) {
            Some(c) => c.clone(),
            None => {
                let c = self.family.closure(prefix);
                self.closures.insert(prefix.clone(), c.clone());
                c
            }
        };
        for x in self.target.difference(&closed).iter() {
            order.push(x);
            if self.extend(&prefix.with(x), order) {
                return true;
            }
            order.pop();
        }
        self.failed.insert(prefix.clone());
        false
    }
}
