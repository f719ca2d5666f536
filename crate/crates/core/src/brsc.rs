//! The simplicial complex of a permutation group whose independent sets are
//! the irredundant sets and whose dense sets are the bases.
//!
//! A sequence `(x_1, .., x_k)` is irredundant when each `x_i` is moved by
//! the pointwise stabilizer of its predecessors, i.e. the stabilizers
//! strictly descend. A set is independent when some enumeration of it is
//! irredundant. All searches try points in ascending order and memoize on
//! prefix *sets* (the stabilizer depends only on the set), so the witness
//! returned is always the lexicographically least one.

use std::collections::HashSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::galois::{self, GaloisError};
use crate::moore::SimplicialComplex;
use crate::{PermutationGroup, PointSet, Subgroup};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const DEFAULT_COMPLEX_DEGREE: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrscError {
    #[error("point {} listed twice", .0 + 1)]
    DuplicateEntries(usize),
    #[error("point {} outside the domain", .0 + 1)]
    PointOutOfRange(usize),
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64, partial: Box<BaseEnumeration> },
    #[error("minimum base search exceeded its budget of {budget} nodes")]
    MinBaseBudgetExceeded { budget: u64, searched_below: usize },
    #[error("degree {degree} exceeds the complex bound {bound}")]
    SizeExplosion { degree: usize, bound: usize },
}

/// An irredundant ordering with the orders of the stabilizer chain
/// `G ⊋ G_{x_1} ⊋ G_{x_1,x_2} ⊋ ..`, starting with `|G|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrredundanceWitness {
    pub order: Vec<usize>,
    pub stabilizer_orders: Vec<BigUint>,
}

impl IrredundanceWitness {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_strictly_descending(&self) -> bool {
        self.stabilizer_orders.len() == self.order.len() + 1 && self.stabilizer_orders.windows(2).all(|w| w[0] > w[1])
    }

    /// Whether the final stabilizer is trivial.
    pub fn reaches_base(&self) -> bool {
        self.stabilizer_orders.last().is_some_and(|o| *o == BigUint::from(1u32))
    }

    pub fn points(&self, width: usize) -> PointSet {
        PointSet::from_points(width, self.order.iter().copied()).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseReport {
    pub base: PointSet,
    pub irredundant: bool,
    pub witness: Option<IrredundanceWitness>,
    pub size: usize,
}

fn check_sequence(g: &PermutationGroup, seq: &[usize]) -> Result<(), BrscError> {
    let mut seen = PointSet::empty(g.degree());
    for &x in seq {
        if x >= g.degree() {
            return Err(BrscError::PointOutOfRange(x));
        }
        if seen.contains(x) {
            return Err(BrscError::DuplicateEntries(x));
        }
        seen.insert(x);
    }
    Ok(())
}

/// Checks this exact order.
pub fn is_irredundant_sequence(g: &PermutationGroup, seq: &[usize]) -> Result<Option<IrredundanceWitness>, BrscError> {
    check_sequence(g, seq)?;
    let mut current = g.whole();
    let mut orders = vec![current.order().clone()];
    for &x in seq {
        if !current.moves(x) {
            return Ok(None);
        }
        current = current.stabilize_point(x);
        orders.push(current.order().clone());
    }
    Ok(Some(IrredundanceWitness { order: seq.to_vec(), stabilizer_orders: orders }))
}

/// Some irredundant enumeration of `y`, the lexicographically least.
pub fn is_independent(g: &PermutationGroup, y: &PointSet) -> Option<IrredundanceWitness> {
    fn extend<'g>(
        target: &PointSet,
        prefix: &PointSet,
        stab: &Subgroup<'g>,
        order: &mut Vec<usize>,
        orders: &mut Vec<BigUint>,
        failed: &mut HashSet<PointSet>,
    ) -> bool {
        if prefix == target {
            return true;
        }
        if failed.contains(prefix) {
            return false;
        }
        for x in target.difference(stab.fixed_points()).iter() {
            let next = stab.stabilize_point(x);
            order.push(x);
            orders.push(next.order().clone());
            if extend(target, &prefix.with(x), &next, order, orders, failed) {
                return true;
            }
            order.pop();
            orders.pop();
        }
        failed.insert(prefix.clone());
        false
    }
    let whole = g.whole();
    let mut order = Vec::with_capacity(y.len());
    let mut orders = vec![whole.order().clone()];
    let mut failed = HashSet::new();
    extend(y, &PointSet::empty(g.degree()), &whole, &mut order, &mut orders, &mut failed)
        .then_some(IrredundanceWitness { order, stabilizer_orders: orders })
}

/// `G_B` is trivial.
pub fn is_base(g: &PermutationGroup, b: &PointSet) -> bool {
    g.pointwise_stabilizer(b).is_trivial()
}

/// Report for a base, or `None` if `b` is not one.
pub fn base_report(g: &PermutationGroup, b: &PointSet) -> Option<BaseReport> {
    if !is_base(g, b) {
        return None;
    }
    let witness = is_independent(g, b);
    Some(BaseReport { base: b.clone(), irredundant: witness.is_some(), witness, size: b.len() })
}

/// `(B is a base, Cl(B) = X)`; the two always agree.
pub fn closure_base_equivalence(g: &PermutationGroup, b: &PointSet) -> Result<(bool, bool), GaloisError> {
    let dense = galois::closure(g, b)?.is_full();
    Ok((is_base(g, b), dense))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    All,
    Count,
    Extremes,
}

/// Irredundant bases found by [`enumerate_irredundant_bases`]. In `All`
/// mode `bases` lists every base with its least irredundant order, sorted
/// canonically by set; otherwise it is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseEnumeration {
    pub bases: Vec<(PointSet, Vec<usize>)>,
    pub count: u64,
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    pub nodes: u64,
    pub complete: bool,
}

/// Depth-first search over irredundant sequences until the stabilizer is
/// trivial. Each prefix set is expanded once; the first visit is along the
/// lexicographically least order.
pub fn enumerate_irredundant_bases(
    g: &PermutationGroup,
    mode: EnumerationMode,
    budget: u64,
) -> Result<BaseEnumeration, BrscError> {
    struct Search<'a> {
        mode: EnumerationMode,
        budget: u64,
        visited: HashSet<PointSet>,
        order: Vec<usize>,
        out: &'a mut BaseEnumeration,
    }
    impl Search<'_> {
        fn visit(&mut self, prefix: PointSet, stab: &Subgroup<'_>) -> bool {
            if !self.visited.insert(prefix.clone()) {
                return true;
            }
            self.out.nodes += 1;
            if self.out.nodes > self.budget {
                return false;
            }
            if stab.is_trivial() {
                let size = prefix.len();
                self.out.count += 1;
                self.out.min_size = Some(self.out.min_size.map_or(size, |m| m.min(size)));
                self.out.max_size = Some(self.out.max_size.map_or(size, |m| m.max(size)));
                if self.mode == EnumerationMode::All {
                    self.out.bases.push((prefix, self.order.clone()));
                }
                return true;
            }
            for x in stab.fixed_points().complement().iter() {
                let next = stab.stabilize_point(x);
                self.order.push(x);
                let ok = self.visit(prefix.with(x), &next);
                self.order.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    let mut out =
        BaseEnumeration { bases: Vec::new(), count: 0, min_size: None, max_size: None, nodes: 0, complete: false };
    let finished = {
        let mut search = Search { mode, budget, visited: HashSet::new(), order: Vec::new(), out: &mut out };
        search.visit(PointSet::empty(g.degree()), &g.whole())
    };
    out.bases.sort();
    out.complete = finished;
    if finished {
        Ok(out)
    } else {
        Err(BrscError::SearchBudgetExceeded { budget, partial: Box::new(out) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinBase {
    pub size: usize,
    pub witness: PointSet,
    /// The order in which the search built the witness; irredundant.
    pub order: Vec<usize>,
    pub nodes: u64,
}

/// Smallest base, by increasing-size search.
///
/// A minimum base is irredundant in every order (a redundant point could be
/// dropped), so the search only extends by points the current stabilizer
/// moves. Since translates of bases are bases, the first point is one
/// representative (the least point) per nontrivial orbit, and the remaining
/// points are taken in ascending order.
pub fn min_base_size(g: &PermutationGroup, budget: u64) -> Result<MinBase, BrscError> {
    struct Search {
        target: usize,
        budget: u64,
        nodes: u64,
        first: usize,
        failed: HashSet<PointSet>,
        order: Vec<usize>,
    }
    enum Outcome {
        Found,
        NotFound,
        OutOfBudget,
    }
    impl Search {
        fn dfs(&mut self, prefix: &PointSet, stab: &Subgroup<'_>, after: usize) -> Outcome {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::OutOfBudget;
            }
            if stab.is_trivial() {
                return Outcome::Found;
            }
            if prefix.len() == self.target || self.failed.contains(prefix) {
                return Outcome::NotFound;
            }
            let first = self.first;
            let moved = stab.fixed_points().complement();
            for x in moved.iter().filter(|&x| x >= after && x != first) {
                let next = stab.stabilize_point(x);
                self.order.push(x);
                match self.dfs(&prefix.with(x), &next, x + 1) {
                    Outcome::NotFound => {}
                    other => return other,
                }
                self.order.pop();
            }
            self.failed.insert(prefix.clone());
            Outcome::NotFound
        }
    }

    let whole = g.whole();
    if whole.is_trivial() {
        return Ok(MinBase { size: 0, witness: PointSet::empty(g.degree()), order: vec![], nodes: 0 });
    }
    let reps: Vec<usize> = g.orbit_partition().iter().filter(|o| o.len() > 1).map(|o| o.first().unwrap()).collect();
    let mut nodes = 0;
    for target in 1..=g.degree() {
        for &r in &reps {
            let mut search = Search {
                target,
                budget: budget - nodes.min(budget),
                nodes: 0,
                first: r,
                failed: HashSet::new(),
                order: vec![r],
            };
            let start = PointSet::singleton(g.degree(), r);
            let outcome = search.dfs(&start, &whole.stabilize_point(r), 0);
            nodes += search.nodes;
            match outcome {
                Outcome::Found => {
                    let witness = PointSet::from_points(g.degree(), search.order.iter().copied()).unwrap();
                    return Ok(MinBase { size: target, witness, order: search.order, nodes });
                }
                Outcome::OutOfBudget => {
                    return Err(BrscError::MinBaseBudgetExceeded { budget, searched_below: target })
                }
                Outcome::NotFound => {}
            }
        }
    }
    unreachable!("the whole domain is a base")
}

/// Every independent set, as an explicit complex on the whole domain.
pub fn materialize_complex(g: &PermutationGroup, max_degree: usize) -> Result<SimplicialComplex, BrscError> {
    if g.degree() > max_degree {
        return Err(BrscError::SizeExplosion { degree: g.degree(), bound: max_degree });
    }
    fn visit(prefix: PointSet, stab: &Subgroup<'_>, seen: &mut HashSet<PointSet>) {
        for x in stab.fixed_points().complement().iter() {
            let next = prefix.with(x);
            if seen.insert(next.clone()) {
                visit(next, &stab.stabilize_point(x), seen);
            }
        }
    }
    let empty = PointSet::empty(g.degree());
    let mut seen = HashSet::from([empty.clone()]);
    visit(empty, &g.whole(), &mut seen);
    let mut independents: Vec<PointSet> = seen.into_iter().collect();
    independents.sort();
    Ok(SimplicialComplex::from_sorted_unchecked(PointSet::full(g.degree()), independents))
}
