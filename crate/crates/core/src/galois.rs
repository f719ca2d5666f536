//! The closure `Y ↦ Stab(G_Y)` on subsets of the domain and its lattice of
//! closed sets.
//!
//! `Y ↦ G_Y` and `H ↦ Stab(H)` form an antitone Galois connection between
//! subsets of the domain and subgroups of `G`; composing them in either
//! order gives a closure operator. Groups with globally fixed points are
//! rejected so that `Cl(∅) = ∅`; use
//! [`PermutationGroup::without_fixed_points`] to strip them first.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::moore::MooreFamily;
use crate::{PermutationGroup, PointSet, Subgroup};

pub const DEFAULT_LATTICE_BOUND: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("group fixes the points {0}; strip them first")]
    DomainHasTrivialOrbits(PointSet),
    #[error("closed-set lattice exceeds {bound} members")]
    SizeExplosion { bound: usize },
}

fn check_no_trivial_orbits(g: &PermutationGroup) -> Result<(), GaloisError> {
    if g.has_trivial_orbits() {
        return Err(GaloisError::DomainHasTrivialOrbits(g.global_fixed_points()));
    }
    Ok(())
}

/// `Stab(G_Y)` without the trivial-orbit check.
pub fn closure_unchecked(g: &PermutationGroup, y: &PointSet) -> PointSet {
    g.pointwise_stabilizer(y).fixed_points().clone()
}

/// `Cl(Y) = Stab(G_Y)`, the points fixed by everything fixing `Y` pointwise.
pub fn closure(g: &PermutationGroup, y: &PointSet) -> Result<PointSet, GaloisError> {
    check_no_trivial_orbits(g)?;
    Ok(closure_unchecked(g, y))
}

pub fn is_closed(g: &PermutationGroup, y: &PointSet) -> Result<bool, GaloisError> {
    Ok(&closure(g, y)? == y)
}

/// `G_{Stab(H)}`, the Galois closure of a subgroup. Contains `h`.
pub fn subgroup_closure<'g>(g: &'g PermutationGroup, h: &Subgroup<'g>) -> Subgroup<'g> {
    g.pointwise_stabilizer(h.fixed_points())
}

/// All closed sets of a group, ordered by size then lexicographically,
/// with the per-point closures `Cl({x})` that join-generate them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSetLattice {
    degree: usize,
    closed_sets: Vec<PointSet>,
    join_generators: Vec<PointSet>,
}

impl ClosedSetLattice {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn closed_sets(&self) -> &[PointSet] {
        &self.closed_sets
    }

    /// `Cl({x})` for each point `x`.
    pub fn join_generators(&self) -> &[PointSet] {
        &self.join_generators
    }

    pub fn len(&self) -> usize {
        self.closed_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed_sets.is_empty()
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        self.closed_sets.binary_search(s).is_ok()
    }

    /// Smallest closed set containing `y`, computed inside the lattice.
    pub fn closure_of(&self, y: &PointSet) -> PointSet {
        self.closed_sets.iter().find(|c| y.is_subset(c)).cloned().unwrap_or_else(|| PointSet::full(self.degree))
    }

    /// The lattice as a Moore family on the whole domain, every point a
    /// join generator.
    pub fn to_moore_family(&self) -> MooreFamily {
        MooreFamily::from_sorted_unchecked(PointSet::full(self.degree), self.closed_sets.clone())
    }
}

/// Enumerates `{Cl(Y) | Y ⊆ X}` by closing `∅` under `F ↦ Cl(F ∪ {x})`.
/// Every closed set is reached since `Cl(Cl(A) ∪ {x}) = Cl(A ∪ {x})`.
pub fn closed_set_lattice(g: &PermutationGroup, bound: usize) -> Result<ClosedSetLattice, GaloisError> {
    check_no_trivial_orbits(g)?;
    let n = g.degree();
    let whole = g.whole();
    let join_generators: Vec<PointSet> = (0..n).map(|x| whole.stabilize_point(x).fixed_points().clone()).collect();

    let mut seen: HashSet<PointSet> = HashSet::new();
    let mut queue: VecDeque<(PointSet, Subgroup<'_>)> = VecDeque::new();
    let bottom = whole.fixed_points().clone();
    seen.insert(bottom.clone());
    seen.insert(PointSet::full(n));
    queue.push_back((bottom, whole));
    while let Some((f, stab)) = queue.pop_front() {
        for x in f.complement().iter() {
            let next = stab.stabilize_point(x);
            let c = next.fixed_points();
            if !seen.contains(c) {
                if seen.len() >= bound {
                    return Err(GaloisError::SizeExplosion { bound });
                }
                seen.insert(c.clone());
                queue.push_back((c.clone(), next));
            }
        }
    }
    let mut closed_sets: Vec<PointSet> = seen.into_iter().collect();
    closed_sets.sort();
    Ok(ClosedSetLattice { degree: n, closed_sets, join_generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{builtin_group, pair_action, Family};
    use crate::Permutation;
    use proptest::prelude::*;

    fn s(n: usize, pts: &[usize]) -> PointSet {
        PointSet::from_points(n, pts.iter().map(|p| p - 1)).unwrap()
    }

    fn sym(n: usize) -> PermutationGroup {
        builtin_group(Family::Symmetric, n).unwrap()
    }

    /// Closure by brute force over every element of the group.
    fn closure_oracle(g: &PermutationGroup, y: &PointSet) -> PointSet {
        let n = g.degree();
        let elems = g.enumerate_elements(1_000_000).unwrap();
        let stab: Vec<&Permutation> = elems.elements().iter().filter(|e| y.iter().all(|p| e.fixes(p))).collect();
        PointSet::from_points(n, (0..n).filter(|&x| stab.iter().all(|e| e.fixes(x)))).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s4 = sym(4);
        assert_eq!(closure(&s4, &s(4, &[1, 2])).unwrap(), s(4, &[1, 2]));
        assert_eq!(closure(&s4, &s(4, &[1, 2, 3])).unwrap(), PointSet::full(4));
        let c5 = builtin_group(Family::Cyclic, 5).unwrap();
        assert!(closure(&c5, &PointSet::empty(5)).unwrap().is_empty());
    }

    #[test]
    fn trivial_orbits_rejected() {
        let g = PermutationGroup::new(3, vec![Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()]).unwrap();
        assert_eq!(closure(&g, &PointSet::empty(3)), Err(GaloisError::DomainHasTrivialOrbits(s(3, &[3]))));
        assert_eq!(closure_unchecked(&g, &PointSet::empty(3)), s(3, &[3]));
        let (stripped, map) = g.without_fixed_points().unwrap();
        assert_eq!(map, vec![0, 1]);
        assert!(closure(&stripped, &PointSet::empty(2)).unwrap().is_empty());
    }

    #[test]
    fn is_closed_examples() {
        let s4 = sym(4);
        assert!(is_closed(&s4, &s(4, &[1, 2])).unwrap());
        assert!(!is_closed(&s4, &s(4, &[1, 2, 3])).unwrap());
        let d5 = builtin_group(Family::Dihedral, 5).unwrap();
        assert!(is_closed(&d5, &PointSet::full(5)).unwrap());
    }

    #[test]
    fn lattice_examples() {
        let l3 = closed_set_lattice(&sym(3), DEFAULT_LATTICE_BOUND).unwrap();
        let expected: Vec<PointSet> = vec![s(3, &[]), s(3, &[1]), s(3, &[2]), s(3, &[3]), s(3, &[1, 2, 3])];
        assert_eq!(l3.closed_sets(), expected.as_slice());

        let l4 = closed_set_lattice(&sym(4), DEFAULT_LATTICE_BOUND).unwrap();
        assert_eq!(l4.len(), 1 + 4 + 6 + 1);
        assert!(l4.closed_sets().iter().all(|c| c.len() != 3));

        let c2 = builtin_group(Family::Cyclic, 2).unwrap();
        let l2 = closed_set_lattice(&c2, DEFAULT_LATTICE_BOUND).unwrap();
        assert_eq!(l2.closed_sets(), &[PointSet::empty(2), PointSet::full(2)]);
        assert_eq!(l2.join_generators(), &[PointSet::full(2), PointSet::full(2)]);
    }

    #[test]
    fn lattice_bound_enforced() {
        assert_eq!(closed_set_lattice(&sym(5), 4), Err(GaloisError::SizeExplosion { bound: 4 }));
    }

    #[test]
    fn subgroup_closure_examples() {
        let s4 = sym(4);
        let t = Subgroup::generated_by(&s4, vec![Permutation::from_cycles(4, &[vec![2, 3]]).unwrap()]).unwrap();
        assert!(subgroup_closure(&s4, &t).same_subgroup(&t));
        let four_cycle =
            Subgroup::generated_by(&s4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()]).unwrap();
        assert_eq!(subgroup_closure(&s4, &four_cycle).order(), &s4.order());
        let whole = s4.whole();
        assert!(subgroup_closure(&s4, &whole).same_subgroup(&whole));
    }

    /// Every closure appears in the lattice and the lattice is closed under
    /// intersection, exhaustively for small degrees.
    #[test]
    fn lattice_is_exactly_the_closures() {
        let mut groups: Vec<PermutationGroup> = vec![
            sym(3),
            sym(4),
            builtin_group(Family::Alternating, 5).unwrap(),
            builtin_group(Family::Cyclic, 6).unwrap(),
            builtin_group(Family::Dihedral, 4).unwrap(),
            builtin_group(Family::Dihedral, 8).unwrap(),
        ];
        groups.push(pair_action(&sym(4)).unwrap().0);
        for g in &groups {
            let lattice = closed_set_lattice(g, DEFAULT_LATTICE_BOUND).unwrap();
            let mut closures: Vec<PointSet> =
                PointSet::all_subsets(g.degree()).map(|y| closure_oracle(g, &y)).collect();
            closures.sort();
            closures.dedup();
            assert_eq!(lattice.closed_sets(), closures.as_slice());
            for a in lattice.closed_sets() {
                for b in lattice.closed_sets() {
                    assert!(lattice.contains(&a.intersection(b)));
                }
            }
        }
    }

    /// Along any chain of closed sets the stabilizers strictly shrink.
    #[test]
    fn chains_map_to_strictly_descending_stabilizers() {
        let (g, _) = pair_action(&sym(4)).unwrap();
        let lattice = closed_set_lattice(&g, DEFAULT_LATTICE_BOUND).unwrap();
        for a in lattice.closed_sets() {
            for b in lattice.closed_sets() {
                if a.is_subset(b) && a != b {
                    let (ga, gb) = (g.pointwise_stabilizer(a), g.pointwise_stabilizer(b));
                    assert!(gb.is_subgroup_of(&ga));
                    assert!(gb.order() < ga.order(), "{a} ⊂ {b}");
                }
            }
        }
    }

    fn group_and_sets() -> impl Strategy<Value = (usize, u64, u64)> {
        (0usize..6, any::<u64>(), any::<u64>())
    }

    fn pick_group(i: usize) -> PermutationGroup {
        match i {
            0 => sym(5),
            1 => builtin_group(Family::Alternating, 6).unwrap(),
            2 => builtin_group(Family::Cyclic, 7).unwrap(),
            3 => builtin_group(Family::Dihedral, 6).unwrap(),
            4 => pair_action(&sym(5)).unwrap().0,
            _ => pair_action(&builtin_group(Family::Dihedral, 5).unwrap()).unwrap().0,
        }
    }

    proptest! {
        #[test]
        fn closure_axioms_and_round_trip((i, a, b) in group_and_sets()) {
            let g = pick_group(i);
            let n = g.degree();
            let y = PointSet::from_points(n, (0..n).filter(|k| a >> k & 1 == 1 && (a >> (k + 20)) & 1 == 1)).unwrap();
            let z = y.union(&PointSet::from_points(n, (0..n).filter(|k| b >> k & 1 == 1 && (b >> (k + 20)) & 1 == 1)).unwrap());
            let cy = closure(&g, &y).unwrap();
            prop_assert!(y.is_subset(&cy));
            prop_assert_eq!(closure(&g, &cy).unwrap(), cy.clone());
            prop_assert!(cy.is_subset(&closure(&g, &z).unwrap()));
            prop_assert!(g.pointwise_stabilizer(&cy).same_subgroup(&g.pointwise_stabilizer(&y)));
            prop_assert_eq!(cy, closure_oracle(&g, &y));
        }
    }
}
