use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{MooreError, MooreFamily};
use crate::PointSet;

/// A ground set with a downward-closed family of independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: PointSet,
    /// Canonical order: by size, then lexicographic.
    independents: Vec<PointSet>,
}

impl SimplicialComplex {
    /// Validates `∅ ∈ independents`, containment in `ground` and closure
    /// under removing a point.
    pub fn new(ground: PointSet, independents: Vec<PointSet>) -> Result<Self, MooreError> {
        let width = ground.width();
        let mut set: HashSet<PointSet> = HashSet::new();
        for i in independents {
            if i.width() != width {
                return Err(MooreError::WidthMismatch { expected: width, found: i.width() });
            }
            if !i.is_subset(&ground) {
                return Err(MooreError::NotInGround(i));
            }
            set.insert(i);
        }
        if !set.contains(&PointSet::empty(width)) {
            return Err(MooreError::MissingEmptySet);
        }
        for i in &set {
            for x in i.iter() {
                let smaller = i.without(x);
                if !set.contains(&smaller) {
                    return Err(MooreError::NotDownwardClosed { set: i.clone(), missing: smaller });
                }
            }
        }
        let mut independents: Vec<PointSet> = set.into_iter().collect();
        independents.sort();
        Ok(SimplicialComplex { ground, independents })
    }

    /// The complex whose independent sets are all subsets of the facets.
    pub fn from_facets(ground: PointSet, facets: &[PointSet]) -> Result<Self, MooreError> {
        let width = ground.width();
        let mut seen: HashSet<PointSet> = HashSet::new();
        let mut queue: VecDeque<PointSet> = VecDeque::new();
        for f in facets {
            if !f.is_subset(&ground) {
                return Err(MooreError::NotInGround(f.clone()));
            }
            if seen.insert(f.clone()) {
                queue.push_back(f.clone());
            }
        }
        if seen.insert(PointSet::empty(width)) {
            queue.push_back(PointSet::empty(width));
        }
        while let Some(s) = queue.pop_front() {
            for x in s.iter() {
                let t = s.without(x);
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut independents: Vec<PointSet> = seen.into_iter().collect();
        independents.sort();
        Ok(SimplicialComplex { ground, independents })
    }

    /// All subsets of `ground` of size at most `rank`.
    pub fn uniform(ground: PointSet, rank: usize) -> Self {
        let points = ground.to_vec();
        let facets: Vec<PointSet> = subsets_of_size(&points, rank.min(points.len()), ground.width());
        Self::from_facets(ground, &facets).expect("facets lie in the ground set")
    }

    pub(crate) fn from_sorted_unchecked(ground: PointSet, independents: Vec<PointSet>) -> Self {
        SimplicialComplex { ground, independents }
    }

    pub fn ground(&self) -> &PointSet {
        &self.ground
    }

    pub fn independents(&self) -> &[PointSet] {
        &self.independents
    }

    pub fn len(&self) -> usize {
        self.independents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.independents.is_empty()
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        self.independents.binary_search(s).is_ok()
    }

    /// Points `p ∉ i` of the ground set with `i ∪ {p}` dependent.
    fn blocked(&self, i: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.ground.width());
        for p in self.ground.difference(i).iter() {
            if !self.contains(&i.with(p)) {
                out.insert(p);
            }
        }
        out
    }

    /// The lattice of flats: subsets `Y` such that every independent
    /// `I ⊆ Y` stays independent after adding any point outside `Y`.
    pub fn flats(&self) -> MooreFamily {
        let blocked: Vec<(PointSet, PointSet)> =
            self.independents.iter().map(|i| (i.clone(), self.blocked(i))).collect();
        // Y is a flat iff blocked(I) ⊆ Y for every independent I ⊆ Y.
        let flat_closure = |start: PointSet| {
            let mut y = start;
            loop {
                let mut grown = false;
                for (i, b) in &blocked {
                    if i.is_subset(&y) && !b.is_subset(&y) {
                        y.union_with(b);
                        grown = true;
                    }
                }
                if !grown {
                    return y;
                }
            }
        };
        let mut seen: HashSet<PointSet> = HashSet::new();
        let mut queue = VecDeque::new();
        for start in [flat_closure(PointSet::empty(self.ground.width())), self.ground.clone()] {
            if seen.insert(start.clone()) {
                queue.push_back(start);
            }
        }
        while let Some(f) = queue.pop_front() {
            for x in self.ground.difference(&f).iter() {
                let g = flat_closure(f.with(x));
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        let mut members: Vec<PointSet> = seen.into_iter().collect();
        members.sort();
        MooreFamily::from_sorted_unchecked(self.ground.clone(), members)
    }

    /// Minimal dependent subsets of the ground set.
    pub fn circuits(&self) -> Vec<PointSet> {
        let mut out = BTreeSet::new();
        for i in &self.independents {
            for p in self.blocked(i).iter() {
                let c = i.with(p);
                if c.iter().all(|q| self.contains(&c.without(q))) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn is_boolean_representable(&self) -> Representability {
        let flats = self.flats();
        for i in &self.independents {
            if flats.is_independent_in_family(i).is_none() {
                return Representability {
                    representable: false,
                    certificate: Some(RepresentabilityCertificate::IndependentNotTransversal(i.clone())),
                    flats,
                };
            }
        }
        for c in self.circuits() {
            if flats.is_independent_in_family(&c).is_some() {
                return Representability {
                    representable: false,
                    certificate: Some(RepresentabilityCertificate::DependentTransversal(c)),
                    flats,
                };
            }
        }
        Representability { representable: true, certificate: None, flats }
    }

    /// First pair `(I, J)` in canonical order with `|I| = |J| + 1` and no
    /// `v ∈ I \ J` making `J ∪ {v}` independent.
    pub fn exchange_violation(&self) -> Option<(PointSet, PointSet)> {
        let rank = self.independents.last().map_or(0, |s| s.len());
        let by_size: Vec<Vec<&PointSet>> =
            (0..=rank).map(|k| self.independents.iter().filter(|s| s.len() == k).collect()).collect();
        for k in 0..rank {
            for i in &by_size[k + 1] {
                for j in &by_size[k] {
                    if !i.difference(j).iter().any(|v| self.contains(&j.with(v))) {
                        return Some(((*i).clone(), (*j).clone()));
                    }
                }
            }
        }
        None
    }

    pub fn is_matroid(&self) -> bool {
        self.exchange_violation().is_none()
    }

    /// Maximal independent sets, the largest size, and purity.
    pub fn bases(&self) -> ComplexBases {
        let bases: Vec<PointSet> =
            self.independents.iter().filter(|i| self.blocked(i) == self.ground.difference(i)).cloned().collect();
        let rank = bases.iter().map(|b| b.len()).max().unwrap_or(0);
        let pure = bases.iter().all(|b| b.len() == rank);
        ComplexBases { bases, rank, pure }
    }
}

/// Outcome of comparing a complex with the transversals of its flats.
#[derive(Debug, Clone)]
pub struct Representability {
    pub representable: bool,
    pub certificate: Option<RepresentabilityCertificate>,
    pub flats: MooreFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepresentabilityCertificate {
    /// Independent, but no enumeration is a transversal of the flats.
    IndependentNotTransversal(PointSet),
    /// A circuit that is nevertheless a transversal.
    DependentTransversal(PointSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBases {
    pub bases: Vec<PointSet>,
    pub rank: usize,
    pub pure: bool,
}

fn subsets_of_size(points: &[usize], k: usize, width: usize) -> Vec<PointSet> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(points: &[usize], k: usize, start: usize, current: &mut Vec<usize>, width: usize, out: &mut Vec<PointSet>) {
        if current.len() == k {
            out.push(PointSet::from_points(width, current.iter().copied()).unwrap());
            return;
        }
        for i in start..points.len() {
            current.push(points[i]);
            rec(points, k, i + 1, current, width, out);
            current.pop();
        }
    }
    rec(points, k, 0, &mut current, width, &mut out);
    out
}
