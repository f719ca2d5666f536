use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use super::{PermError, Permutation, StabChain};
use crate::PointSet;

/// Default bound on the number of elements materialized explicitly.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Every element of a group, with a lookup index and per-element fixed
/// point sets.
#[derive(Clone, Debug)]
pub struct ElementStore {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    fixed: Vec<PointSet>,
}

impl ElementStore {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn position(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn fixed_points(&self, i: u32) -> &PointSet {
        &self.fixed[i as usize]
    }
}

/// Breadth-first closure of `generators` under right multiplication.
/// Fails as soon as more than `cap` elements have been found.
pub fn enumerate_elements(degree: usize, generators: &[Permutation], cap: usize) -> Result<ElementStore, PermError> {
    let id = Permutation::identity(degree);
    let mut index = HashMap::new();
    index.insert(id.clone(), 0u32);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        for s in generators {
            let next = elements[head].then(s);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(PermError::OrderExceedsCap { cap });
                }
                index.insert(next.clone(), elements.len() as u32);
                elements.push(next);
            }
        }
        head += 1;
    }
    let fixed =
        elements.iter().map(|g| PointSet::from_points(degree, (0..degree).filter(|&x| g.fixes(x))).unwrap()).collect();
    Ok(ElementStore { elements, index, fixed })
}

/// A permutation group given by generators on `{0, .., degree - 1}`.
///
/// The element store and stabilizer chain are built on first use and
/// cached; both caches are safe to fill from several threads.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    element_cap: usize,
    chain: OnceLock<StabChain>,
    store: OnceLock<Option<ElementStore>>,
    orbits: OnceLock<Vec<PointSet>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        let generators = if generators.is_empty() { vec![Permutation::identity(degree)] } else { generators };
        Ok(PermutationGroup {
            degree,
            generators,
            element_cap: DEFAULT_ELEMENT_CAP,
            chain: OnceLock::new(),
            store: OnceLock::new(),
            orbits: OnceLock::new(),
        })
    }

    /// Sets the largest order for which elements are listed explicitly;
    /// larger groups are handled through stabilizer chains.
    pub fn with_element_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap;
        self.store = OnceLock::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// The materialized element store, if the order is within the cap.
    pub fn elements(&self) -> Option<&ElementStore> {
        self.store
            .get_or_init(|| {
                if self.order() > BigUint::from(self.element_cap) {
                    return None;
                }
                enumerate_elements(self.degree, &self.generators, self.element_cap).ok()
            })
            .as_ref()
    }

    pub fn enumerate_elements(&self, cap: usize) -> Result<ElementStore, PermError> {
        enumerate_elements(self.degree, &self.generators, cap)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    /// Orbits under the group, ordered by least element.
    pub fn orbit_partition(&self) -> &[PointSet] {
        self.orbits.get_or_init(|| {
            let mut seen = vec![false; self.degree];
            let mut orbits = Vec::new();
            for start in 0..self.degree {
                if seen[start] {
                    continue;
                }
                let mut orbit = PointSet::empty(self.degree);
                let mut queue = VecDeque::from([start]);
                seen[start] = true;
                while let Some(x) = queue.pop_front() {
                    orbit.insert(x);
                    for g in &self.generators {
                        let y = g.image(x);
                        if !seen[y] {
                            seen[y] = true;
                            queue.push_back(y);
                        }
                    }
                }
                orbits.push(orbit);
            }
            orbits
        })
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_partition().len() == 1
    }

    /// Points fixed by the whole group.
    pub fn global_fixed_points(&self) -> PointSet {
        let mut fixed = PointSet::empty(self.degree);
        for orbit in self.orbit_partition() {
            if orbit.len() == 1 {
                fixed.union_with(orbit);
            }
        }
        fixed
    }

    pub fn has_trivial_orbits(&self) -> bool {
        self.orbit_partition().iter().any(|o| o.len() == 1)
    }

    /// The same group acting on its non-fixed points, renumbered in
    /// ascending order. Returns the group and the map new point -> old point.
    pub fn without_fixed_points(&self) -> Result<(PermutationGroup, Vec<usize>), PermError> {
        let fixed = self.global_fixed_points();
        let keep: Vec<usize> = fixed.complement().to_vec();
        if keep.is_empty() {
            return Err(PermError::ZeroDegree);
        }
        let gens =
            self.generators.iter().map(|g| g.restrict(&keep).expect("moved points form a union of cycles")).collect();
        let group = PermutationGroup::new(keep.len(), gens)?.with_element_cap(self.element_cap);
        Ok((group, keep))
    }

    /// `G` itself as a subgroup, i.e. the stabilizer of the empty set.
    pub fn whole(&self) -> Subgroup<'_> {
        match self.elements() {
            Some(store) => Subgroup::from_members(self, (0..store.len() as u32).collect()),
            None => Subgroup::from_generators(self, self.generators.clone(), self.order()),
        }
    }

    /// `G_Y`: elements fixing every point of `y`.
    pub fn pointwise_stabilizer(&self, y: &PointSet) -> Subgroup<'_> {
        assert_eq!(y.width(), self.degree, "point set width must equal the degree");
        match self.elements() {
            Some(store) => {
                let members = (0..store.len() as u32).filter(|&i| y.is_subset(store.fixed_points(i))).collect();
                Subgroup::from_members(self, members)
            }
            None => {
                let prefix = y.to_vec();
                let chain = StabChain::new(self.degree, &self.generators, &prefix);
                let gens = chain.generators_from(prefix.len()).to_vec();
                let order = chain.order_from(prefix.len());
                Subgroup::from_generators(self, gens, order)
            }
        }
    }

    /// `Stab(H)`: points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup<'_>) -> PointSet {
        h.fixed_points().clone()
    }
}

#[derive(Clone, Debug)]
enum Repr {
    /// Sorted indices into the parent's element store.
    Members(Vec<u32>),
    Generated(Vec<Permutation>),
}

/// A subgroup of a [`PermutationGroup`], with cached order and fixed points.
#[derive(Clone, Debug)]
pub struct Subgroup<'g> {
    parent: &'g PermutationGroup,
    repr: Repr,
    order: BigUint,
    fixed: PointSet,
    gens: OnceLock<Vec<Permutation>>,
    chain: OnceLock<StabChain>,
}

impl<'g> Subgroup<'g> {
    fn from_members(parent: &'g PermutationGroup, members: Vec<u32>) -> Self {
        let store = parent.elements().expect("member representation needs an element store");
        let mut fixed = PointSet::full(parent.degree);
        for &m in &members {
            fixed.intersect_with(store.fixed_points(m));
        }
        Subgroup {
            parent,
            order: BigUint::from(members.len()),
            repr: Repr::Members(members),
            fixed,
            gens: OnceLock::new(),
            chain: OnceLock::new(),
        }
    }

    fn from_generators(parent: &'g PermutationGroup, gens: Vec<Permutation>, order: BigUint) -> Self {
        let degree = parent.degree;
        let fixed = PointSet::from_points(degree, (0..degree).filter(|&x| gens.iter().all(|g| g.fixes(x)))).unwrap();
        Subgroup { parent, repr: Repr::Generated(gens), order, fixed, gens: OnceLock::new(), chain: OnceLock::new() }
    }

    /// The subgroup generated by `gens`, which must lie in `parent`.
    pub fn generated_by(parent: &'g PermutationGroup, gens: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(bad) = gens.iter().find(|g| !parent.contains(g)) {
            return Err(PermError::NotInParent(bad.to_string()));
        }
        let chain = StabChain::new(parent.degree, &gens, &[]);
        let order = chain.order();
        let sub = match parent.elements() {
            Some(store) => {
                let mut members: Vec<u32> = enumerate_elements(parent.degree, &gens, store.len())?
                    .elements()
                    .iter()
                    .map(|g| store.position(g).expect("closed under parent"))
                    .collect();
                members.sort_unstable();
                Subgroup::from_members(parent, members)
            }
            None => Subgroup::from_generators(parent, gens, order),
        };
        let _ = sub.chain.set(chain);
        Ok(sub)
    }

    pub fn parent(&self) -> &'g PermutationGroup {
        self.parent
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn fixed_points(&self) -> &PointSet {
        &self.fixed
    }

    pub fn moves(&self, x: usize) -> bool {
        !self.fixed.contains(x)
    }

    /// Subgroup of elements that also fix `x`.
    pub fn stabilize_point(&self, x: usize) -> Subgroup<'g> {
        if self.fixed.contains(x) {
            return self.clone();
        }
        match &self.repr {
            Repr::Members(members) => {
                let store = self.parent.elements().unwrap();
                let kept = members.iter().copied().filter(|&m| store.elements()[m as usize].fixes(x)).collect();
                Subgroup::from_members(self.parent, kept)
            }
            Repr::Generated(gens) => {
                let chain = StabChain::new(self.parent.degree, gens, &[x]);
                Subgroup::from_generators(self.parent, chain.generators_from(1).to_vec(), chain.order_from(1))
            }
        }
    }

    /// A generating set. For subgroups held as element lists this is a
    /// greedy irredundant selection, computed once.
    pub fn generators(&self) -> &[Permutation] {
        match &self.repr {
            Repr::Generated(gens) => gens,
            Repr::Members(members) => self.gens.get_or_init(|| greedy_generators(self.parent, members)),
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        match &self.repr {
            Repr::Members(members) => {
                self.parent.elements().and_then(|s| s.position(p)).is_some_and(|i| members.binary_search(&i).is_ok())
            }
            Repr::Generated(gens) => {
                self.chain.get_or_init(|| StabChain::new(self.parent.degree, gens, &[])).contains(p)
            }
        }
    }

    /// Elements, when the parent is materialized.
    pub fn elements(&self) -> Option<Vec<&'g Permutation>> {
        let store = self.parent.elements()?;
        match &self.repr {
            Repr::Members(members) => Some(members.iter().map(|&m| &store.elements()[m as usize]).collect()),
            Repr::Generated(_) => None,
        }
    }

    /// Equality as subgroups: same order and each generating set lies in
    /// the other subgroup.
    pub fn same_subgroup(&self, other: &Subgroup<'_>) -> bool {
        self.order == other.order
            && self.generators().iter().all(|g| other.contains(g))
            && other.generators().iter().all(|g| self.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }
}

fn greedy_generators(parent: &PermutationGroup, members: &[u32]) -> Vec<Permutation> {
    let store = parent.elements().unwrap();
    let mut span = vec![false; store.len()];
    span[0] = true;
    let mut spanned = vec![0u32];
    let mut gens: Vec<Permutation> = Vec::new();
    for &m in members {
        if span[m as usize] {
            continue;
        }
        gens.push(store.elements()[m as usize].clone());
        let mut head = 0;
        while head < spanned.len() {
            let e = &store.elements()[spanned[head] as usize];
            for g in &gens {
                let i = store.position(&e.then(g)).unwrap();
                if !span[i as usize] {
                    span[i as usize] = true;
                    spanned.push(i);
                }
            }
            head += 1;
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(parent.degree));
    }
    gens
}
