//! Builtin group families, induced actions on k-subsets and pairs, and the
//! explicit base constructions for pair actions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::{PermError, Permutation, PermutationGroup, PointSet};

/// Largest induced degree `k_subset_action` will build by default.
pub const DEFAULT_SUBSET_BOUND: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("degree {degree} too small: need at least {min}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("induced action would have {size} points (bound {bound})")]
    SizeExplosion { size: u128, bound: usize },
    #[error("group order is even; the odd-order pair construction does not apply")]
    EvenOrder,
    #[error("group has trivial orbits")]
    TrivialOrbits,
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Symmetric,
    Alternating,
    Cyclic,
    Dihedral,
}

impl Family {
    fn tag(self) -> &'static str {
        match self {
            Family::Symmetric => "sym",
            Family::Alternating => "alt",
            Family::Cyclic => "cyc",
            Family::Dihedral => "dih",
        }
    }
}

/// A builtin group addressed as `sym:n`, `alt:n`, `cyc:n` or `dih:n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuiltinSpec {
    pub family: Family,
    pub n: usize,
}

impl FromStr for BuiltinSpec {
    type Err = ActionError;

    fn from_str(s: &str) -> Result<Self, ActionError> {
        let (tag, n) =
            s.split_once(':').ok_or_else(|| ActionError::BadParameter(format!("expected family:n, got {s:?}")))?;
        let family = match tag.trim() {
            "sym" => Family::Symmetric,
            "alt" => Family::Alternating,
            "cyc" => Family::Cyclic,
            "dih" => Family::Dihedral,
            other => return Err(ActionError::BadParameter(format!("unknown family {other:?}"))),
        };
        let n = n.trim().parse().map_err(|_| ActionError::BadParameter(format!("bad size in {s:?}")))?;
        Ok(BuiltinSpec { family, n })
    }
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family.tag(), self.n)
    }
}

impl BuiltinSpec {
    pub fn build(&self) -> Result<PermutationGroup, ActionError> {
        builtin_group(self.family, self.n)
    }
}

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(n, &[points.into_iter().collect()]).expect("valid cycle")
}

/// Standard generators: `sym` uses (1 2) and (1 2 .. n); `alt` the
/// consecutive 3-cycles (1 2 3), (2 3 4), ..; `cyc` the n-cycle; `dih` the
/// rotation and the reflection `i -> -i mod n`.
pub fn builtin_group(family: Family, n: usize) -> Result<PermutationGroup, ActionError> {
    if n == 0 {
        return Err(ActionError::BadParameter("n must be at least 1".into()));
    }
    let gens = match family {
        Family::Symmetric if n == 1 => vec![],
        Family::Symmetric if n == 2 => vec![cycle(2, [0, 1])],
        Family::Symmetric => vec![cycle(n, [0, 1]), cycle(n, 0..n)],
        Family::Alternating => (0..n.saturating_sub(2)).map(|i| cycle(n, [i, i + 1, i + 2])).collect(),
        Family::Cyclic if n == 1 => vec![],
        Family::Cyclic => vec![cycle(n, 0..n)],
        Family::Dihedral => {
            if n < 3 {
                return Err(ActionError::BadParameter("dihedral groups need n >= 3".into()));
            }
            let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
            vec![cycle(n, 0..n), reflection]
        }
    };
    Ok(PermutationGroup::new(n, gens)?)
}

/// Lexicographic numbering of the k-subsets of `{0, .., n - 1}`.
#[derive(Debug, Clone)]
pub struct SubsetIndexMap {
    n: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl SubsetIndexMap {
    pub fn new(n: usize, k: usize) -> Self {
        let mut subsets = Vec::new();
        let mut current = Vec::with_capacity(k);
        fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == k {
                out.push(current.clone());
                return;
            }
            for x in start..n {
                current.push(x);
                rec(n, k, x + 1, current, out);
                current.pop();
            }
        }
        rec(n, k, 0, &mut current, &mut subsets);
        let lookup = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        SubsetIndexMap { n, k, subsets, lookup }
    }

    pub fn base_degree(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// The subset numbered `i`, ascending and 0-based.
    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    /// Index of a subset given in any order; `None` if it is not a k-subset.
    pub fn index(&self, points: &[usize]) -> Option<usize> {
        let mut key = points.to_vec();
        key.sort_unstable();
        self.lookup.get(&key).copied()
    }

    /// The permutation of subset indices induced by `g`.
    pub fn induced(&self, g: &Permutation) -> Permutation {
        let images = self
            .subsets
            .iter()
            .map(|s| {
                let image: Vec<usize> = s.iter().map(|&x| g.image(x)).collect();
                self.index(&image).expect("images of k-subsets are k-subsets")
            })
            .collect();
        Permutation::from_images(images).expect("induced map is a bijection")
    }
}

/// Numbering of the unordered pairs `{a, b}`, `a < b`, in lexicographic
/// order. Pairs print as `ab` with 1-based points, or `a-b` once a point
/// exceeds 9.
#[derive(Debug, Clone)]
pub struct PairIndexMap {
    inner: SubsetIndexMap,
}

impl PairIndexMap {
    pub fn new(n: usize) -> Self {
        PairIndexMap { inner: SubsetIndexMap::new(n, 2) }
    }

    pub fn base_degree(&self) -> usize {
        self.inner.n
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    /// 0-based endpoints of pair `i`, smaller first.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        let s = self.inner.subset(i);
        (s[0], s[1])
    }

    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.inner.index(&[a, b])
    }

    pub fn name(&self, i: usize) -> String {
        let (a, b) = self.pair(i);
        if b < 9 {
            format!("{}{}", a + 1, b + 1)
        } else {
            format!("{}-{}", a + 1, b + 1)
        }
    }

    /// Parses `ab` (both single digits) or `a-b`, 1-based.
    pub fn parse_name(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        let (a, b) = match s.split_once('-') {
            Some((a, b)) => (a.parse::<usize>().ok()?, b.parse::<usize>().ok()?),
            None if s.len() == 2 && s.bytes().all(|c| c.is_ascii_digit()) => {
                ((s.as_bytes()[0] - b'0') as usize, (s.as_bytes()[1] - b'0') as usize)
            }
            None => return None,
        };
        if a == 0 || b == 0 || a > self.base_degree() || b > self.base_degree() {
            return None;
        }
        self.index(a - 1, b - 1)
    }

    pub fn induced(&self, g: &Permutation) -> Permutation {
        self.inner.induced(g)
    }

    pub fn set_of(&self, pairs: &[(usize, usize)]) -> PointSet {
        PointSet::from_points(self.len(), pairs.iter().map(|&(a, b)| self.index(a, b).expect("valid pair"))).unwrap()
    }
}

/// The induced action `{x, y}g = {xg, yg}` on 2-subsets.
pub fn pair_action(g: &PermutationGroup) -> Result<(PermutationGroup, PairIndexMap), ActionError> {
    if g.degree() < 3 {
        return Err(ActionError::DegreeTooSmall { degree: g.degree(), min: 3 });
    }
    let map = PairIndexMap::new(g.degree());
    let gens = g.generators().iter().map(|s| map.induced(s)).collect();
    let group = PermutationGroup::new(map.len(), gens)?.with_element_cap(g.element_cap());
    Ok((group, map))
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// The induced action on k-subsets, numbered lexicographically.
pub fn k_subset_action(
    g: &PermutationGroup,
    k: usize,
    bound: usize,
) -> Result<(PermutationGroup, SubsetIndexMap), ActionError> {
    if k == 0 {
        return Err(ActionError::BadParameter("k must be at least 1".into()));
    }
    if k >= g.degree() {
        return Err(ActionError::DegreeTooSmall { degree: g.degree(), min: k + 1 });
    }
    let size = binomial(g.degree(), k);
    if size > bound as u128 {
        return Err(ActionError::SizeExplosion { size, bound });
    }
    let map = SubsetIndexMap::new(g.degree(), k);
    let gens = g.generators().iter().map(|s| map.induced(s)).collect();
    let group = PermutationGroup::new(map.len(), gens)?.with_element_cap(g.element_cap());
    Ok((group, map))
}

/// A base of the pair action of `Sym(n)` built from triangles of pairs
/// `{3i+1, 3i+2}, {3i+2, 3i+3}`.
///
/// For `n ≡ 0 (mod 3)` the triangles cover every point and the base has
/// `2n/3` pairs. For `n ≡ 1` they cover the first `n - 1` points and the
/// last point is forced. For `n ≡ 2` they cover the first `n - 2` points
/// and the pair `{n - 1, 1}` pins the remaining two.
pub fn example_base_sym_pairs(n: usize) -> Result<PointSet, ActionError> {
    if n < 3 {
        return Err(ActionError::BadParameter(format!("need n >= 3, got {n}")));
    }
    let map = PairIndexMap::new(n);
    let covered = n - n % 3;
    let mut pairs = Vec::new();
    for block in (0..covered).step_by(3) {
        pairs.push((block, block + 1));
        pairs.push((block + 1, block + 2));
    }
    if n % 3 == 2 {
        pairs.push((0, n - 2));
    }
    Ok(map.set_of(&pairs))
}

/// The pairs `{1,2}, {3,4}, ..` (`⌊n/2⌋` of them), a base of the pair
/// action of any odd-order group without trivial orbits.
pub fn example_base_odd(g: &PermutationGroup) -> Result<PointSet, ActionError> {
    if g.order().is_even() {
        return Err(ActionError::EvenOrder);
    }
    if g.has_trivial_orbits() {
        return Err(ActionError::TrivialOrbits);
    }
    let n = g.degree();
    if n < 3 {
        return Err(ActionError::DegreeTooSmall { degree: n, min: 3 });
    }
    let map = PairIndexMap::new(n);
    let pairs: Vec<_> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    Ok(map.set_of(&pairs))
}
