//! Fixed-width bit vectors over a permutation domain `{0, .., degree - 1}`.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A subset of `{0, .., width - 1}` stored as packed 64-bit words.
///
/// The ordering is the canonical one used for all output: smaller sets
/// first, then lexicographic on the ascending element lists, so that
/// `{0,1} < {0,2} < {1,2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    width: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(width: usize) -> Self {
        PointSet { width, words: vec![0; width.div_ceil(WORD)] }
    }

    pub fn full(width: usize) -> Self {
        let mut set = Self::empty(width);
        for (i, w) in set.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let bits = (width - lo).min(WORD);
            *w = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        set
    }

    /// Builds a set from 0-based points. Returns the first offending point
    /// if one is out of range.
    pub fn from_points<I: IntoIterator<Item = usize>>(width: usize, points: I) -> Result<Self, usize> {
        let mut set = Self::empty(width);
        for p in points {
            if p >= width {
                return Err(p);
            }
            set.insert(p);
        }
        Ok(set)
    }

    pub fn singleton(width: usize, point: usize) -> Self {
        let mut set = Self::empty(width);
        set.insert(point);
        set
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        p < self.width && self.words[p / WORD] >> (p % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, p: usize) {
        assert!(p < self.width, "point {p} outside width {}", self.width);
        self.words[p / WORD] |= 1 << (p % WORD);
    }

    #[inline]
    pub fn remove(&mut self, p: usize) {
        if p < self.width {
            self.words[p / WORD] &= !(1 << (p % WORD));
        }
    }

    pub fn with(&self, p: usize) -> Self {
        let mut s = self.clone();
        s.insert(p);
        s
    }

    pub fn without(&self, p: usize) -> Self {
        let mut s = self.clone();
        s.remove(p);
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> PointSet {
        Self::full(self.width).difference(self)
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn zip_with(&self, other: &PointSet, f: impl Fn(u64, u64) -> u64) -> PointSet {
        debug_assert_eq!(self.width, other.width);
        PointSet { width: self.width, words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect() }
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> Points<'_> {
        Points { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Members as 1-based integers, the convention of all I/O.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|p| p + 1).collect()
    }

    /// All subsets of `{0, .., width - 1}`; only sensible for small widths.
    pub fn all_subsets(width: usize) -> impl Iterator<Item = PointSet> {
        assert!(width < WORD, "subset enumeration limited to widths below {WORD}");
        (0u64..1 << width).map(move |mask| PointSet { width, words: if width == 0 { vec![] } else { vec![mask] } })
    }
}

pub struct Points<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Points<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = usize;
    type IntoIter = Points<'a>;

    fn into_iter(self) -> Points<'a> {
        self.iter()
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
