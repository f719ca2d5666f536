use std::fmt;

use super::PermError;

/// A bijection of `{0, .., degree - 1}` stored as its image table.
///
/// Permutations act on the right: `x.apply(p).apply(q) == x.apply(p.then(q))`,
/// so `p.compose(q)` means "first `p`, then `q`".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be positive");
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(PermError::PointOutOfRange { point: x, degree: n });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijection);
            }
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// Builds a permutation from disjoint cycles given with 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(PermError::CyclesNotDisjoint { point: x });
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> Result<usize, PermError> {
        self.images.get(x).map(|&y| y as usize).ok_or(PermError::PointOutOfRange { point: x, degree: self.degree() })
    }

    /// Unchecked image; panics if `x` is out of range.
    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    /// `self` followed by `other`; degrees must agree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.image(x) == x
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        (0..self.degree()).find(|&x| !self.fixes(x))
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&y| y as usize)
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, ordered by that point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Relabels the domain: `restrict(keep)` keeps only the listed points
    /// (which must form a union of cycles), renumbered `0..keep.len()`.
    pub fn restrict(&self, keep: &[usize]) -> Option<Permutation> {
        let mut position = vec![usize::MAX; self.degree()];
        for (i, &x) in keep.iter().enumerate() {
            position[x] = i;
        }
        let images = keep
            .iter()
            .map(|&x| match position[self.image(x)] {
                usize::MAX => None,
                i => Some(i),
            })
            .collect::<Option<Vec<_>>>()?;
        Self::from_images(images).ok()
    }
}

impl fmt::Display for Permutation {
    /// Disjoint-cycle notation with 1-based points; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}
