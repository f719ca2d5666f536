//! Deterministic Schreier-Sims stabilizer chains.

use num_bigint::BigUint;

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// `transversal[b]` maps `point` to `b` for every `b` in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, point: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level { point, gens, transversal: vec![None; degree], orbit: Vec::new() };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.point);
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let c = s.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().then(s);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
        }
    }
}

/// A base and strong generating set for a permutation group.
///
/// Level `i` holds the strong generators of `G^(i)`, the pointwise
/// stabilizer of the first `i` base points, together with the orbit of
/// base point `i` under `G^(i)`.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain whose base starts with `base_prefix` (in the given
    /// order, redundant points allowed) and is extended as needed.
    pub fn new(degree: usize, generators: &[Permutation], base_prefix: &[usize]) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = base_prefix.to_vec();
        for s in &strong {
            if base.iter().all(|&b| s.fixes(b)) {
                base.push(s.first_moved().unwrap());
            }
        }
        let mut chain = StabChain { degree, levels: Vec::with_capacity(base.len()) };
        for (i, &b) in base.iter().enumerate() {
            let gens = strong.iter().filter(|s| base[..i].iter().all(|&p| s.fixes(p))).cloned().collect();
            chain.levels.push(Level::new(degree, b, gens));
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &b in &orbit {
                for s in &gens {
                    let level = &self.levels[lvl];
                    let ub = level.transversal[b].as_ref().unwrap();
                    let ubs = level.transversal[s.image(b)].as_ref().unwrap();
                    let schreier = ub.then(s).then(&ubs.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, depth) = self.strip(schreier, lvl + 1);
                    let k = self.levels.len();
                    if depth == k {
                        if residue.is_identity() {
                            continue;
                        }
                        let p = residue.first_moved().unwrap();
                        self.levels.push(Level::new(self.degree, p, Vec::new()));
                    }
                    for l in lvl + 1..=depth {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = depth as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.point);
            match &level.transversal[b] {
                None => return (g, l),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, depth) = self.strip(g.clone(), 0);
        depth == self.levels.len() && residue.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.order_from(0)
    }

    /// Order of `G^(level)`.
    pub fn order_from(&self, level: usize) -> BigUint {
        self.levels.iter().skip(level).fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strong generators of `G^(level)`, the pointwise stabilizer of the
    /// first `level` base points.
    pub fn generators_from(&self, level: usize) -> &[Permutation] {
        self.levels.get(level).map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    pub fn orbit_len(&self, level: usize) -> usize {
        self.levels.get(level).map_or(1, |l| l.orbit.len())
    }
}
