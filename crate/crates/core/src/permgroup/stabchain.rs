use super::Permutation;

/// A base and strong generating set built by the incremental Schreier–Sims
/// algorithm. Gives the order of and membership in groups far too large to
/// enumerate.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Generators of the stabilizer of the earlier base points.
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }

    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            let ux = self.transversal[x].clone().expect("orbit point");
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(ux.then(s));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

impl StabChain {
    /// The trivial group on `degree` points.
    pub fn new(degree: usize) -> StabChain {
        StabChain { degree, levels: Vec::new() }
    }

    pub fn from_generators(degree: usize, gens: &[Permutation]) -> StabChain {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Product of the basic orbit lengths; `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Sifts `g` down the chain from level `from`: the level it stopped at
    /// and the residue.
    fn sift(&self, g: &Permutation, from: usize) -> (usize, Permutation) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            match &level.transversal[h.apply(level.base)] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (i, h),
            }
        }
        (self.levels.len(), h)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).1.is_identity()
    }

    /// Puts `r`, which fixes the base points before level `j`, into the
    /// generators of levels `from..=j`.
    fn insert(&mut self, r: Permutation, from: usize, j: usize) {
        if j == self.levels.len() {
            let base = (0..self.degree).find(|&x| r.apply(x) != x).expect("nonidentity");
            self.levels.push(Level::new(self.degree, base));
        }
        for level in &mut self.levels[from..=j] {
            level.gens.push(r.clone());
            level.rebuild();
        }
    }

    /// Adds `g` to the group; false if it was already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree");
        let (j, r) = self.sift(g, 0);
        if r.is_identity() {
            return false;
        }
        self.insert(r, 0, j);
        // every Schreier generator at level i must sift through level i + 1
        let mut i = self.levels.len();
        'levels: while i > 0 {
            let level = &self.levels[i - 1];
            for &x in &level.orbit {
                let ux = level.transversal[x].as_ref().expect("orbit point");
                for s in &level.gens {
                    let uxs = ux.then(s);
                    let uy = level.transversal[s.apply(x)].as_ref().expect("orbit is closed");
                    if uxs == *uy {
                        continue;
                    }
                    let (j, r) = self.sift(&uxs.then(&uy.inverse()), i);
                    if !r.is_identity() {
                        self.insert(r, i, j);
                        i = self.levels.len().min(j + 1);
                        continue 'levels;
                    }
                }
            }
            i -= 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::PermGroup;

    #[test]
    fn orders_match_enumeration() {
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (5, vec!["(0 1)", "(0 1 2 3 4)"]),
            (6, vec!["(0 1 2)", "(3 4)"]),
            (7, vec!["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]),
            (8, vec!["(0 1)(2 3)", "(4 5 6 7)", "(0 2)(1 3)"]),
            (4, vec![]),
        ];
        for (n, gens) in cases {
            let gens: Vec<Permutation> = gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
            let chain = StabChain::from_generators(n, &gens);
            let group = PermGroup::generate(n, &gens, 50_000).unwrap();
            assert_eq!(chain.order(), Some(group.order() as u128));
            for p in PermGroup::symmetric(n).elements() {
                assert_eq!(chain.contains(p), group.contains(p), "{p}");
            }
        }
    }

    #[test]
    fn large_symmetric_group() {
        let n = 12;
        let gens = [Permutation::parse("(0 1)", n).unwrap(), Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()];
        let chain = StabChain::from_generators(n, &gens);
        assert_eq!(chain.order(), Some((1..=12u128).product()));
    }
}
