use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Parity of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A permutation of `{0, .., degree - 1}` stored by images: `images[i]` is
/// where `i` goes.
///
/// Products act on the right. `a * b` (equivalently `a.compose(&b)`) first
/// applies `a` and then `b`, so `x · (ab) = (x · a) · b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Trusted constructor for images known to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_cycles(degree, &[vec![a, b]])
    }

    /// Builds a permutation from disjoint cycles; `[a, b, c]` sends a→b→c→a.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(Error::NotPermutation(format!("cycles {cycles:?} on degree {degree}")));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// First `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹ · self · g`
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// All cycles including fixed points, each starting at its least point,
    /// listed by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i == j).count()
    }

    /// Length of a shortest factorization into transpositions: degree minus
    /// the number of cycles.
    pub fn min_transpositions(&self) -> usize {
        self.degree() - self.cycles().len()
    }

    pub fn parity(&self) -> Parity {
        if self.min_transpositions().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }

    /// Parses cycle notation such as `(0 1)(2 4)`; `()` or the empty string is
    /// the identity. Commas are accepted as separators.
    pub fn parse(s: &str, degree: usize) -> Result<Permutation> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return f.write_str("()");
        }
        for c in nontrivial {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    // products of at most k transpositions, by breadth-first search
    fn brute_min_transpositions(target: &Permutation) -> usize {
        let n = target.degree();
        let mut frontier = vec![Permutation::identity(n)];
        let mut seen = std::collections::HashSet::new();
        seen.insert(Permutation::identity(n));
        for k in 0.. {
            if frontier.contains(target) {
                return k;
            }
            let mut next = Vec::new();
            for f in &frontier {
                for a in 0..n {
                    for b in a + 1..n {
                        let q = f * &Permutation::transposition(n, a, b).unwrap();
                        if seen.insert(q.clone()) {
                            next.push(q);
                        }
                    }
                }
            }
            frontier = next;
        }
        unreachable!()
    }

    #[test]
    fn identity_metrics() {
        let e = Permutation::identity(4);
        assert_eq!(e.min_transpositions(), 0);
        assert_eq!(e.parity(), Parity::Even);
        assert_eq!(e.to_string(), "()");
    }

    #[test]
    fn four_cycle_needs_three_transpositions() {
        let c = p("(0 1 2 3)", 4);
        assert_eq!(c.min_transpositions(), 3);
        assert_eq!(brute_min_transpositions(&c), 3);
        assert_eq!(c.parity(), Parity::Odd);
    }

    #[test]
    fn double_transposition() {
        let c = p("(0 1)(2 3)", 4);
        assert_eq!(c.min_transpositions(), 2);
        assert_eq!(brute_min_transpositions(&c), 2);
        assert_eq!(c.parity(), Parity::Even);
    }

    #[test]
    fn formula_matches_search_on_s5() {
        // every element of S5 reached by transposition products
        let n = 5;
        let mut all = vec![Permutation::identity(n)];
        let mut i = 0;
        let mut seen: std::collections::HashSet<_> = all.iter().cloned().collect();
        while i < all.len() {
            for a in 0..n {
                for b in a + 1..n {
                    let q = &all[i] * &Permutation::transposition(n, a, b).unwrap();
                    if seen.insert(q.clone()) {
                        all.push(q);
                    }
                }
            }
            i += 1;
        }
        assert_eq!(all.len(), 120);
        for g in all.iter().step_by(7) {
            assert_eq!(g.min_transpositions(), brute_min_transpositions(g));
        }
    }

    #[test]
    fn composition_is_left_to_right() {
        // x·(ab) = (x·a)·b
        let a = p("(0 1)", 3);
        let b = p("(1 2)", 3);
        let ab = &a * &b;
        assert_eq!(ab.apply(0), b.apply(a.apply(0)));
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.to_string(), "(0 2 1)");
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(a.compose(&b), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("(0 1)(2 4)", 5).to_string(), "(0 1)(2 4)");
        assert_eq!(p("()", 3), Permutation::identity(3));
        assert_eq!(p("", 2), Permutation::identity(2));
        assert!(Permutation::parse("(0 1", 3).is_err());
        assert!(Permutation::parse("(0 5)", 3).is_err());
        assert!(Permutation::parse("(0 1)(1 2)", 3).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }
}
