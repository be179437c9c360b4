//! Inner and full automorphism groups of finite quandles, algebraic
//! connectedness, and the coset-quandle description of connected quandles.
//!
//! Groups act on the right: a point `x` moved by `g` is `x·g = g.apply(x)`,
//! and `x·(gk) = (x·g)·k`. The symmetry at `y` is `S_y: x ↦ x ◁ y`.

mod coset;
mod enumerate;

pub use coset::{
    coset_quandle, ehrman_decompose, ehrman_roundtrip, induced_coset_hom, CosetQuandle, CosetQuandleSpec, EhrmanData,
    InducedHom,
};
pub use enumerate::{canonical_form, enumerate_connected, enumerate_quandles, DEFAULT_ENUMERATION_BOUND};

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};
use crate::quandle::{isomorphisms, FiniteQuandle};

/// Largest carrier for which `aut` enumerates bijections.
pub const AUT_BOUND: usize = 8;

impl FiniteQuandle {
    /// `S_y`, the permutation `x ↦ x ◁ y`.
    pub fn symmetry(&self, y: usize) -> Permutation {
        assert!(y < self.len(), "element {y} out of range");
        Permutation::from_images_unchecked((0..self.len()).map(|x| self.op(x, y)).collect())
    }

    pub fn symmetries(&self) -> Vec<Permutation> {
        (0..self.len()).map(|y| self.symmetry(y)).collect()
    }

    /// `Inn(Q)`, generated by all symmetries.
    pub fn inn(&self, bound: usize) -> Result<PermGroup> {
        PermGroup::generate(self.len(), &self.symmetries(), bound)
    }

    /// `Aut(Q)` by exhaustive search over bijections, for `n ≤ AUT_BOUND`.
    pub fn aut(&self) -> Result<PermGroup> {
        if self.len() > AUT_BOUND {
            return Err(Error::SizeBound { size: self.len(), bound: AUT_BOUND });
        }
        let autos: Vec<Permutation> =
            isomorphisms(self, self).into_iter().map(Permutation::from_images_unchecked).collect();
        let count = autos.len();
        let g = PermGroup::generate(self.len(), &autos, count)?;
        debug_assert_eq!(g.order(), count);
        Ok(g)
    }

    /// Orbits of `Inn(Q)`, found by closing under the symmetries without
    /// enumerating the group.
    pub fn inn_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orbit = vec![s];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for y in 0..n {
                    let z = self.op(x, y);
                    if !seen[z] {
                        seen[z] = true;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// One `Inn(Q)`-orbit covering a nonempty carrier.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.inn_orbits().len() == 1
    }
}

/// `Mₙ`: the transpositions of `𝔖ₙ` under conjugation.
///
/// Element `k` is the `k`-th transposition `(a b)`, `a < b`, in
/// lexicographic order; see [`two_cycles`].
pub fn two_cycle_quandle(n: usize) -> Result<FiniteQuandle> {
    if n < 2 {
        return Err(Error::Malformed(format!("two-cycle quandle needs n ≥ 2, got {n}")));
    }
    let pairs = two_cycles(n);
    let index = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pairs.binary_search(&(a, b)).expect("transposition")
    };
    FiniteQuandle::from_fn(pairs.len(), |x, y| {
        let (a, b) = pairs[x];
        let t = Permutation::transposition(n, pairs[y].0, pairs[y].1).expect("in range");
        index(t.apply(a), t.apply(b))
    })
}

/// The transpositions `(a, b)` of `𝔖ₙ`, `a < b`, in lexicographic order.
pub fn two_cycles(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::permgroup::DEFAULT_ORDER_BOUND;
    use crate::quandle::find_isomorphism;

    #[test]
    fn symmetry_examples() {
        let triv = FiniteQuandle::trivial(3);
        assert!((0..3).all(|y| triv.symmetry(y).is_identity()));
        assert_eq!(FiniteQuandle::tait().symmetry(0).to_string(), "(1 2)");
        let d = FiniteQuandle::davis_quotient(3).unwrap();
        assert_eq!(d.symmetry(4).to_string(), "(0 1 2)");
    }

    #[test]
    fn inn_of_tait_and_trivial() {
        let g = FiniteQuandle::tait().inn(DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_transitive());
        for k in 1..5 {
            let q = FiniteQuandle::trivial(k);
            assert_eq!(q.inn(DEFAULT_ORDER_BOUND).unwrap().order(), 1);
            assert_eq!(q.is_connected(), k == 1);
        }
    }

    #[test]
    fn aut_examples() {
        assert_eq!(FiniteQuandle::trivial(3).aut().unwrap().order(), 6);
        assert_eq!(FiniteQuandle::tait().aut().unwrap().order(), 6);
        assert!(matches!(FiniteQuandle::trivial(9).aut(), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn two_cycle_quandles() {
        assert_eq!(two_cycle_quandle(2).unwrap(), FiniteQuandle::trivial(1));
        let m3 = two_cycle_quandle(3).unwrap();
        assert!(find_isomorphism(&m3, &FiniteQuandle::tait()).is_some());
        assert_eq!(two_cycle_quandle(4).unwrap().inn(DEFAULT_ORDER_BOUND).unwrap().order(), 24);
    }

    #[test]
    fn connectedness_matches_transitivity() {
        let qs = [
            FiniteQuandle::tait(),
            FiniteQuandle::trivial(2),
            FiniteQuandle::tak(&FiniteGroup::cyclic(5)).unwrap(),
            FiniteQuandle::tak(&FiniteGroup::cyclic(4)).unwrap(),
            FiniteQuandle::davis_quotient(2).unwrap(),
            FiniteQuandle::conj(&FiniteGroup::symmetric(3)),
        ];
        for q in &qs {
            let g = q.inn(DEFAULT_ORDER_BOUND).unwrap();
            assert_eq!(q.is_connected(), g.is_transitive());
            assert_eq!(q.inn_orbits(), g.orbits());
        }
    }

    #[test]
    fn inn_is_normal_in_aut() {
        for q in [FiniteQuandle::tait(), FiniteQuandle::davis_quotient(3).unwrap(), two_cycle_quandle(4).unwrap()] {
            let inn = q.inn(DEFAULT_ORDER_BOUND).unwrap();
            let aut = q.aut().unwrap();
            assert!(aut.is_normal_subgroup(&inn));
        }
    }
}
