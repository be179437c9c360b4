use crate::error::{Error, Result};

use super::FiniteQuandle;

/// A map between the carriers of two finite quandles.
#[derive(Debug, Clone)]
pub struct QuandleHom<'a> {
    src: &'a FiniteQuandle,
    dst: &'a FiniteQuandle,
    map: Vec<usize>,
}

impl<'a> QuandleHom<'a> {
    /// Checks only the shape of `map`; see [`QuandleHom::is_hom`].
    pub fn new(src: &'a FiniteQuandle, dst: &'a FiniteQuandle, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.len() {
            return Err(Error::Malformed(format!("map has {} entries for {} elements", map.len(), src.len())));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= dst.len()) {
            return Err(Error::Malformed(format!("map value {v} out of range")));
        }
        Ok(QuandleHom { src, dst, map })
    }

    pub fn identity(q: &'a FiniteQuandle) -> Self {
        QuandleHom { src: q, dst: q, map: (0..q.len()).collect() }
    }

    pub fn src(&self) -> &'a FiniteQuandle {
        self.src
    }

    pub fn dst(&self) -> &'a FiniteQuandle {
        self.dst
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// First pair `(x, y)` with `f(x ◁ y) ≠ f(x) ◁ f(y)`.
    pub fn hom_witness(&self) -> Option<(usize, usize)> {
        let n = self.src.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.map[self.src.op(x, y)] != self.dst.op(self.map[x], self.map[y]))
    }

    pub fn is_hom(&self) -> bool {
        self.hom_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.dst.len()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.dst.len()];
        self.map.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.src.len() == self.dst.len() && self.is_injective() && self.is_hom()
    }

    /// The inverse map of a bijection.
    pub fn inverse(&self) -> Option<QuandleHom<'a>> {
        if self.src.len() != self.dst.len() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &v) in self.map.iter().enumerate() {
            inv[v] = x;
        }
        Some(QuandleHom { src: self.dst, dst: self.src, map: inv })
    }

    /// `self` then `next`.
    pub fn then<'b>(&self, next: &QuandleHom<'b>) -> Result<QuandleHom<'b>>
    where
        'a: 'b,
    {
        if !std::ptr::eq(self.dst, next.src) && self.dst != next.src {
            return Err(Error::Malformed("composing maps with mismatched carriers".into()));
        }
        Ok(QuandleHom { src: self.src, dst: next.dst, map: self.map.iter().map(|&x| next.map[x]).collect() })
    }
}

/// Per-element isomorphism invariants: Inn-orbit size, cycle type of the
/// symmetry, and how many symmetries fix the element.
fn profile(q: &FiniteQuandle) -> Vec<(usize, Vec<usize>, usize)> {
    let n = q.len();
    let orbit_size = {
        let mut size = vec![0; n];
        let mut comp = vec![usize::MAX; n];
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            comp[s] = s;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for y in 0..n {
                    for z in [q.op(x, y), q.inv_op(x, y)] {
                        if comp[z] == usize::MAX {
                            comp[z] = s;
                            members.push(z);
                        }
                    }
                }
                i += 1;
            }
            for &m in &members {
                size[m] = members.len();
            }
        }
        size
    };
    (0..n)
        .map(|x| {
            let sym = crate::permgroup::Permutation::from_images_unchecked((0..n).map(|z| q.op(z, x)).collect());
            let fixed_by = (0..n).filter(|&y| q.op(x, y) == x).count();
            (orbit_size[x], sym.cycle_type(), fixed_by)
        })
        .collect()
}

struct Search<'q> {
    src: &'q FiniteQuandle,
    dst: &'q FiniteQuandle,
    src_profile: Vec<(usize, Vec<usize>, usize)>,
    dst_profile: Vec<(usize, Vec<usize>, usize)>,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl<'q> Search<'q> {
    fn new(src: &'q FiniteQuandle, dst: &'q FiniteQuandle) -> Option<Self> {
        if src.len() != dst.len() {
            return None;
        }
        let src_profile = profile(src);
        let dst_profile = profile(dst);
        let mut a = src_profile.clone();
        let mut b = dst_profile.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
        let n = src.len();
        Some(Search {
            src,
            dst,
            src_profile,
            dst_profile,
            map: vec![usize::MAX; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
        })
    }

    fn assign(&mut self, x: usize, v: usize) -> bool {
        if self.used[v] || self.src_profile[x] != self.dst_profile[v] {
            return false;
        }
        self.map[x] = v;
        self.used[v] = true;
        self.assigned.push(x);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().expect("nonempty");
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }

    /// Forces every product of assigned elements; false on contradiction.
    fn propagate(&mut self, from: usize) -> bool {
        let mut cursor = from;
        while cursor < self.assigned.len() {
            let a = self.assigned[cursor];
            for bi in 0..=cursor {
                let b = self.assigned[bi];
                for (x, y) in [(a, b), (b, a)] {
                    let c = self.src.op(x, y);
                    let target = self.dst.op(self.map[x], self.map[y]);
                    if self.map[c] == usize::MAX {
                        if !self.assign(c, target) {
                            return false;
                        }
                    } else if self.map[c] != target {
                        return false;
                    }
                }
            }
            cursor += 1;
        }
        true
    }

    /// Depth-first in lexicographic order of the map; `visit` returns false
    /// to stop.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.src.len();
        let Some(x) = (0..n).find(|&x| self.map[x] == usize::MAX) else {
            return visit(&self.map);
        };
        for v in 0..n {
            let mark = self.assigned.len();
            if self.assign(x, v) && self.propagate(mark) && !self.run(visit) {
                return false;
            }
            self.undo_to(mark);
        }
        true
    }
}

/// The lexicographically least isomorphism `src → dst`, if one exists.
pub fn find_isomorphism<'a>(src: &'a FiniteQuandle, dst: &'a FiniteQuandle) -> Option<QuandleHom<'a>> {
    let mut search = Search::new(src, dst)?;
    let mut found = None;
    search.run(&mut |m| {
        found = Some(m.to_vec());
        false
    });
    found.map(|map| QuandleHom { src, dst, map })
}

/// Every isomorphism `src → dst` as a map, in lexicographic order.
pub fn isomorphisms(src: &FiniteQuandle, dst: &FiniteQuandle) -> Vec<Vec<usize>> {
    let Some(mut search) = Search::new(src, dst) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    search.run(&mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn all_bijections(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_bijections(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn identity_and_constant_maps_are_homs() {
        let t = FiniteQuandle::tait();
        assert!(QuandleHom::identity(&t).is_hom());
        let one = FiniteQuandle::trivial(1);
        assert!(QuandleHom::new(&t, &one, vec![0, 0, 0]).unwrap().is_hom());
    }

    #[test]
    fn tait_is_not_trivial() {
        assert!(find_isomorphism(&FiniteQuandle::tait(), &FiniteQuandle::trivial(3)).is_none());
    }

    #[test]
    fn self_isomorphism_is_identity_first() {
        let t = FiniteQuandle::tait();
        assert_eq!(find_isomorphism(&t, &t).unwrap().map(), &[0, 1, 2]);
    }

    #[test]
    fn isomorphisms_agree_with_brute_force() {
        let qs = [
            FiniteQuandle::tait(),
            FiniteQuandle::trivial(4),
            FiniteQuandle::tak(&FiniteGroup::cyclic(5)).unwrap(),
            FiniteQuandle::davis_quotient(3).unwrap(),
            FiniteQuandle::tait().disjoint_union(&FiniteQuandle::trivial(2)),
        ];
        for q in &qs {
            let brute: Vec<Vec<usize>> = all_bijections(q.len())
                .into_iter()
                .filter(|m| QuandleHom::new(q, q, m.clone()).unwrap().is_hom())
                .collect();
            assert_eq!(isomorphisms(q, q), brute);
        }
    }

    #[test]
    fn relabelled_quandles_are_found_and_witness_inverts() {
        let q = FiniteQuandle::core(&FiniteGroup::symmetric(3));
        let perm = [3, 5, 0, 1, 4, 2];
        let r = q.relabel(&perm);
        let f = find_isomorphism(&q, &r).expect("isomorphic");
        assert!(f.is_isomorphism());
        let g = f.inverse().unwrap();
        assert!(g.is_isomorphism());
        assert_eq!(f.then(&g).unwrap().map(), QuandleHom::identity(&q).map());
    }
}
