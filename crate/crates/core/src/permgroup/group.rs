use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::Permutation;

/// Hard cap on exhaustively enumerated group orders.
pub const DEFAULT_ORDER_BOUND: usize = 200_000;

/// A permutation group with its full element list.
///
/// Elements are enumerated breadth-first from the identity, multiplying on
/// the right by a canonical generating subset: generators are sorted, and a
/// generator already in the group spanned by the earlier ones is skipped.
/// Element `0` is always the identity.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// The generators actually used for enumeration.
    reduced: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

/// A right coset `H g`, represented by its least element in the ambient
/// enumeration order.
#[derive(Debug, Clone)]
pub struct Coset {
    pub representative: usize,
    /// Element indices of the ambient group, sorted.
    pub elements: Vec<usize>,
}

impl PermGroup {
    pub fn generate(degree: usize, gens: &[Permutation], bound: usize) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut sorted: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        sorted.sort();
        sorted.dedup();

        let mut kept: Vec<Permutation> = Vec::new();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        for g in &sorted {
            if index.contains_key(g) {
                continue;
            }
            kept.push(g.clone());
            (elements, index) = closure(degree, &kept, bound)?;
        }
        Ok(PermGroup { degree, generators: sorted, reduced: kept, elements, index })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::generate(degree, &[], 1).expect("trivial group")
    }

    /// 𝔖ₙ generated by the adjacent transpositions.
    pub fn symmetric(n: usize) -> PermGroup {
        let gens: Vec<_> = (1..n).map(|i| Permutation::transposition(n, i - 1, i).expect("in range")).collect();
        PermGroup::generate(n, &gens, usize::MAX).expect("no bound")
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::NotSubgroup(format!("{g} is not in the group")));
        }
        PermGroup::generate(self.degree, gens, self.order())
    }

    /// Subgroup from an element set known to be closed.
    fn closed_subset(&self, members: Vec<Permutation>) -> PermGroup {
        PermGroup::generate(self.degree, &members, members.len().max(1)).expect("closed subset")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators as given (sorted, identity and duplicates removed).
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// A generating subset: each entry is outside the group generated by the
    /// earlier ones.
    pub fn reduced_generators(&self) -> &[Permutation] {
        &self.reduced
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.index.contains_key(p)
    }

    /// Element indices under the group's own multiplication.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.reduced;
        gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// The orbit of `x` in breadth-first order.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        assert!(x < self.degree, "point {x} out of range");
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            let y = out[i];
            for g in &self.reduced {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                }
            }
            i += 1;
        }
        out
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let mut orb = self.orbit(x);
            for &y in &orb {
                seen[y] = true;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// A single orbit covering every point. The empty degree is not transitive.
    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    pub fn stabilizer(&self, x: usize) -> PermGroup {
        let members = self.elements.iter().filter(|g| g.apply(x) == x).cloned().collect();
        self.closed_subset(members)
    }

    pub fn center(&self) -> PermGroup {
        let members = self.elements.iter().filter(|z| self.centralizes(z)).cloned().collect();
        self.closed_subset(members)
    }

    /// `z` commutes with every element of the group.
    pub fn centralizes(&self, z: &Permutation) -> bool {
        self.reduced.iter().all(|g| z.then(g) == g.then(z))
    }

    /// `h`'s elements all lie in `self`.
    pub fn has_subgroup(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.elements.iter().all(|p| self.contains(p))
    }

    pub fn is_normal_subgroup(&self, h: &PermGroup) -> bool {
        self.has_subgroup(h) && self.reduced.iter().all(|g| h.reduced.iter().all(|x| h.contains(&x.conjugate_by(g))))
    }

    /// Partition of `self` into right cosets `H g`, in order of representatives.
    pub fn right_cosets(&self, h: &PermGroup) -> Result<Vec<Coset>> {
        if !self.has_subgroup(h) {
            return Err(Error::NotSubgroup("H is not contained in G".into()));
        }
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        for (gi, g) in self.elements.iter().enumerate() {
            if assigned[gi] {
                continue;
            }
            let mut members: Vec<usize> = h.elements.iter().map(|x| self.index[&x.then(g)]).collect();
            members.sort_unstable();
            for &m in &members {
                assigned[m] = true;
            }
            out.push(Coset { representative: gi, elements: members });
        }
        Ok(out)
    }

    /// The Cayley table of this group over its element indices.
    pub fn to_finite_group(&self) -> FiniteGroup {
        let n = self.order();
        let mul = (0..n).map(|a| (0..n).map(|b| self.mul_index(a, b)).collect()).collect();
        FiniteGroup::new_unchecked(mul, 0)
    }

    /// `self × other` acting on the disjoint union of their points, `self`
    /// first.
    pub fn direct_product(&self, other: &PermGroup, bound: usize) -> Result<PermGroup> {
        let (a, b) = (self.degree, other.degree);
        let left = self
            .reduced
            .iter()
            .map(|g| Permutation::from_images_unchecked(g.images().iter().copied().chain(a..a + b).collect()));
        let right = other
            .reduced
            .iter()
            .map(|g| Permutation::from_images_unchecked((0..a).chain(g.images().iter().map(|&x| x + a)).collect()));
        let gens: Vec<Permutation> = left.chain(right).collect();
        PermGroup::generate(a + b, &gens, bound)
    }

    /// Right-regular representation: `g` acts on `0..|G|` by `x ↦ x g`.
    pub fn regular_representation(group: &FiniteGroup) -> PermGroup {
        let n = group.order();
        let gens: Vec<Permutation> =
            (0..n).map(|g| Permutation::from_images_unchecked((0..n).map(|x| group.mul(x, g)).collect())).collect();
        PermGroup::generate(n, &gens, n).expect("regular representation is faithful")
    }

    /// Pointwise-stable relabelling: the same group with a different
    /// generating set is equal as a set of elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.has_subgroup(other)
    }
}

fn closure(
    degree: usize,
    gens: &[Permutation],
    bound: usize,
) -> Result<(Vec<Permutation>, HashMap<Permutation, usize>)> {
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let next = elements[i].then(g);
            if !index.contains_key(&next) {
                if elements.len() >= bound {
                    return Err(Error::OrderBoundExceeded(bound));
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    Ok((elements, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn s3() -> PermGroup {
        PermGroup::generate(3, &[p("(0 1)", 3), p("(1 2)", 3)], DEFAULT_ORDER_BOUND).unwrap()
    }

    #[test]
    fn direct_products() {
        let s3 = PermGroup::symmetric(3);
        let p = s3.direct_product(&PermGroup::symmetric(2), 100).unwrap();
        assert_eq!((p.degree(), p.order()), (5, 12));
        assert_eq!(p.orbits(), vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn generation_examples() {
        assert_eq!(PermGroup::generate(2, &[p("(0 1)", 2)], 10).unwrap().order(), 2);
        assert_eq!(s3().order(), 6);
        assert_eq!(PermGroup::generate(3, &[], 10).unwrap().order(), 1);
    }

    #[test]
    fn order_bound_is_enforced() {
        let gens = [p("(0 1)", 4), p("(0 1 2 3)", 4)];
        assert_eq!(PermGroup::generate(4, &gens, 23).unwrap_err(), Error::OrderBoundExceeded(23));
        assert_eq!(PermGroup::generate(4, &gens, 24).unwrap().order(), 24);
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = PermGroup::generate(4, &[p("(0 1 2)", 4), p("(2 3)", 4)], 100).unwrap();
        let b = PermGroup::generate(4, &[p("(2 3)", 4), p("(0 1 2)", 4)], 100).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(PermGroup::trivial(3).orbits(), vec![vec![0], vec![1], vec![2]]);
        assert!(s3().is_transitive());
        let g = PermGroup::generate(4, &[p("(0 1)", 4)], 10).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn stabilizer_center_cosets_in_s3() {
        let g = s3();
        let st = g.stabilizer(0);
        assert_eq!(st.order(), 2);
        assert!(st.contains(&p("(1 2)", 3)));
        assert_eq!(g.center().order(), 1);
        let h = g.subgroup(&[p("(1 2)", 3)]).unwrap();
        let cosets = g.right_cosets(&h).unwrap();
        assert_eq!(cosets.len(), 3);
        assert!(cosets.iter().all(|c| c.elements.len() == 2));
    }

    #[test]
    fn cosets_require_subgroup() {
        let g = PermGroup::generate(3, &[p("(0 1)", 3)], 10).unwrap();
        let h = PermGroup::generate(3, &[p("(1 2)", 3)], 10).unwrap();
        assert!(matches!(g.right_cosets(&h), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn regular_representations() {
        let z3 = PermGroup::regular_representation(&FiniteGroup::cyclic(3));
        assert_eq!((z3.degree(), z3.order()), (3, 3));
        assert_eq!(PermGroup::regular_representation(&FiniteGroup::trivial()).order(), 1);
        let s = PermGroup::regular_representation(&FiniteGroup::symmetric(3));
        assert_eq!((s.degree(), s.order()), (6, 6));
    }

    #[test]
    fn cyclic_regular_rep_indexes_by_residue() {
        let z = PermGroup::regular_representation(&FiniteGroup::cyclic(5));
        for k in 0..5 {
            assert_eq!(z.element(k).apply(0), k);
        }
    }
}
