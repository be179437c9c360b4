use crate::error::{Error, Result};

use super::FiniteQuandle;

/// Default cap on the carrier size for subset enumeration.
pub const DEFAULT_SUBSET_BOUND: usize = 8;

/// A subquandle, stored as a sorted element list of its parent. The empty
/// set counts as a subquandle; it is the bottom of the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquandle<'a> {
    parent: &'a FiniteQuandle,
    elems: Vec<usize>,
}

impl<'a> Subquandle<'a> {
    /// Checks closure under `◁` and `◁⁻¹`.
    pub fn new(parent: &'a FiniteQuandle, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        if let Some(&x) = elems.iter().find(|&&x| x >= parent.len()) {
            return Err(Error::IndexOutOfRange(format!("element {x}")));
        }
        if !is_closed(parent, &elems) {
            return Err(Error::Malformed(format!("{elems:?} is not closed")));
        }
        Ok(Subquandle { parent, elems })
    }

    pub fn parent(&self) -> &'a FiniteQuandle {
        self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.elems.len() == self.parent.len()
    }

    pub fn meet(&self, other: &Subquandle<'a>) -> Subquandle<'a> {
        let elems = self.elems.iter().copied().filter(|&x| other.contains(x)).collect();
        Subquandle { parent: self.parent, elems }
    }

    pub fn join(&self, other: &Subquandle<'a>) -> Subquandle<'a> {
        let seed: Vec<usize> = self.elems.iter().chain(&other.elems).copied().collect();
        self.parent.generated_subquandle(&seed)
    }

    /// The subquandle as a quandle in its own right, renumbered `0..len`.
    pub fn to_quandle(&self) -> FiniteQuandle {
        let pos = |x: usize| self.elems.binary_search(&x).expect("closed");
        FiniteQuandle::from_fn(self.len(), |i, j| pos(self.parent.op(self.elems[i], self.elems[j])))
            .expect("subquandles are quandles")
    }
}

fn is_closed(q: &FiniteQuandle, elems: &[usize]) -> bool {
    let mut member = vec![false; q.len()];
    for &x in elems {
        member[x] = true;
    }
    elems.iter().all(|&a| elems.iter().all(|&b| member[q.op(a, b)] && member[q.inv_op(a, b)]))
}

impl FiniteQuandle {
    /// The least subquandle containing `seed`, by worklist closure.
    pub fn generated_subquandle(&self, seed: &[usize]) -> Subquandle<'_> {
        let n = self.len();
        let mut member = vec![false; n];
        let mut members = Vec::new();
        for &s in seed {
            assert!(s < n, "seed element {s} out of range");
            if !member[s] {
                member[s] = true;
                members.push(s);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                for c in [self.op(a, b), self.op(b, a), self.inv_op(a, b), self.inv_op(b, a)] {
                    if !member[c] {
                        member[c] = true;
                        members.push(c);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subquandle { parent: self, elems: members }
    }

    pub fn full_subquandle(&self) -> Subquandle<'_> {
        Subquandle { parent: self, elems: (0..self.len()).collect() }
    }

    /// All subquandles, ordered by size and then lexicographically.
    pub fn all_subquandles(&self, bound: usize) -> Result<Vec<Subquandle<'_>>> {
        let n = self.len();
        if n > bound || n >= usize::BITS as usize {
            return Err(Error::SizeBound { size: n, bound });
        }
        let mut out: Vec<Subquandle<'_>> = (0u64..1 << n)
            .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<Vec<_>>())
            .filter(|elems| is_closed(self, elems))
            .map(|elems| Subquandle { parent: self, elems })
            .collect();
        out.sort_by(|a, b| a.elems.len().cmp(&b.elems.len()).then_with(|| a.elems.cmp(&b.elems)));
        Ok(out)
    }

    /// The first subquandle `B` (in [`FiniteQuandle::all_subquandles`] order)
    /// with `A ∧ B = ∅` and `A ∨ B = Q`.
    pub fn find_complement<'a>(&'a self, a: &Subquandle<'a>, bound: usize) -> Result<Option<Subquandle<'a>>> {
        Ok(self.all_subquandles(bound)?.into_iter().find(|b| a.meet(b).is_empty() && a.join(b).is_full()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn generated_examples_in_tait() {
        let t = FiniteQuandle::tait();
        assert!(t.generated_subquandle(&[]).is_empty());
        assert_eq!(t.generated_subquandle(&[0]).elements(), &[0]);
        assert_eq!(t.generated_subquandle(&[0, 1]).elements(), &[0, 1, 2]);
    }

    #[test]
    fn tait_lattice() {
        let t = FiniteQuandle::tait();
        let subs: Vec<Vec<usize>> = t.all_subquandles(8).unwrap().iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(subs, vec![vec![], vec![0], vec![1], vec![2], vec![0, 1, 2]]);
        let zero = t.generated_subquandle(&[0]);
        assert_eq!(t.find_complement(&zero, 8).unwrap().unwrap().elements(), &[1]);
    }

    #[test]
    fn trivial_complement() {
        let q = FiniteQuandle::trivial(3);
        let zero = q.generated_subquandle(&[0]);
        assert_eq!(q.find_complement(&zero, 8).unwrap().unwrap().elements(), &[1, 2]);
        // the Boolean lattice of all subsets
        assert_eq!(q.all_subquandles(8).unwrap().len(), 8);
    }

    #[test]
    fn bound_is_enforced() {
        let q = FiniteQuandle::trivial(9);
        assert_eq!(q.all_subquandles(8).unwrap_err(), Error::SizeBound { size: 9, bound: 8 });
    }

    #[test]
    fn generated_matches_intersection_of_closed_supersets() {
        let q = FiniteQuandle::core(&FiniteGroup::dihedral(3));
        let subs = q.all_subquandles(8).unwrap();
        for mask in 0u32..(1 << q.len()) {
            let seed: Vec<usize> = (0..q.len()).filter(|&x| mask >> x & 1 == 1).collect();
            let expected = subs
                .iter()
                .filter(|s| seed.iter().all(|&x| s.contains(x)))
                .fold(q.full_subquandle(), |acc, s| acc.meet(s));
            assert_eq!(q.generated_subquandle(&seed), expected, "seed {seed:?}");
        }
    }

    #[test]
    fn subquandle_validation() {
        let t = FiniteQuandle::tait();
        assert!(Subquandle::new(&t, vec![0, 1]).is_err());
        assert!(Subquandle::new(&t, vec![2]).is_ok());
        assert_eq!(Subquandle::new(&t, vec![2, 0, 1]).unwrap().to_quandle(), t);
    }
}
