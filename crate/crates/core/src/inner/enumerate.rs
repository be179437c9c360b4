use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// Largest order `enumerate_*` accepts by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 6;

/// Lexicographically least row-major table over all relabellings.
pub fn canonical_form(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = q.len();
    let mut best: Option<Vec<usize>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut flat = vec![0; n * n];
    // Heap's algorithm over relabellings x ↦ perm[x]
    let mut c = vec![0; n];
    let mut consider = |perm: &[usize], best: &mut Option<Vec<usize>>| {
        for x in 0..n {
            for y in 0..n {
                flat[perm[x] * n + perm[y]] = perm[q.op(x, y)];
            }
        }
        if best.as_ref().is_none_or(|b| flat < *b) {
            *best = Some(flat.clone());
        }
    };
    consider(&perm, &mut best);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm, &mut best);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let flat = best.unwrap_or_default();
    (0..n).map(|x| flat[x * n..(x + 1) * n].to_vec()).collect()
}

/// Every quandle structure on `0..n`, by backtracking over columns.
///
/// Column `y` is the symmetry `S_y`, a permutation fixing `y` (Q1, Q2).
/// Right distributivity says exactly that `S_{a ◁ b} = S_b S_a S_b⁻¹` as maps,
/// so once two columns are chosen the column at `a ◁ b` is forced. The
/// search picks the least undetermined column, tries every permutation
/// fixing it, and propagates forced columns until a contradiction or a
/// fixed point.
fn labelled_quandles(n: usize, mut visit: impl FnMut(&FiniteQuandle)) {
    if n == 0 {
        visit(&FiniteQuandle::trivial(0));
        return;
    }
    let mut candidates: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    for perm in all_permutations(n) {
        for (y, cands) in candidates.iter_mut().enumerate() {
            if perm[y] as usize == y {
                cands.push(perm.clone());
            }
        }
    }
    let mut search = ColumnSearch { n, cols: vec![None; n], defined: Vec::with_capacity(n) };
    search.go(&candidates, &mut visit);
}

struct ColumnSearch {
    n: usize,
    cols: Vec<Option<Vec<u8>>>,
    /// Columns in the order they were set, for undo.
    defined: Vec<usize>,
}

impl ColumnSearch {
    fn set(&mut self, y: usize, col: Vec<u8>) {
        self.cols[y] = Some(col);
        self.defined.push(y);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.defined.len() > mark {
            let y = self.defined.pop().expect("nonempty");
            self.cols[y] = None;
        }
    }

    fn propagate(&mut self, from: usize) -> bool {
        let n = self.n;
        let mut cursor = from;
        while cursor < self.defined.len() {
            let a = self.defined[cursor];
            for bi in 0..=cursor {
                let b = self.defined[bi];
                for (a, b) in [(a, b), (b, a)] {
                    let sa = self.cols[a].as_ref().expect("defined");
                    let sb = self.cols[b].as_ref().expect("defined");
                    let c = sb[a] as usize;
                    let mut sb_inv = vec![0u8; n];
                    for (x, &v) in sb.iter().enumerate() {
                        sb_inv[v as usize] = x as u8;
                    }
                    let forced: Vec<u8> = (0..n).map(|x| sb[sa[sb_inv[x] as usize] as usize]).collect();
                    match &self.cols[c] {
                        Some(existing) if *existing != forced => return false,
                        Some(_) => {}
                        None => self.set(c, forced),
                    }
                }
            }
            cursor += 1;
        }
        true
    }

    fn go(&mut self, candidates: &[Vec<Vec<u8>>], visit: &mut dyn FnMut(&FiniteQuandle)) {
        let n = self.n;
        let Some(y) = (0..n).find(|&y| self.cols[y].is_none()) else {
            let table = (0..n)
                .map(|x| (0..n).map(|y| self.cols[y].as_ref().expect("complete")[x] as usize).collect())
                .collect();
            let q = FiniteQuandle::from_table(table).expect("search only completes valid tables");
            visit(&q);
            return;
        };
        for col in &candidates[y] {
            let mark = self.defined.len();
            self.set(y, col.clone());
            if self.propagate(mark) {
                self.go(candidates, visit);
            }
            self.undo_to(mark);
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for p in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k as u8);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound || n > 250 {
        return Err(Error::SizeBound { size: n, bound });
    }
    Ok(())
}

fn collect(n: usize, up_to_iso: bool, keep: impl Fn(&FiniteQuandle) -> bool) -> Vec<FiniteQuandle> {
    if up_to_iso {
        let mut forms = BTreeSet::new();
        labelled_quandles(n, |q| {
            if keep(q) {
                forms.insert(canonical_form(q));
            }
        });
        forms.into_iter().map(|t| FiniteQuandle::from_table(t).expect("canonical forms are quandles")).collect()
    } else {
        let mut out = Vec::new();
        labelled_quandles(n, |q| {
            if keep(q) {
                out.push(q.clone());
            }
        });
        out
    }
}

/// All quandles of order `n`. Up to isomorphism, each class is represented
/// by its canonical form and the list is sorted by that table; otherwise
/// all labelled structures are listed in search order.
pub fn enumerate_quandles(n: usize, up_to_iso: bool, bound: usize) -> Result<Vec<FiniteQuandle>> {
    check_bound(n, bound)?;
    Ok(collect(n, up_to_iso, |_| true))
}

/// As [`enumerate_quandles`], keeping only the algebraically connected ones.
pub fn enumerate_connected(n: usize, up_to_iso: bool, bound: usize) -> Result<Vec<FiniteQuandle>> {
    check_bound(n, bound)?;
    Ok(collect(n, up_to_iso, FiniteQuandle::is_connected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::find_isomorphism;

    #[test]
    fn connected_of_order_three_is_tait() {
        let qs = enumerate_connected(3, true, 6).unwrap();
        assert_eq!(qs.len(), 1);
        assert!(find_isomorphism(&qs[0], &FiniteQuandle::tait()).is_some());
        assert_eq!(enumerate_connected(1, true, 6).unwrap().len(), 1);
        assert!(enumerate_connected(2, true, 6).unwrap().is_empty());
    }

    #[test]
    fn canonical_form_is_a_class_invariant() {
        let q = FiniteQuandle::tait().disjoint_union(&FiniteQuandle::trivial(1));
        let r = q.relabel(&[2, 0, 3, 1]);
        assert_eq!(canonical_form(&q), canonical_form(&r));
        assert_ne!(canonical_form(&q), canonical_form(&FiniteQuandle::trivial(4)));
    }

    #[test]
    fn labelled_counts_by_orbit_stabilizer() {
        // each class of order 3 contributes 3!/|Aut| labelled copies
        let labelled = enumerate_quandles(3, false, 6).unwrap().len();
        let classes = enumerate_quandles(3, true, 6).unwrap();
        let expected: usize = classes.iter().map(|q| 6 / q.aut().unwrap().order()).sum();
        assert_eq!(labelled, expected);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_connected(7, true, 6), Err(Error::SizeBound { .. })));
    }
}
