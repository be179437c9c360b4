//! Finite quandles as validated operation tables, and the standard
//! constructions on them.

mod hom;
mod sub;

use std::fmt;

pub use hom::{find_isomorphism, isomorphisms, QuandleHom};
pub use sub::{Subquandle, DEFAULT_SUBSET_BOUND};

use crate::error::{Axiom, Error, Result};
use crate::group::FiniteGroup;

/// A finite quandle on `0..n`. `op[x][y]` is `x ◁ y`.
///
/// Construction always goes through [`FiniteQuandle::from_table`], so every
/// value satisfies the three quandle axioms. The right-division table
/// `x ◁⁻¹ y` is stored alongside.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    op: Vec<Vec<usize>>,
    inv: Vec<Vec<usize>>,
}

impl FiniteQuandle {
    /// Checks Q1, Q2 and Q3 in that order and reports the first failing
    /// cell: `[x, x]` for Q1, `[x, y]` for Q2 where row `x` repeats an
    /// earlier value of column `y`, and `[x, y, z]` for Q3.
    pub fn from_table(op: Vec<Vec<usize>>) -> Result<FiniteQuandle> {
        let n = op.len();
        for (x, row) in op.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {x} has {} entries, expected {n}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::Malformed(format!("entry {v} in row {x} is out of range")));
            }
        }
        for (x, row) in op.iter().enumerate() {
            if row[x] != x {
                return Err(Error::AxiomViolation { axiom: Axiom::Q1, witness: vec![x, x] });
            }
        }
        let mut inv = vec![vec![usize::MAX; n]; n];
        for y in 0..n {
            for (x, row) in op.iter().enumerate() {
                let v = row[y];
                if inv[v][y] != usize::MAX {
                    return Err(Error::AxiomViolation { axiom: Axiom::Q2, witness: vec![x, y] });
                }
                inv[v][y] = x;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = op[x][y];
                for z in 0..n {
                    if op[xy][z] != op[op[x][z]][op[y][z]] {
                        return Err(Error::AxiomViolation { axiom: Axiom::Q3, witness: vec![x, y, z] });
                    }
                }
            }
        }
        Ok(FiniteQuandle { op, inv })
    }

    /// Builds the table from `f(x, y) = x ◁ y` and validates it.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<FiniteQuandle> {
        FiniteQuandle::from_table((0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.op.len()
    }

    pub fn is_empty(&self) -> bool {
        self.op.is_empty()
    }

    /// `x ◁ y`
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    /// `x ◁⁻¹ y`
    #[inline]
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    pub fn inv_table(&self) -> &[Vec<usize>] {
        &self.inv
    }

    /// The table with elements numbered from 1, as quandle tables are
    /// usually printed.
    pub fn one_indexed_table(&self) -> Vec<Vec<usize>> {
        self.op.iter().map(|row| row.iter().map(|v| v + 1).collect()).collect()
    }

    /// A pair with `(x ◁ y) ◁ y ≠ x`, if the quandle is not a kei.
    pub fn kei_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| self.op(self.op(x, y), y) != x)
    }

    pub fn is_kei(&self) -> bool {
        self.kei_witness().is_none()
    }

    /// The isomorphic quandle obtained by renaming `x` to `relabel[x]`.
    pub fn relabel(&self, relabel: &[usize]) -> FiniteQuandle {
        let n = self.len();
        let mut op = vec![vec![0; n]; n];
        let mut inv = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                op[relabel[x]][relabel[y]] = relabel[self.op[x][y]];
                inv[relabel[x]][relabel[y]] = relabel[self.inv[x][y]];
            }
        }
        FiniteQuandle { op, inv }
    }

    /// The quandle of three elements whose symmetries are the three
    /// transpositions of its points.
    pub fn tait() -> FiniteQuandle {
        FiniteQuandle::from_table(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).expect("Tait table")
    }

    /// `x ◁ y = x`. `n = 0` gives the empty quandle.
    pub fn trivial(n: usize) -> FiniteQuandle {
        let op: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
        FiniteQuandle { inv: op.clone(), op }
    }

    /// Conjugation quandle: `g ◁ h = h⁻¹ g h`.
    pub fn conj(g: &FiniteGroup) -> FiniteQuandle {
        FiniteQuandle::from_fn(g.order(), |a, b| g.mul(g.mul(g.inv(b), a), b)).expect("conjugation is a quandle")
    }

    /// Takasaki kei on an abelian group: `x ◁ y = 2y − x`, written
    /// multiplicatively as `y x⁻¹ y`.
    pub fn tak(a: &FiniteGroup) -> Result<FiniteQuandle> {
        if let Some((x, y)) = a.commutativity_witness() {
            return Err(Error::NotAbelian(x, y));
        }
        Ok(FiniteQuandle::from_fn(a.order(), |x, y| a.mul(a.mul(y, a.inv(x)), y)).expect("Takasaki kei"))
    }

    /// Core kei: `x ◁ y = y x⁻¹ y`, the symmetry at `y` applied to `x`.
    ///
    /// This is the argument order under which the core of an abelian group
    /// coincides with its Takasaki kei. The other order, `x y⁻¹ x`, is not
    /// right-invertible in general (for ℤ/4, `x ↦ 2x − y` is not injective).
    pub fn core(g: &FiniteGroup) -> FiniteQuandle {
        FiniteQuandle::from_fn(g.order(), |x, y| g.mul(g.mul(y, g.inv(x)), y)).expect("core is a kei")
    }

    /// Pairs `(q, s)` encoded as `q * other.len() + s`, acting coordinatewise.
    pub fn product(&self, other: &FiniteQuandle) -> FiniteQuandle {
        let m = other.len();
        let n = self.len() * m;
        let op = (0..n).map(|x| (0..n).map(|y| self.op[x / m][y / m] * m + other.op[x % m][y % m]).collect()).collect();
        let inv =
            (0..n).map(|x| (0..n).map(|y| self.inv[x / m][y / m] * m + other.inv[x % m][y % m]).collect()).collect();
        FiniteQuandle { op, inv }
    }

    /// `self` on `0..n`, `other` shifted to `n..n+m`; cross terms act trivially.
    pub fn disjoint_union(&self, other: &FiniteQuandle) -> FiniteQuandle {
        let n = self.len();
        let total = n + other.len();
        let build = |t: &[Vec<usize>], u: &[Vec<usize>]| -> Vec<Vec<usize>> {
            (0..total)
                .map(|x| {
                    (0..total)
                        .map(|y| match (x < n, y < n) {
                            (true, true) => t[x][y],
                            (false, false) => u[x - n][y - n] + n,
                            _ => x,
                        })
                        .collect()
                })
                .collect()
        };
        FiniteQuandle { op: build(&self.op, &other.op), inv: build(&self.inv, &other.inv) }
    }

    /// Finite quotient `ℤ/n ⊔ {∞} ⊔ {s}` of the one-point compactified
    /// integers with a shift point. Residues are `0..n`, `∞` is `n`, `s` is
    /// `n + 1`; the only nontrivial products are `[x] ◁ s = [x + 1]`.
    pub fn davis_quotient(n: usize) -> Result<FiniteQuandle> {
        if n == 0 {
            return Err(Error::Malformed("modulus must be at least 1".into()));
        }
        let s = n + 1;
        FiniteQuandle::from_fn(n + 2, |x, y| if x < n && y == s { (x + 1) % n } else { x })
    }
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuandle({:?})", self.op)
    }
}

impl fmt::Display for FiniteQuandle {
    /// The 1-indexed operation table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        let w = n.to_string().len();
        write!(f, "{:>w$} |", "◁")?;
        for y in 1..=n {
            write!(f, " {y:>w$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat((w + 1) * (n + 1) + 1))?;
        for (x, row) in self.one_indexed_table().iter().enumerate() {
            write!(f, "{:>w$} |", x + 1)?;
            for v in row {
                write!(f, " {v:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(q: &FiniteQuandle) -> Vec<Vec<usize>> {
        q.table().to_vec()
    }

    #[test]
    fn tait_is_valid_and_matches_one_indexed_table() {
        let t = FiniteQuandle::tait();
        assert_eq!(t.one_indexed_table(), vec![vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]);
        assert!(t.is_kei());
    }

    #[test]
    fn singleton_and_empty() {
        assert_eq!(FiniteQuandle::from_table(vec![vec![0]]).unwrap().len(), 1);
        assert!(FiniteQuandle::from_table(vec![]).unwrap().is_empty());
        assert_eq!(FiniteQuandle::trivial(0).len(), 0);
    }

    #[test]
    fn single_cell_edit_of_tait() {
        let err = FiniteQuandle::from_table(vec![vec![0, 0, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap_err();
        assert_eq!(err, Error::AxiomViolation { axiom: Axiom::Q2, witness: vec![2, 1] });
    }

    #[test]
    fn every_single_cell_edit_of_tait_is_rejected() {
        // oracle: a diagonal edit breaks Q1, an off-diagonal edit duplicates
        // a column value
        let base = table(&FiniteQuandle::tait());
        for x in 0..3 {
            for y in 0..3 {
                for v in 0..3 {
                    if v == base[x][y] {
                        continue;
                    }
                    let mut t = base.clone();
                    t[x][y] = v;
                    let expected = if x == y { Axiom::Q1 } else { Axiom::Q2 };
                    match FiniteQuandle::from_table(t) {
                        Err(Error::AxiomViolation { axiom, .. }) => assert_eq!(axiom, expected),
                        other => panic!("edit ({x},{y})={v} gave {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn q3_violation_is_reported() {
        // S_0 = (1 2), S_1 = (2 3), S_2 = S_3 = id: idempotent with bijective
        // columns, but S_{1 ◁ 0} = S_2 is not S_0⁻¹ S_1 S_0
        let t = vec![vec![0, 0, 0, 0], vec![2, 1, 1, 1], vec![1, 3, 2, 2], vec![3, 2, 3, 3]];
        match FiniteQuandle::from_table(t) {
            Err(Error::AxiomViolation { axiom: Axiom::Q3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(FiniteQuandle::from_table(vec![vec![0, 1]]), Err(Error::Malformed(_))));
        assert!(matches!(FiniteQuandle::from_table(vec![vec![0, 2], vec![1, 1]]), Err(Error::Malformed(_))));
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(table(&FiniteQuandle::trivial(1)), vec![vec![0]]);
        assert_eq!(table(&FiniteQuandle::trivial(3)), vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
    }

    #[test]
    fn conj_of_abelian_is_trivial() {
        assert_eq!(FiniteQuandle::conj(&FiniteGroup::cyclic(5)), FiniteQuandle::trivial(5));
        assert_eq!(FiniteQuandle::conj(&FiniteGroup::trivial()).len(), 1);
    }

    #[test]
    fn tak_examples() {
        assert_eq!(FiniteQuandle::tak(&FiniteGroup::cyclic(3)).unwrap().op(0, 1), 2);
        assert_eq!(FiniteQuandle::tak(&FiniteGroup::cyclic(2)).unwrap(), FiniteQuandle::trivial(2));
        assert_eq!(FiniteQuandle::tak(&FiniteGroup::abelian(&[2, 2])).unwrap(), FiniteQuandle::trivial(4));
        assert!(matches!(FiniteQuandle::tak(&FiniteGroup::symmetric(3)), Err(Error::NotAbelian(..))));
    }

    #[test]
    fn core_agrees_with_tak_on_abelian_groups() {
        for n in 1..=8 {
            let z = FiniteGroup::cyclic(n);
            assert_eq!(FiniteQuandle::core(&z), FiniteQuandle::tak(&z).unwrap());
        }
        // the reversed argument order is not even a quandle on ℤ/4
        let z4 = FiniteGroup::cyclic(4);
        assert!(FiniteQuandle::from_fn(4, |x, y| z4.mul(z4.mul(x, z4.inv(y)), x)).is_err());
    }

    #[test]
    fn core_of_s3_is_a_kei() {
        let c = FiniteQuandle::core(&FiniteGroup::symmetric(3));
        assert_eq!(c.len(), 6);
        assert!(c.is_kei());
        assert_eq!(FiniteQuandle::core(&FiniteGroup::trivial()).len(), 1);
    }

    #[test]
    fn product_and_union_sizes() {
        assert_eq!(FiniteQuandle::trivial(2).product(&FiniteQuandle::trivial(3)), FiniteQuandle::trivial(6));
        assert_eq!(FiniteQuandle::tait().product(&FiniteQuandle::trivial(1)), FiniteQuandle::tait());
        assert_eq!(FiniteQuandle::trivial(1).disjoint_union(&FiniteQuandle::trivial(1)), FiniteQuandle::trivial(2));
        let t = FiniteQuandle::tait();
        assert_eq!(t.disjoint_union(&t).len(), 6);
        // revalidate from the raw tables
        for q in [t.product(&t), t.disjoint_union(&FiniteQuandle::trivial(2))] {
            assert_eq!(FiniteQuandle::from_table(q.table().to_vec()).unwrap(), q);
        }
    }

    #[test]
    fn disjoint_union_restricts_and_projects() {
        let (a, b) = (FiniteQuandle::tait(), FiniteQuandle::tak(&FiniteGroup::cyclic(5)).unwrap());
        let u = a.disjoint_union(&b);
        let n = a.len();
        for x in 0..u.len() {
            for y in 0..u.len() {
                let expected = match (x < n, y < n) {
                    (true, true) => a.op(x, y),
                    (false, false) => b.op(x - n, y - n) + n,
                    _ => x,
                };
                assert_eq!(u.op(x, y), expected);
            }
        }
    }

    #[test]
    fn davis_quotients() {
        let d1 = FiniteQuandle::davis_quotient(1).unwrap();
        assert_eq!(d1, FiniteQuandle::trivial(3));
        let d3 = FiniteQuandle::davis_quotient(3).unwrap();
        assert_eq!((0..5).map(|x| d3.op(x, 4)).collect::<Vec<_>>(), vec![1, 2, 0, 3, 4]);
        assert!(FiniteQuandle::davis_quotient(2).is_ok());
        assert!(FiniteQuandle::davis_quotient(0).is_err());
    }

    #[test]
    fn inverse_table_inverts_columns() {
        let q = FiniteQuandle::core(&FiniteGroup::dihedral(4));
        for x in 0..q.len() {
            for y in 0..q.len() {
                assert_eq!(q.op(q.inv_op(x, y), y), x);
                assert_eq!(q.inv_op(q.op(x, y), y), x);
            }
        }
    }
}
