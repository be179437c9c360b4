//! Finite groups given by Cayley tables, and a small library of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation, DEFAULT_ORDER_BOUND};

/// A finite group on `0..n` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

/// Serialized form `{"n": .., "mul": [[..]], "id": ..}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CayleyTable {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub id: usize,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(mul: Vec<Vec<usize>>, id: usize) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::Malformed("a group needs at least one element".into()));
        }
        if mul.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::Malformed("Cayley table must be square with entries in 0..n".into()));
        }
        if id >= n {
            return Err(Error::Malformed(format!("identity {id} out of range")));
        }
        for (a, row) in mul.iter().enumerate() {
            if mul[id][a] != a || row[id] != a {
                return Err(Error::Malformed(format!("{id} is not an identity (fails at {a})")));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == id) {
                Some(b) if mul[b][a] == id => inv[a] = b,
                _ => return Err(Error::Malformed(format!("{a} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(Error::Malformed(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { mul, inv, id })
    }

    /// For tables known to be groups, e.g. from permutation groups.
    pub(crate) fn new_unchecked(mul: Vec<Vec<usize>>, id: usize) -> Self {
        let inv = (0..mul.len()).map(|a| mul[a].iter().position(|&v| v == id).expect("inverse exists")).collect();
        FiniteGroup { mul, inv, id }
    }

    pub fn from_fn(n: usize, id: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mul = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        FiniteGroup::new(mul, id)
    }

    pub fn from_table(t: CayleyTable) -> Result<Self> {
        if t.mul.len() != t.n {
            return Err(Error::Malformed(format!("declared n = {} but table has {} rows", t.n, t.mul.len())));
        }
        FiniteGroup::new(t.mul, t.id)
    }

    pub fn to_table(&self) -> CayleyTable {
        CayleyTable { n: self.order(), mul: self.mul.clone(), id: self.id }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// A non-commuting pair, if any.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| self.mul[a][b] != self.mul[b][a])
    }

    pub fn is_abelian(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn trivial() -> Self {
        FiniteGroup { mul: vec![vec![0]], inv: vec![0], id: 0 }
    }

    /// ℤ/n written additively: element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup { mul, inv, id: 0 }
    }

    /// Pairs `(a, b)` encoded as `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let mul =
            (0..n).map(|x| (0..n).map(|y| self.mul[x / m][y / m] * m + other.mul[x % m][y % m]).collect()).collect();
        let inv = (0..n).map(|x| self.inv[x / m] * m + other.inv[x % m]).collect();
        FiniteGroup { mul, inv, id: self.id * m + other.id }
    }

    /// ℤ/d₁ × ℤ/d₂ × …; the empty list gives the trivial group.
    pub fn abelian(orders: &[usize]) -> Self {
        orders.iter().fold(FiniteGroup::trivial(), |acc, &d| acc.direct_product(&FiniteGroup::cyclic(d)))
    }

    /// Dihedral group of order `2n`; `r^k s^j` is encoded `k + n j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        FiniteGroup::from_fn(2 * n, 0, |x, y| {
            let (a, i) = (x % n, x / n);
            let (b, j) = (y % n, y / n);
            let k = if i == 0 { (a + b) % n } else { (a + n - b) % n };
            k + n * ((i + j) % 2)
        })
        .expect("dihedral table is a group")
    }

    /// Dicyclic group of order `4m` (`m = 2` is the quaternion group);
    /// `a^k x^j` is encoded `k + 2m j`.
    pub fn dicyclic(m: usize) -> Self {
        assert!(m >= 1);
        let r = 2 * m;
        FiniteGroup::from_fn(4 * m, 0, |x, y| {
            let (k, i) = (x % r, x / r);
            let (l, j) = (y % r, y / r);
            match (i, j) {
                (0, _) => (k + l) % r + r * j,
                (_, 0) => (k + r - l) % r + r,
                _ => (k + r - l + m) % r,
            }
        })
        .expect("dicyclic table is a group")
    }

    pub fn symmetric(n: usize) -> Self {
        PermGroup::symmetric(n).to_finite_group()
    }

    pub fn alternating(n: usize) -> Self {
        let s = PermGroup::symmetric(n);
        let evens: Vec<Permutation> = s.elements().iter().filter(|p| !p.parity().is_odd()).cloned().collect();
        PermGroup::generate(n, &evens, DEFAULT_ORDER_BOUND).expect("alternating group fits the bound").to_finite_group()
    }
}

/// Every group of order at most 12, one per isomorphism class, with a name.
pub fn groups_up_to_order_12() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = vec![("1".into(), FiniteGroup::trivial())];
    for n in 2..=12 {
        for orders in abelian_invariants(n) {
            let name = orders.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x");
            out.push((name, FiniteGroup::abelian(&orders)));
        }
        if n % 2 == 0 && n >= 6 {
            out.push((format!("D{}", n / 2), FiniteGroup::dihedral(n / 2)));
        }
        if n % 4 == 0 && n >= 8 {
            let name = if n == 8 { "Q8".to_string() } else { format!("Dic{}", n / 4) };
            out.push((name, FiniteGroup::dicyclic(n / 4)));
        }
        if n == 12 {
            out.push(("A4".into(), FiniteGroup::alternating(4)));
        }
    }
    out
}

/// Invariant-factor lists `d₁ | d₂ | …` of the abelian groups of order `n`.
pub fn abelian_invariants(n: usize) -> Vec<Vec<usize>> {
    // every list of factors ≥ 2 with d_i | d_{i+1} and product n
    fn go(rest: usize, min_div: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) && d % min_div == 0 {
                // remaining factors must all be multiples of d, so d^k | rest
                let rem = rest / d;
                if rem == 1 || rem.is_multiple_of(d) {
                    acc.push(d);
                    go(rem, d, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}
