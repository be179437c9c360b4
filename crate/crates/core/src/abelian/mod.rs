//! Integer matrices and their Smith normal form, finitely generated abelian
//! groups, the abelian group `AdTak` of a finite kei, and augmented quandles.

mod augmented;
mod matrix;

pub use augmented::AugmentedQuandle;
pub use matrix::{smith_normal_form, Matrix, Scalar, Snf};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_t` with `d₁ | d₂ | … | d_t`, each `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FGAbelianGroup {
    free_rank: usize,
    #[serde(serialize_with = "as_strings")]
    torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<FGAbelianGroup> {
        if let Some(d) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::Malformed(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::Malformed(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    /// The cokernel of `relations`, whose rows are relations among
    /// `relations.cols()` generators.
    pub fn from_relations(relations: &Matrix<BigInt>) -> FGAbelianGroup {
        let snf = smith_normal_form(relations);
        let diag = snf.s.diagonal();
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).map(|d| d.abs()).collect();
        FGAbelianGroup::new(relations.cols() - nonzero, torsion).expect("Smith normal form gives invariant factors")
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// `Z^r x Z/d1 x ...`, or `0` for the trivial group.
impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// One row `gen(x) + gen(x ◁ y) − 2·gen(y)` for every ordered pair.
pub fn adtak_relations(k: &FiniteQuandle) -> Matrix<BigInt> {
    let n = k.len();
    let rows = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| {
            let mut row = vec![BigInt::zero(); n];
            row[x] += 1;
            row[k.op(x, y)] += 1;
            row[y] -= 2;
            row
        })
        .collect();
    Matrix::with_shape(n * n, n, rows).expect("n² × n")
}

/// The free abelian group on `K` modulo `x ◁ y = 2y − x`.
pub fn adtak(k: &FiniteQuandle, require_kei: bool) -> Result<FGAbelianGroup> {
    if require_kei {
        if let Some((x, y)) = k.kei_witness() {
            return Err(Error::NotKei(x, y));
        }
    }
    Ok(FGAbelianGroup::from_relations(&adtak_relations(k)))
}
