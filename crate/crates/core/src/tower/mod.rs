//! Truncated inverse systems: finite chains `Q₀ ← Q₁ ← … ← Q_{N−1}` of
//! finite quandles (or groups) joined by surjective homomorphisms.
//!
//! A tower of depth `N` stands in for a profinite quandle; anything proved
//! about it is "verified to depth N". Index posets are always chains.

mod builders;
mod group;
mod probe;

pub use builders::{
    conj_tower, coset_tower, cyclic_group, m_product_tower, tak_tower, zhat_group_tower, zp_group_tower,
};
pub use group::{inn_tower, levelwise_action_check, GroupTower};
pub use probe::{counterexample_probe, m_product_inn_tower, ProbeLevel, ProbeReport, ProductInnTower, MAX_PROBE_DEPTH};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// `levels[k]` is `Q_k`; `transitions[k][x]` is `t_k(x)` for `x ∈ Q_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleTower {
    levels: Vec<FiniteQuandle>,
    transitions: Vec<Vec<usize>>,
}

impl QuandleTower {
    /// Checks that every transition is a surjective homomorphism.
    pub fn new(levels: Vec<FiniteQuandle>, transitions: Vec<Vec<usize>>) -> Result<QuandleTower> {
        if levels.is_empty() {
            return Err(Error::Malformed("a tower needs at least one level".into()));
        }
        if transitions.len() + 1 != levels.len() {
            return Err(Error::Malformed(format!(
                "{} levels need {} transitions, got {}",
                levels.len(),
                levels.len() - 1,
                transitions.len()
            )));
        }
        for (k, t) in transitions.iter().enumerate() {
            let (lo, hi) = (&levels[k], &levels[k + 1]);
            if t.len() != hi.len() || t.iter().any(|&v| v >= lo.len()) {
                return Err(Error::Malformed(format!("transition {k} has the wrong shape")));
            }
            for x in 0..hi.len() {
                for y in 0..hi.len() {
                    if t[hi.op(x, y)] != lo.op(t[x], t[y]) {
                        return Err(Error::NotHom { level: k, witness: vec![x, y] });
                    }
                }
            }
            let mut hit = vec![false; lo.len()];
            for &v in t {
                hit[v] = true;
            }
            if hit.contains(&false) {
                return Err(Error::NotSurjective { level: k });
            }
        }
        Ok(QuandleTower { levels, transitions })
    }

    /// `q ← q ← … ← q` with identity maps.
    pub fn constant(q: FiniteQuandle, depth: usize) -> Result<QuandleTower> {
        let id: Vec<usize> = (0..q.len()).collect();
        QuandleTower::new(vec![q; depth], vec![id; depth.saturating_sub(1)])
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &FiniteQuandle {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[FiniteQuandle] {
        &self.levels
    }

    pub fn top(&self) -> &FiniteQuandle {
        self.levels.last().expect("nonempty")
    }

    /// The map `Q_{k+1} → Q_k`.
    pub fn transition(&self, k: usize) -> &[usize] {
        &self.transitions[k]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    /// The same tower cut to its first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Result<QuandleTower> {
        if depth == 0 || depth > self.depth() {
            return Err(Error::IndexOutOfRange(format!("depth {depth}")));
        }
        Ok(QuandleTower { levels: self.levels[..depth].to_vec(), transitions: self.transitions[..depth - 1].to_vec() })
    }

    /// A coherent tuple from explicit coordinates, lowest level first.
    pub fn element(&self, coords: Vec<usize>) -> Result<TruncatedElement<'_>> {
        if coords.len() != self.depth() {
            return Err(Error::IndexOutOfRange(format!("{} coordinates for depth {}", coords.len(), self.depth())));
        }
        for (k, &c) in coords.iter().enumerate() {
            if c >= self.levels[k].len() {
                return Err(Error::IndexOutOfRange(format!("coordinate {c} at level {k}")));
            }
        }
        for k in 0..self.transitions.len() {
            if self.transitions[k][coords[k + 1]] != coords[k] {
                return Err(Error::Malformed(format!("coordinates {coords:?} are not coherent at level {k}")));
            }
        }
        Ok(TruncatedElement { tower: self, coords })
    }

    /// The unique coherent tuple ending at `x ∈ Q_{N−1}`.
    pub fn from_top(&self, x: usize) -> Result<TruncatedElement<'_>> {
        if x >= self.top().len() {
            return Err(Error::IndexOutOfRange(format!("element {x} of the top level")));
        }
        let mut coords = vec![0; self.depth()];
        coords[self.depth() - 1] = x;
        for k in (0..self.transitions.len()).rev() {
            coords[k] = self.transitions[k][coords[k + 1]];
        }
        Ok(TruncatedElement { tower: self, coords })
    }

    /// Every coherent tuple, in order of the top coordinate.
    pub fn all_elements(&self) -> Vec<TruncatedElement<'_>> {
        let out: Vec<_> = (0..self.top().len()).map(|x| self.from_top(x).expect("in range")).collect();
        debug_assert!(out.iter().all(|e| self.element(e.coords.clone()).is_ok()));
        out
    }

    /// The fibre of `t_k` over `x ∈ Q_k`.
    pub fn lift(&self, k: usize, x: usize) -> Result<Vec<usize>> {
        if k + 1 >= self.depth() {
            return Err(Error::IndexOutOfRange(format!("no level above {k}")));
        }
        if x >= self.levels[k].len() {
            return Err(Error::IndexOutOfRange(format!("element {x} at level {k}")));
        }
        Ok((0..self.levels[k + 1].len()).filter(|&y| self.transitions[k][y] == x).collect())
    }

    /// Image of `x ∈ Q_j` in `Q_k`, `k ≤ j`.
    pub fn project(&self, j: usize, k: usize, x: usize) -> usize {
        assert!(k <= j && j < self.depth(), "projection {j} → {k}");
        (k..j).rev().fold(x, |x, i| self.transitions[i][x])
    }

    /// Level `k` is `T_k × S_k`, cut to the smaller depth.
    pub fn product(&self, other: &QuandleTower) -> QuandleTower {
        let depth = self.depth().min(other.depth());
        let levels = (0..depth).map(|k| self.levels[k].product(&other.levels[k])).collect();
        let transitions = (0..depth - 1)
            .map(|k| {
                let (m_hi, m_lo) = (other.levels[k + 1].len(), other.levels[k].len());
                (0..self.levels[k + 1].len() * m_hi)
                    .map(|x| self.transitions[k][x / m_hi] * m_lo + other.transitions[k][x % m_hi])
                    .collect()
            })
            .collect();
        QuandleTower::new(levels, transitions).expect("products of surjective homs")
    }

    /// Level `k` is `T_k ⊔ S_k`, cut to the smaller depth.
    pub fn disjoint_union(&self, other: &QuandleTower) -> QuandleTower {
        let depth = self.depth().min(other.depth());
        let levels = (0..depth).map(|k| self.levels[k].disjoint_union(&other.levels[k])).collect();
        let transitions = (0..depth - 1)
            .map(|k| {
                let (n_hi, n_lo) = (self.levels[k + 1].len(), self.levels[k].len());
                (0..n_hi + other.levels[k + 1].len())
                    .map(|x| if x < n_hi { self.transitions[k][x] } else { n_lo + other.transitions[k][x - n_hi] })
                    .collect()
            })
            .collect();
        QuandleTower::new(levels, transitions).expect("sums of surjective homs")
    }

    fn check_members(&self, set: &[TruncatedElement<'_>]) -> Result<()> {
        if set.iter().any(|e| !std::ptr::eq(e.tower, self)) {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    /// Restricts every level to a subquandle, given as sorted element lists,
    /// and renumbers. Each transition must map level `k+1` onto level `k`.
    fn restrict(&self, keep: Vec<Vec<usize>>) -> Result<SubTower> {
        let levels = keep
            .iter()
            .zip(&self.levels)
            .map(|(elems, q)| {
                let pos = |x: usize| elems.binary_search(&x).expect("closed");
                FiniteQuandle::from_fn(elems.len(), |i, j| pos(q.op(elems[i], elems[j])))
            })
            .collect::<Result<Vec<_>>>()?;
        let transitions = (0..self.transitions.len())
            .map(|k| {
                keep[k + 1]
                    .iter()
                    .map(|&x| {
                        let y = self.transitions[k][x];
                        keep[k].binary_search(&y).map_err(|_| {
                            Error::InvariantFailure(format!("level {} element {x} maps outside level {k}", k + 1))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let tower = QuandleTower::new(levels, transitions)?;
        Ok(SubTower { tower, embeddings: keep })
    }

    /// Level `k` is the subquandle of `Q_k` generated by the `k`-th
    /// coordinates of `set`. This is the closure of `set` at this depth.
    pub fn projection_subtower(&self, set: &[TruncatedElement<'_>]) -> Result<SubTower> {
        self.check_members(set)?;
        let keep = (0..self.depth())
            .map(|k| {
                let seed: Vec<usize> = set.iter().map(|e| e.coords[k]).collect();
                self.levels[k].generated_subquandle(&seed).elements().to_vec()
            })
            .collect();
        self.restrict(keep)
    }

    /// Dense to this depth iff every projection of the closure is onto.
    pub fn density_check(&self, set: &[TruncatedElement<'_>]) -> Result<DensityReport> {
        let sub = self.projection_subtower(set)?;
        let levels: Vec<LevelImage> = sub
            .embeddings
            .iter()
            .enumerate()
            .map(|(k, image)| LevelImage {
                level: k,
                size: self.levels[k].len(),
                full: image.len() == self.levels[k].len(),
                image: image.clone(),
            })
            .collect();
        Ok(DensityReport { dense: levels.iter().all(|l| l.full), levels })
    }

    /// Level `k` is the union of the `Inn(Q_k)`-orbits of the `k`-th
    /// coordinates of `set`.
    pub fn orbit_subtower(&self, set: &[TruncatedElement<'_>]) -> Result<SubTower> {
        self.check_members(set)?;
        let keep = (0..self.depth())
            .map(|k| {
                let orbits = self.levels[k].inn_orbits();
                let mut elems: Vec<usize> = orbits
                    .into_iter()
                    .filter(|o| set.iter().any(|e| o.binary_search(&e.coords[k]).is_ok()))
                    .flatten()
                    .collect();
                elems.sort_unstable();
                elems
            })
            .collect();
        self.restrict(keep)
    }

    /// Every level is algebraically connected. A finite certificate only:
    /// it is sufficient for a single orbit of the completed inner group.
    pub fn levelwise_connected(&self) -> bool {
        self.levels.iter().all(FiniteQuandle::is_connected)
    }

    /// Exhaustive check of the slim-basis intersection property: whenever
    /// `e ∈ (i, x) ∩ (j, y)`, the open `(max(i, j), e_max)` contains `e` and
    /// lies inside both.
    pub fn slim_basis_check(&self) -> Result<()> {
        let all = self.all_elements();
        for e in &all {
            for i in 0..self.depth() {
                for j in 0..self.depth() {
                    let u = SlimBasicOpen::new(self, i, e.coords[i])?;
                    let v = SlimBasicOpen::new(self, j, e.coords[j])?;
                    let m = i.max(j);
                    let w = SlimBasicOpen::new(self, m, e.coords[m])?;
                    if !w.contains(e) {
                        return Err(Error::InvariantFailure(format!("{w:?} misses {:?}", e.coords)));
                    }
                    if let Some(f) = all.iter().find(|f| w.contains(f) && !(u.contains(f) && v.contains(f))) {
                        return Err(Error::InvariantFailure(format!(
                            "{:?} lies in {w:?} but not in {u:?} ∩ {v:?}",
                            f.coords
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A depth-`N` approximation of an element of the limit.
#[derive(Debug, Clone)]
pub struct TruncatedElement<'a> {
    tower: &'a QuandleTower,
    coords: Vec<usize>,
}

impl PartialEq for TruncatedElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.tower, other.tower) && self.coords == other.coords
    }
}

impl Eq for TruncatedElement<'_> {}

impl<'a> TruncatedElement<'a> {
    pub fn tower(&self) -> &'a QuandleTower {
        self.tower
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    fn combine(&self, other: &Self, f: impl Fn(&FiniteQuandle, usize, usize) -> usize) -> Result<TruncatedElement<'a>> {
        if !std::ptr::eq(self.tower, other.tower) {
            return Err(Error::TowerMismatch);
        }
        let coords: Vec<usize> =
            (0..self.tower.depth()).map(|k| f(&self.tower.levels[k], self.coords[k], other.coords[k])).collect();
        self.tower
            .element(coords)
            .map_err(|e| Error::InvariantFailure(format!("coordinatewise result is incoherent: {e}")))
    }

    /// `a ◁ b`, coordinatewise.
    pub fn limit_op(&self, other: &Self) -> Result<TruncatedElement<'a>> {
        self.combine(other, |q, a, b| q.op(a, b))
    }

    /// `a ◁⁻¹ b`, coordinatewise.
    pub fn limit_inv_op(&self, other: &Self) -> Result<TruncatedElement<'a>> {
        self.combine(other, |q, a, b| q.inv_op(a, b))
    }
}

/// The open set of tuples whose `level` coordinate is `point`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SlimBasicOpen {
    pub level: usize,
    pub point: usize,
}

impl SlimBasicOpen {
    pub fn new(tower: &QuandleTower, level: usize, point: usize) -> Result<SlimBasicOpen> {
        if level >= tower.depth() || point >= tower.level(level).len() {
            return Err(Error::IndexOutOfRange(format!("open ({level}, {point})")));
        }
        Ok(SlimBasicOpen { level, point })
    }

    pub fn contains(&self, e: &TruncatedElement<'_>) -> bool {
        e.coords[self.level] == self.point
    }
}

/// A tower of subquandles with their positions in the ambient levels.
#[derive(Debug, Clone)]
pub struct SubTower {
    pub tower: QuandleTower,
    /// `embeddings[k][i]` is the element of the ambient `Q_k` numbered `i`.
    pub embeddings: Vec<Vec<usize>>,
}

impl SubTower {
    pub fn is_full(&self, ambient: &QuandleTower) -> bool {
        self.embeddings.iter().zip(ambient.levels()).all(|(e, q)| e.len() == q.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelImage {
    pub level: usize,
    pub size: usize,
    pub full: bool,
    pub image: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub dense: bool,
    pub levels: Vec<LevelImage>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn reduction(from: usize, to: usize) -> Vec<usize> {
        (0..from).map(|x| x % to).collect()
    }

    fn tak2(depth: u32) -> QuandleTower {
        let levels = (1..=depth).map(|k| FiniteQuandle::tak(&FiniteGroup::cyclic(1 << k)).unwrap()).collect();
        let transitions = (1..depth).map(|k| reduction(1 << (k + 1), 1 << k)).collect();
        QuandleTower::new(levels, transitions).unwrap()
    }

    #[test]
    fn validation() {
        assert!(QuandleTower::constant(FiniteQuandle::tait(), 3).is_ok());
        assert_eq!(tak2(3).depth(), 3);
        let t = FiniteQuandle::tait();
        let r = QuandleTower::new(vec![t.clone(), t], vec![vec![0, 0, 0]]);
        assert_eq!(r.unwrap_err(), Error::NotSurjective { level: 0 });
        let r = QuandleTower::new(vec![FiniteQuandle::trivial(2), FiniteQuandle::tait()], vec![vec![0, 1, 1]]);
        assert!(matches!(r, Err(Error::NotHom { level: 0, .. })));
    }

    #[test]
    fn coordinatewise_operation() {
        let t = tak2(2);
        let a = t.element(vec![1, 1]).unwrap();
        let b = t.element(vec![0, 2]).unwrap();
        assert_eq!(a.limit_op(&b).unwrap().coords(), &[1, 3]);
        assert!(t.element(vec![0, 1]).is_err());
        let other = tak2(2);
        let c = other.element(vec![0, 0]).unwrap();
        assert_eq!(a.limit_op(&c).unwrap_err(), Error::TowerMismatch);
    }

    #[test]
    fn lifts_and_elements() {
        let c = QuandleTower::constant(FiniteQuandle::tait(), 3).unwrap();
        assert_eq!(c.lift(0, 2).unwrap(), vec![2]);
        assert_eq!(tak2(2).all_elements().len(), 4);
        assert_eq!(tak2(3).lift(1, 3).unwrap(), vec![3, 7]);
        assert!(tak2(2).lift(1, 0).is_err());
        tak2(3).slim_basis_check().unwrap();
    }

    #[test]
    fn products_and_sums() {
        let one = QuandleTower::constant(FiniteQuandle::trivial(1), 3).unwrap();
        let t = tak2(3);
        assert_eq!(t.product(&one), t);
        let sum = one.disjoint_union(&one);
        assert!(sum.levels().iter().all(|q| *q == FiniteQuandle::trivial(2)));
        assert_eq!(t.disjoint_union(&one).all_elements().len(), 9);
    }

    #[test]
    fn density_examples() {
        let t = tak2(3);
        assert!(!t.density_check(&[]).unwrap().dense);
        let s = [t.element(vec![0, 0, 0]).unwrap(), t.element(vec![1, 1, 1]).unwrap()];
        assert!(t.density_check(&s).unwrap().dense);
        let report = t.density_check(&s[..1]).unwrap();
        assert!(!report.dense);
        assert_eq!(report.levels[0].image, vec![0]);
    }

    #[test]
    fn orbit_subtower_of_a_sum() {
        let c = QuandleTower::constant(FiniteQuandle::tait().disjoint_union(&FiniteQuandle::trivial(1)), 2).unwrap();
        let sub = c.orbit_subtower(&[c.element(vec![1, 1]).unwrap()]).unwrap();
        assert_eq!(sub.embeddings, vec![vec![0, 1, 2], vec![0, 1, 2]]);
        assert_eq!(*sub.tower.level(0), FiniteQuandle::tait());
        assert!(c.orbit_subtower(&[]).unwrap().tower.levels().iter().all(FiniteQuandle::is_empty));
        assert!(!c.levelwise_connected());
    }
}
