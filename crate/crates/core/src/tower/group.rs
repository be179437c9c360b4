use crate::error::{Error, Result};
use crate::permgroup::{GroupHom, PermGroup, Permutation};

use super::QuandleTower;

/// A chain of permutation groups joined by surjective homomorphisms;
/// `transitions[k]` maps `G_{k+1}` onto `G_k`.
#[derive(Debug, Clone)]
pub struct GroupTower {
    levels: Vec<PermGroup>,
    transitions: Vec<GroupHom>,
}

impl GroupTower {
    pub fn new(levels: Vec<PermGroup>, transitions: Vec<GroupHom>) -> Result<GroupTower> {
        if levels.is_empty() || transitions.len() + 1 != levels.len() {
            return Err(Error::Malformed(format!("{} levels with {} transitions", levels.len(), transitions.len())));
        }
        for (k, t) in transitions.iter().enumerate() {
            if t.source_order() != levels[k + 1].order() || t.target_order() != levels[k].order() {
                return Err(Error::Malformed(format!("transition {k} has the wrong shape")));
            }
            if !t.is_surjective() {
                return Err(Error::NotSurjective { level: k });
            }
        }
        Ok(GroupTower { levels, transitions })
    }

    pub fn constant(g: PermGroup, depth: usize) -> Result<GroupTower> {
        let id = GroupHom::identity(&g);
        GroupTower::new(vec![g; depth], vec![id; depth.saturating_sub(1)])
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &PermGroup {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[PermGroup] {
        &self.levels
    }

    pub fn transition(&self, k: usize) -> &GroupHom {
        &self.transitions[k]
    }

    pub fn transitions(&self) -> &[GroupHom] {
        &self.transitions
    }

    /// `t_k(g)` for `g ∈ G_{k+1}`.
    pub fn project(&self, k: usize, g: &Permutation) -> Option<&Permutation> {
        self.transitions[k].apply(&self.levels[k + 1], &self.levels[k], g)
    }
}

/// `Inn(Q_k)` at every level, with `S_y ↦ S_{t_k(y)}` extended to the whole
/// group. The extension is checked to be single-valued, and the group
/// tower constructor checks it is onto.
pub fn inn_tower(t: &QuandleTower, bound: usize) -> Result<GroupTower> {
    let levels = t.levels().iter().map(|q| q.inn(bound)).collect::<Result<Vec<_>>>()?;
    let transitions = (0..t.depth() - 1)
        .map(|k| {
            let (hi, lo) = (t.level(k + 1), t.level(k));
            let pairs: Vec<(Permutation, Permutation)> =
                (0..hi.len()).map(|y| (hi.symmetry(y), lo.symmetry(t.transition(k)[y]))).collect();
            GroupHom::from_generator_images(&levels[k + 1], &levels[k], &pairs).map_err(|e| match e {
                Error::WellDefinednessFailure(m) => Error::WellDefinednessFailure(format!("level {k}: {m}")),
                e => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GroupTower::new(levels, transitions)
}

/// Exhaustively checks `t_k(x·g) = t_k(x)·t_k(g)` for every level, every
/// `g ∈ G_{k+1}` and every `x ∈ Q_{k+1}`.
pub fn levelwise_action_check(t: &QuandleTower, groups: &GroupTower) -> Result<()> {
    if t.depth() != groups.depth() {
        return Err(Error::TowerMismatch);
    }
    for k in 0..t.depth() {
        if groups.level(k).degree() != t.level(k).len() {
            return Err(Error::Malformed(format!("group at level {k} does not act on Q_{k}")));
        }
    }
    for k in 0..t.depth() - 1 {
        let (hi, lo) = (groups.level(k + 1), groups.level(k));
        let map = t.transition(k);
        for (i, g) in hi.elements().iter().enumerate() {
            let down = lo.element(groups.transition(k).image_index(i));
            for x in 0..t.level(k + 1).len() {
                if map[g.apply(x)] != down.apply(map[x]) {
                    return Err(Error::EquivarianceFailure {
                        level: k,
                        detail: format!(
                            "g = {g}, x = {x}: t(x·g) = {} but t(x)·t(g) = {}",
                            map[g.apply(x)],
                            down.apply(map[x])
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::DEFAULT_ORDER_BOUND;
    use crate::quandle::FiniteQuandle;

    #[test]
    fn constant_tait_gives_constant_s3() {
        let t = QuandleTower::constant(FiniteQuandle::tait(), 3).unwrap();
        let g = inn_tower(&t, DEFAULT_ORDER_BOUND).unwrap();
        assert!(g.levels().iter().all(|l| l.order() == 6));
        assert!(g.transitions().iter().all(|h| *h == GroupHom::identity(g.level(0))));
        levelwise_action_check(&t, &g).unwrap();
    }

    #[test]
    fn trivial_quandles_give_trivial_groups() {
        let t = QuandleTower::constant(FiniteQuandle::trivial(3), 2).unwrap();
        let g = inn_tower(&t, DEFAULT_ORDER_BOUND).unwrap();
        assert!(g.levels().iter().all(|l| l.order() == 1));
    }

    #[test]
    fn corrupted_transition_is_caught() {
        let t = QuandleTower::constant(FiniteQuandle::tait(), 2).unwrap();
        let s3 = PermGroup::symmetric(3);
        let swap = Permutation::parse("(0 1)", 3).unwrap();
        let twist = GroupHom::from_map(&s3, &s3, |g| g.conjugate_by(&swap)).unwrap();
        let bad = GroupTower::new(vec![s3.clone(), s3], vec![twist]).unwrap();
        assert!(matches!(levelwise_action_check(&t, &bad), Err(Error::EquivarianceFailure { level: 0, .. })));
    }
}
