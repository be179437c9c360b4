use crate::error::{Error, Result};
use crate::inner::{induced_coset_hom, two_cycle_quandle, CosetQuandleSpec};
use crate::permgroup::{GroupHom, PermGroup, Permutation};
use crate::quandle::FiniteQuandle;

use super::{GroupTower, QuandleTower};

/// `ℤ/m` acting on itself by `x ↦ x + 1`. Element `i` is the residue `i`.
pub fn cyclic_group(m: usize) -> PermGroup {
    assert!(m > 0, "cyclic group of order 0");
    let shift = Permutation::from_images_unchecked((0..m).map(|x| (x + 1) % m).collect());
    let g = PermGroup::generate(m, &[shift], m).expect("order m");
    debug_assert!((0..m).all(|i| g.element(i).apply(0) == i));
    g
}

fn cyclic_chain(orders: &[usize]) -> Result<GroupTower> {
    let levels: Vec<PermGroup> = orders.iter().map(|&m| cyclic_group(m)).collect();
    let transitions = (0..levels.len() - 1)
        .map(|k| {
            let (m_hi, m_lo) = (orders[k + 1], orders[k]);
            if m_hi % m_lo != 0 {
                return Err(Error::Malformed(format!("{m_lo} does not divide {m_hi}")));
            }
            GroupHom::from_element_images(&levels[k + 1], &levels[k], (0..m_hi).map(|x| x % m_lo).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    GroupTower::new(levels, transitions)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `ℤ/p ← ℤ/p² ← … ← ℤ/p^N` with reduction maps.
pub fn zp_group_tower(p: u64, depth: usize) -> Result<GroupTower> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if depth == 0 {
        return Err(Error::Malformed("depth must be at least 1".into()));
    }
    let p = usize::try_from(p).map_err(|_| Error::SizeBound { size: usize::MAX, bound: usize::MAX })?;
    let orders = (1..=depth as u32)
        .map(|k| p.checked_pow(k).ok_or(Error::SizeBound { size: usize::MAX, bound: usize::MAX }))
        .collect::<Result<Vec<_>>>()?;
    cyclic_chain(&orders)
}

/// `ℤ/1! ← ℤ/2! ← … ← ℤ/N!`, a cofinal chain of finite quotients of `ℤ`.
pub fn zhat_group_tower(depth: usize) -> Result<GroupTower> {
    if depth == 0 {
        return Err(Error::Malformed("depth must be at least 1".into()));
    }
    let orders: Vec<usize> = (1..=depth)
        .scan(1usize, |f, k| {
            *f *= k;
            Some(*f)
        })
        .collect();
    cyclic_chain(&orders)
}

fn group_map_tower(gt: &GroupTower, build: impl Fn(&PermGroup) -> Result<FiniteQuandle>) -> Result<QuandleTower> {
    let levels = gt.levels().iter().map(build).collect::<Result<Vec<_>>>()?;
    let transitions = gt.transitions().iter().map(|t| t.images().to_vec()).collect();
    QuandleTower::new(levels, transitions)
}

/// `Tak(G_k)` on the element indices of each level.
pub fn tak_tower(gt: &GroupTower) -> Result<QuandleTower> {
    group_map_tower(gt, |g| FiniteQuandle::tak(&g.to_finite_group()))
}

/// `Conj(G_k)` on the element indices of each level.
pub fn conj_tower(gt: &GroupTower) -> Result<QuandleTower> {
    group_map_tower(gt, |g| Ok(FiniteQuandle::conj(&g.to_finite_group())))
}

/// Level `k` is `M₂ × M₃ × … × M_{k+2}`; the transition forgets the last
/// factor.
pub fn m_product_tower(depth: usize) -> Result<QuandleTower> {
    if depth == 0 {
        return Err(Error::Malformed("depth must be at least 1".into()));
    }
    let mut levels = vec![two_cycle_quandle(2)?];
    let mut transitions = Vec::new();
    for n in 3..depth + 2 {
        let m = two_cycle_quandle(n)?;
        let prev = levels.last().expect("nonempty");
        transitions.push((0..prev.len() * m.len()).map(|x| x / m.len()).collect());
        levels.push(prev.product(&m));
    }
    QuandleTower::new(levels, transitions)
}

/// The coset quandles `Q_{G_k, H_k, h_k}` joined by the maps induced from
/// the group transitions. The chains must be compatible:
/// `t_k(H_{k+1}) = H_k` and `t_k(h_{k+1}) = h_k`.
pub fn coset_tower(gt: &GroupTower, subgroups: &[PermGroup], hs: &[Permutation]) -> Result<QuandleTower> {
    if subgroups.len() != gt.depth() || hs.len() != gt.depth() {
        return Err(Error::Malformed("chains must have one entry per level".into()));
    }
    let specs = (0..gt.depth())
        .map(|k| CosetQuandleSpec::new(gt.level(k).clone(), subgroups[k].clone(), hs[k].clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut levels = Vec::with_capacity(gt.depth());
    let mut transitions = Vec::new();
    for k in 0..gt.depth() {
        levels.push(crate::inner::coset_quandle(&specs[k])?.quandle);
        if k + 1 == gt.depth() {
            break;
        }
        let phi = gt.transition(k);
        let (hi, lo) = (gt.level(k + 1), gt.level(k));
        let image = phi.image_of(hi, lo, &subgroups[k + 1])?;
        if !image.same_elements(&subgroups[k]) {
            return Err(Error::IncompatibleChain { level: k, detail: "image of H does not match".into() });
        }
        if phi.apply(hi, lo, &hs[k + 1]) != Some(&hs[k]) {
            return Err(Error::IncompatibleChain { level: k, detail: "image of h does not match".into() });
        }
        transitions.push(induced_coset_hom(&specs[k + 1], lo, phi)?.map);
    }
    QuandleTower::new(levels, transitions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::find_isomorphism;

    #[test]
    fn zp_levels() {
        let t = zp_group_tower(3, 2).unwrap();
        assert_eq!(t.level(0).order(), 3);
        assert_eq!(t.level(1).order(), 9);
        assert_eq!(t.transition(0).images(), &[0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert_eq!(zp_group_tower(4, 2).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn zhat_levels() {
        let t = zhat_group_tower(4).unwrap();
        let orders: Vec<usize> = t.levels().iter().map(PermGroup::order).collect();
        assert_eq!(orders, vec![1, 2, 6, 24]);
        tak_tower(&t).unwrap();
    }

    #[test]
    fn m_product_sizes() {
        let t = m_product_tower(3).unwrap();
        let sizes: Vec<usize> = t.levels().iter().map(FiniteQuandle::len).collect();
        assert_eq!(sizes, vec![1, 3, 18]);
    }

    #[test]
    fn tak_of_nonabelian_fails() {
        let s3 = GroupTower::constant(PermGroup::symmetric(3), 2).unwrap();
        assert!(matches!(tak_tower(&s3), Err(Error::NotAbelian(..))));
        assert_eq!(conj_tower(&s3).unwrap().level(0).len(), 6);
    }

    #[test]
    fn constant_coset_tower_is_tait() {
        let s3 = PermGroup::symmetric(3);
        let h = Permutation::parse("(1 2)", 3).unwrap();
        let sub = s3.subgroup(std::slice::from_ref(&h)).unwrap();
        let gt = GroupTower::constant(s3, 3).unwrap();
        let t = coset_tower(&gt, &vec![sub; 3], &vec![h; 3]).unwrap();
        assert!(t.levels().iter().all(|q| find_isomorphism(q, &FiniteQuandle::tait()).is_some()));
        assert!(t.levelwise_connected());
    }

    #[test]
    fn incompatible_chain() {
        let s3 = PermGroup::symmetric(3);
        let a = Permutation::parse("(1 2)", 3).unwrap();
        let b = Permutation::parse("(0 1)", 3).unwrap();
        let subs = [s3.subgroup(std::slice::from_ref(&a)).unwrap(), s3.subgroup(std::slice::from_ref(&b)).unwrap()];
        let gt = GroupTower::constant(s3, 2).unwrap();
        assert!(matches!(coset_tower(&gt, &subs, &[a, b]), Err(Error::IncompatibleChain { level: 0, .. })));
    }
}
