//! The fixed objects the battery runs over.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::group::{abelian_invariants, groups_up_to_order_12, FiniteGroup};
use crate::inner::{two_cycle_quandle, CosetQuandleSpec};
use crate::permgroup::{GroupHom, PermGroup, Permutation, DEFAULT_ORDER_BOUND};
use crate::quandle::FiniteQuandle;
use crate::tower::{
    conj_tower, coset_tower, m_product_tower, tak_tower, zhat_group_tower, zp_group_tower, GroupTower, QuandleTower,
};

fn regular(g: &FiniteGroup) -> PermGroup {
    PermGroup::regular_representation(g)
}

fn natural(degree: usize, cycles: &[&str]) -> PermGroup {
    let gens: Vec<Permutation> = cycles.iter().map(|c| Permutation::parse(c, degree).expect("cycle")).collect();
    PermGroup::generate(degree, &gens, DEFAULT_ORDER_BOUND).expect("small group")
}

fn dihedral_natural(n: usize) -> PermGroup {
    let rotation = Permutation::from_cycles(n, &[(0..n).collect()]).expect("cycle");
    let reflection = Permutation::new((0..n).map(|i| (n - i) % n).collect()).expect("permutation");
    PermGroup::generate(n, &[rotation, reflection], DEFAULT_ORDER_BOUND).expect("small group")
}

/// Permutation groups of order at most 48.
pub fn groups_up_to_48() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> =
        groups_up_to_order_12().iter().map(|(name, g)| (name.clone(), regular(g))).collect();
    out.push(("S4".into(), PermGroup::symmetric(4)));
    for n in 7..=24 {
        out.push((format!("D{n}"), dihedral_natural(n)));
    }
    for m in 4..=12 {
        out.push((format!("Dic{m}"), regular(&FiniteGroup::dicyclic(m))));
    }
    let s4 = PermGroup::symmetric(4);
    let s3 = PermGroup::symmetric(3);
    let products = [
        ("S3xS3", s3.direct_product(&s3, DEFAULT_ORDER_BOUND)),
        ("S4xZ2", s4.direct_product(&PermGroup::symmetric(2), DEFAULT_ORDER_BOUND)),
        ("A4xZ4", natural(4, &["(0 1 2)", "(1 2 3)"]).direct_product(&natural(4, &["(0 1 2 3)"]), DEFAULT_ORDER_BOUND)),
    ];
    for (name, g) in products {
        out.push((name.into(), g.expect("order 48 fits the bound")));
    }
    out
}

/// A spec `(G, H, h)` with `H` generated by one or two random elements and
/// `h` random in the centre of `H`.
pub fn random_spec(g: &PermGroup, rng: &mut impl Rng) -> CosetQuandleSpec {
    let k = rng.gen_range(1..=2);
    let gens: Vec<Permutation> = (0..k).map(|_| g.elements().choose(rng).expect("nonempty").clone()).collect();
    let h_group = g.subgroup(&gens).expect("subgroup of a small group");
    let centre = h_group.center();
    let h = centre.elements().choose(rng).expect("identity at least").clone();
    CosetQuandleSpec::new(g.clone(), h_group, h).expect("h is central in H")
}

/// Surjective homomorphisms `G → Γ` with `|G| ≤ 24`.
pub fn surjections() -> Vec<(String, PermGroup, PermGroup, GroupHom)> {
    let mut out = Vec::new();
    let restrict = |g: &PermGroup, a: &PermGroup| {
        let d = a.degree();
        GroupHom::from_map(g, a, |p| Permutation::new(p.images()[..d].to_vec()).expect("permutation"))
            .expect("projection")
    };
    let factors: Vec<(&str, PermGroup)> = vec![
        ("S3", PermGroup::symmetric(3)),
        ("Z2", natural(2, &["(0 1)"])),
        ("Z3", natural(3, &["(0 1 2)"])),
        ("Z4", natural(4, &["(0 1 2 3)"])),
        ("D4", dihedral_natural(4)),
        ("Q8", regular(&FiniteGroup::dicyclic(2))),
        ("A4", natural(4, &["(0 1 2)", "(1 2 3)"])),
    ];
    for (an, a) in &factors {
        for (bn, b) in &factors {
            if a.order() * b.order() > 24 || a.order() == 1 {
                continue;
            }
            let g = a.direct_product(b, DEFAULT_ORDER_BOUND).expect("small");
            let phi = restrict(&g, a);
            out.push((format!("{an}x{bn} -> {an}"), g, a.clone(), phi));
        }
    }
    // 𝔖₄ on the three ways to split {0, 1, 2, 3} into pairs
    let s4 = PermGroup::symmetric(4);
    let s3 = PermGroup::symmetric(3);
    let splits = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let which = |pairs: [(usize, usize); 2]| {
        let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
        let p = [norm(pairs[0]), norm(pairs[1])];
        splits.iter().position(|s| s.contains(&p[0])).expect("a split")
    };
    let on_splits = GroupHom::from_map(&s4, &s3, |g| {
        Permutation::new(
            splits
                .iter()
                .map(|s| which([(g.apply(s[0].0), g.apply(s[0].1)), (g.apply(s[1].0), g.apply(s[1].1))]))
                .collect(),
        )
        .expect("permutation")
    })
    .expect("S4 acts on splittings");
    out.push(("S4 -> S3".into(), s4, s3.clone(), on_splits));
    for n in [8, 12, 24] {
        let (src, dst) = (regular(&FiniteGroup::cyclic(n)), regular(&FiniteGroup::cyclic(n / 2)));
        let phi = GroupHom::from_generator_images(&src, &dst, &[(cyclic_generator(&src), cyclic_generator(&dst))])
            .expect("reduction");
        out.push((format!("Z{n} -> Z{}", n / 2), src, dst, phi));
    }
    let d6 = dihedral_natural(6);
    let d3 = dihedral_natural(3);
    let fold = GroupHom::from_map(&d6, &d3, |g| {
        Permutation::new((0..3).map(|i| g.apply(i) % 3).collect()).expect("permutation")
    })
    .expect("D6 acts on residues mod 3");
    out.push(("D6 -> D3".into(), d6, d3, fold));
    out
}

/// `x ↦ x + 1` in the regular representation of a cyclic group.
fn cyclic_generator(g: &PermGroup) -> Permutation {
    g.elements().iter().find(|p| p.apply(0) == 1).cloned().expect("a generator")
}

/// Named quandles from every constructor.
pub fn quandles() -> Vec<(String, FiniteQuandle)> {
    let mut out: Vec<(String, FiniteQuandle)> = vec![("Tait".into(), FiniteQuandle::tait())];
    for n in 0..=10 {
        out.push((format!("trivial({n})"), FiniteQuandle::trivial(n)));
    }
    for (name, g) in groups_up_to_order_12() {
        out.push((format!("Conj({name})"), FiniteQuandle::conj(&g)));
        out.push((format!("Core({name})"), FiniteQuandle::core(&g)));
    }
    for n in 1..=16 {
        for orders in abelian_invariants(n) {
            let name = orders.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x");
            let name = if name.is_empty() { "1".into() } else { name };
            out.push((format!("Tak({name})"), FiniteQuandle::tak(&FiniteGroup::abelian(&orders)).expect("abelian")));
        }
    }
    for n in 1..=6 {
        out.push((format!("davis({n})"), FiniteQuandle::davis_quotient(n).expect("n ≥ 1")));
    }
    for n in 2..=5 {
        out.push((format!("M{n}"), two_cycle_quandle(n).expect("n ≥ 2")));
    }
    let small: Vec<(String, FiniteQuandle)> = vec![
        ("Tait".into(), FiniteQuandle::tait()),
        ("trivial(2)".into(), FiniteQuandle::trivial(2)),
        ("Tak(Z5)".into(), FiniteQuandle::tak(&FiniteGroup::cyclic(5)).expect("abelian")),
        ("davis(2)".into(), FiniteQuandle::davis_quotient(2).expect("n ≥ 1")),
        ("Core(D3)".into(), FiniteQuandle::core(&FiniteGroup::dihedral(3))),
    ];
    for (an, a) in &small {
        for (bn, b) in &small {
            out.push((format!("{an} x {bn}"), a.product(b)));
            out.push((format!("{an} + {bn}"), a.disjoint_union(b)));
        }
    }
    out
}

/// Towers of depth at most 4.
pub fn towers() -> Result<Vec<(String, QuandleTower)>> {
    let s3 = PermGroup::symmetric(3);
    let t12 = Permutation::parse("(1 2)", 3)?;
    let s3_const = GroupTower::constant(s3.clone(), 3)?;
    let s4 = PermGroup::symmetric(4);
    let m4_h = s4.subgroup(&[Permutation::parse("(0 1)", 4)?, Permutation::parse("(2 3)", 4)?])?;
    let tait = QuandleTower::constant(FiniteQuandle::tait(), 4)?;
    let mut out = vec![
        ("constant Tait".into(), tait.clone()),
        ("constant trivial(2)".into(), QuandleTower::constant(FiniteQuandle::trivial(2), 3)?),
        ("Tak Z_2".into(), tak_tower(&zp_group_tower(2, 4)?)?),
        ("Tak Z_3".into(), tak_tower(&zp_group_tower(3, 3)?)?),
        ("Tak Z_5".into(), tak_tower(&zp_group_tower(5, 2)?)?),
        ("Tak Z-hat".into(), tak_tower(&zhat_group_tower(4)?)?),
        ("Conj S3".into(), conj_tower(&s3_const)?),
        ("M product".into(), m_product_tower(4)?),
        ("coset S3".into(), coset_tower(&s3_const, &vec![s3.subgroup(std::slice::from_ref(&t12))?; 3], &vec![t12; 3])?),
        (
            "coset S4".into(),
            coset_tower(&GroupTower::constant(s4, 2)?, &vec![m4_h; 2], &vec![Permutation::parse("(0 1)", 4)?; 2])?,
        ),
    ];
    let tak3 = tak_tower(&zp_group_tower(3, 2)?)?;
    let tak2 = tak_tower(&zp_group_tower(2, 3)?)?;
    out.push(("Tait x Tak Z_3".into(), tait.product(&tak3)));
    out.push(("Tak Z_2 + Tait".into(), tak2.disjoint_union(&tait)));
    out.push(("Tait + trivial(1)".into(), tait.disjoint_union(&QuandleTower::constant(FiniteQuandle::trivial(1), 4)?)));
    Ok(out)
}
