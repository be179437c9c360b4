use crate::error::{Error, Result};
use crate::permgroup::{Coset, GroupHom, PermGroup, Permutation};
use crate::quandle::{find_isomorphism, FiniteQuandle, QuandleHom};

/// Data `(G, H, h)` for the right coset quandle on `H\G` with
/// `Hg ◁ Hk = H g k⁻¹ h k`. Requires `H ≤ G` and `h ∈ Z(H)`.
#[derive(Debug, Clone)]
pub struct CosetQuandleSpec {
    group: PermGroup,
    subgroup: PermGroup,
    h: Permutation,
}

impl CosetQuandleSpec {
    pub fn new(group: PermGroup, subgroup: PermGroup, h: Permutation) -> Result<Self> {
        if !group.has_subgroup(&subgroup) {
            return Err(Error::InvalidSpec("H is not a subgroup of G".into()));
        }
        if !subgroup.contains(&h) {
            return Err(Error::InvalidSpec(format!("h = {h} is not in H")));
        }
        if !subgroup.centralizes(&h) {
            return Err(Error::InvalidSpec(format!("h = {h} is not central in H")));
        }
        Ok(CosetQuandleSpec { group, subgroup, h })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }
}

/// A coset quandle together with the coset bookkeeping that produced it.
#[derive(Debug, Clone)]
pub struct CosetQuandle {
    pub quandle: FiniteQuandle,
    pub cosets: Vec<Coset>,
    /// Coset index of every element of `G`.
    pub coset_of: Vec<usize>,
}

/// Builds `Q_{G,H,h}`. Element `i` is the `i`-th right coset in
/// [`PermGroup::right_cosets`] order. The table is run through full axiom
/// validation.
pub fn coset_quandle(spec: &CosetQuandleSpec) -> Result<CosetQuandle> {
    let g = &spec.group;
    let cosets = g.right_cosets(&spec.subgroup)?;
    let mut coset_of = vec![0; g.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &e in &c.elements {
            coset_of[e] = i;
        }
    }
    let reps: Vec<&Permutation> = cosets.iter().map(|c| g.element(c.representative)).collect();
    // k⁻¹ h k for each representative
    let conj: Vec<Permutation> = reps.iter().map(|k| spec.h.conjugate_by(k)).collect();
    let n = cosets.len();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let p = reps[i].then(&conj[j]);
                    coset_of[g.index_of(&p).expect("closed under products")]
                })
                .collect()
        })
        .collect();
    let quandle = FiniteQuandle::from_table(table)?;
    Ok(CosetQuandle { quandle, cosets, coset_of })
}

/// The decomposition of a connected quandle at a base point: `G = Inn(Q)`,
/// `H` the stabilizer of the base point, `h = S_base`, and the augmentation
/// `|H g_i| = g_i⁻¹ h g_i` of every coset.
#[derive(Debug, Clone)]
pub struct EhrmanData {
    pub base: usize,
    pub group: PermGroup,
    pub stabilizer: PermGroup,
    pub h: Permutation,
    /// Coset representatives `g_i`, in right-coset order.
    pub reps: Vec<Permutation>,
    /// `aug[i] = g_i⁻¹ h g_i`
    pub aug: Vec<Permutation>,
    /// `point_of_coset[i] = base · g_i`
    pub point_of_coset: Vec<usize>,
}

impl EhrmanData {
    pub fn spec(&self) -> CosetQuandleSpec {
        CosetQuandleSpec { group: self.group.clone(), subgroup: self.stabilizer.clone(), h: self.h.clone() }
    }

    /// The augmentation of the coset at `point`, i.e. `S_point`.
    pub fn augmentation_of_point(&self, point: usize) -> &Permutation {
        let i = self.point_of_coset.iter().position(|&p| p == point).expect("bijection");
        &self.aug[i]
    }
}

/// Computes and checks the decomposition. `InvariantFailure` means the
/// structure theorem failed on this input, which should never happen.
pub fn ehrman_decompose(q: &FiniteQuandle, base: usize, bound: usize) -> Result<EhrmanData> {
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    if base >= q.len() {
        return Err(Error::IndexOutOfRange(format!("base point {base}")));
    }
    let fail = |m: String| Err(Error::InvariantFailure(m));
    let n = q.len();
    let group = q.inn(bound)?;
    let stabilizer = group.stabilizer(base);
    let h = q.symmetry(base);

    if !stabilizer.contains(&h) || !stabilizer.centralizes(&h) {
        return fail(format!("S_{base} = {h} is not central in the stabilizer"));
    }
    if group.order() != n * stabilizer.order() {
        return fail(format!("|G| = {} but |H| · n = {}", group.order(), n * stabilizer.order()));
    }

    let cosets = group.right_cosets(&stabilizer)?;
    let reps: Vec<Permutation> = cosets.iter().map(|c| group.element(c.representative).clone()).collect();
    let aug: Vec<Permutation> = reps.iter().map(|g| h.conjugate_by(g)).collect();
    let point_of_coset: Vec<usize> = reps.iter().map(|g| g.apply(base)).collect();

    // coset ↦ base·g is a well-defined bijection
    let mut hit = vec![false; n];
    for (c, &p) in cosets.iter().zip(&point_of_coset) {
        if c.elements.iter().any(|&e| group.element(e).apply(base) != p) || std::mem::replace(&mut hit[p], true) {
            return fail("cosets do not correspond to points".into());
        }
    }
    // equivariance: H g_i s ↦ (base·g_i)·s for generators s
    let mut coset_of = vec![0; group.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &e in &c.elements {
            coset_of[e] = i;
        }
    }
    for (i, g) in reps.iter().enumerate() {
        for s in group.reduced_generators() {
            let j = coset_of[group.index_of(&g.then(s)).expect("closed")];
            if point_of_coset[j] != s.apply(point_of_coset[i]) {
                return fail(format!("coset bijection is not equivariant at coset {i}, generator {s}"));
            }
        }
    }
    // the augmentation of each coset is the symmetry at its point
    for (a, &p) in aug.iter().zip(&point_of_coset) {
        if *a != q.symmetry(p) {
            return fail(format!("augmentation of point {p} is {a}, not S_{p}"));
        }
    }
    let generated = PermGroup::generate(n, &aug, group.order())?;
    if generated.order() != group.order() {
        return fail("augmentations do not generate Inn(Q)".into());
    }
    Ok(EhrmanData { base, group, stabilizer, h, reps, aug, point_of_coset })
}

/// Rebuilds `Q` as the coset quandle of its decomposition and checks the two
/// are isomorphic; also checks that `Hg_i ↦ base·g_i` is itself an isomorphism.
pub fn ehrman_roundtrip(q: &FiniteQuandle, base: usize, bound: usize) -> Result<bool> {
    let data = ehrman_decompose(q, base, bound)?;
    let rebuilt = coset_quandle(&data.spec())?;
    let direct = QuandleHom::new(&rebuilt.quandle, q, data.point_of_coset.clone())?;
    Ok(direct.is_isomorphism() && find_isomorphism(&rebuilt.quandle, q).is_some())
}

/// `Q_{G,H,h} → Q_{Γ,φ(H),φ(h)}`, `Hg ↦ φ(H)φ(g)`.
#[derive(Debug, Clone)]
pub struct InducedHom {
    pub source: CosetQuandle,
    pub target: CosetQuandle,
    pub target_spec: CosetQuandleSpec,
    pub map: Vec<usize>,
}

impl InducedHom {
    pub fn as_hom(&self) -> QuandleHom<'_> {
        QuandleHom::new(&self.source.quandle, &self.target.quandle, self.map.clone()).expect("shape checked")
    }
}

/// Induces the coset-quandle map from a surjective group homomorphism
/// `phi: G → target`, and checks it is a surjective quandle homomorphism.
pub fn induced_coset_hom(spec: &CosetQuandleSpec, target: &PermGroup, phi: &GroupHom) -> Result<InducedHom> {
    let g = &spec.group;
    if phi.images().len() != g.order() {
        return Err(Error::Malformed("homomorphism source does not match G".into()));
    }
    if !phi.is_surjective() {
        return Err(Error::NotSurjective { level: 0 });
    }
    let image_h = phi.image_of(g, target, &spec.subgroup)?;
    let image_small_h = phi.apply(g, target, &spec.h).expect("h ∈ G").clone();
    let target_spec = CosetQuandleSpec::new(target.clone(), image_h, image_small_h)?;
    let source = coset_quandle(spec)?;
    let down = coset_quandle(&target_spec)?;
    let map: Vec<usize> = source.cosets.iter().map(|c| down.coset_of[phi.image_index(c.representative)]).collect();
    // independent of the representative
    for (i, c) in source.cosets.iter().enumerate() {
        if c.elements.iter().any(|&e| down.coset_of[phi.image_index(e)] != map[i]) {
            return Err(Error::WellDefinednessFailure(format!("coset {i} has several images")));
        }
    }
    let out = InducedHom { source, target: down, target_spec, map };
    {
        let f = out.as_hom();
        if let Some((x, y)) = f.hom_witness() {
            return Err(Error::NotHom { level: 0, witness: vec![x, y] });
        }
        if !f.is_surjective() {
            return Err(Error::NotSurjective { level: 0 });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::permgroup::DEFAULT_ORDER_BOUND;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn s3_spec() -> CosetQuandleSpec {
        let g = PermGroup::symmetric(3);
        let h = g.subgroup(&[p("(1 2)", 3)]).unwrap();
        CosetQuandleSpec::new(g, h, p("(1 2)", 3)).unwrap()
    }

    #[test]
    fn s3_coset_quandle_is_tait() {
        let q = coset_quandle(&s3_spec()).unwrap().quandle;
        assert_eq!(q.len(), 3);
        assert!(find_isomorphism(&q, &FiniteQuandle::tait()).is_some());
    }

    #[test]
    fn whole_group_gives_singleton() {
        let g = PermGroup::symmetric(3);
        let spec = CosetQuandleSpec::new(g.clone(), g.clone(), Permutation::identity(3)).unwrap();
        assert_eq!(coset_quandle(&spec).unwrap().quandle.len(), 1);
    }

    #[test]
    fn identity_h_gives_trivial_quandle() {
        let g = PermGroup::symmetric(4);
        let h = g.subgroup(&[p("(0 1)", 4)]).unwrap();
        let spec = CosetQuandleSpec::new(g, h, Permutation::identity(4)).unwrap();
        assert_eq!(coset_quandle(&spec).unwrap().quandle, FiniteQuandle::trivial(12));
    }

    #[test]
    fn invalid_specs() {
        let g = PermGroup::symmetric(3);
        let h = g.subgroup(&[p("(1 2)", 3)]).unwrap();
        assert!(matches!(CosetQuandleSpec::new(g.clone(), h.clone(), p("(0 1)", 3)), Err(Error::InvalidSpec(_))));
        let other = PermGroup::generate(4, &[p("(0 3)", 4)], 10).unwrap();
        assert!(CosetQuandleSpec::new(g, other, Permutation::identity(4)).is_err());
    }

    #[test]
    fn ehrman_tait() {
        let d = ehrman_decompose(&FiniteQuandle::tait(), 0, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(d.group.order(), 6);
        assert_eq!(d.stabilizer.order(), 2);
        assert_eq!(d.h.to_string(), "(1 2)");
        assert!(d.stabilizer.center().contains(&d.h));
    }

    #[test]
    fn ehrman_singleton_and_tak5() {
        let d = ehrman_decompose(&FiniteQuandle::trivial(1), 0, 10).unwrap();
        assert_eq!((d.group.order(), d.stabilizer.order()), (1, 1));
        assert!(d.h.is_identity());
        let t5 = FiniteQuandle::tak(&FiniteGroup::cyclic(5)).unwrap();
        let d = ehrman_decompose(&t5, 0, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!((d.group.order(), d.stabilizer.order()), (10, 2));
    }

    #[test]
    fn ehrman_rejects_disconnected() {
        assert_eq!(ehrman_decompose(&FiniteQuandle::trivial(2), 0, 10).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn roundtrip_every_base_point() {
        for q in
            [FiniteQuandle::tait(), FiniteQuandle::tak(&FiniteGroup::cyclic(7)).unwrap(), FiniteQuandle::trivial(1)]
        {
            for b in 0..q.len() {
                assert!(ehrman_roundtrip(&q, b, DEFAULT_ORDER_BOUND).unwrap());
            }
        }
    }

    #[test]
    fn identity_induces_identity() {
        let spec = s3_spec();
        let id = GroupHom::identity(spec.group());
        let f = induced_coset_hom(&spec, spec.group(), &id).unwrap();
        assert_eq!(f.map, vec![0, 1, 2]);
    }

    #[test]
    fn sign_map_collapses_to_singleton() {
        let spec = s3_spec();
        let z2 = PermGroup::regular_representation(&FiniteGroup::cyclic(2));
        let pairs: Vec<_> = spec
            .group()
            .generators()
            .iter()
            .map(|g| (g.clone(), z2.element(usize::from(g.parity().is_odd())).clone()))
            .collect();
        let sign = GroupHom::from_generator_images(spec.group(), &z2, &pairs).unwrap();
        let f = induced_coset_hom(&spec, &z2, &sign).unwrap();
        assert_eq!(f.target.quandle.len(), 1);
        assert_eq!(f.target_spec.subgroup().order(), 2);
        assert_eq!(f.map, vec![0, 0, 0]);
    }

    #[test]
    fn cyclic_reduction_between_trivial_quandles() {
        let z4 = PermGroup::regular_representation(&FiniteGroup::cyclic(4));
        let z2 = PermGroup::regular_representation(&FiniteGroup::cyclic(2));
        let two = z4.element(2).clone();
        let h = z4.subgroup(std::slice::from_ref(&two)).unwrap();
        let spec = CosetQuandleSpec::new(z4.clone(), h, two).unwrap();
        let phi = GroupHom::from_generator_images(&z4, &z2, &[(z4.element(1).clone(), z2.element(1).clone())]).unwrap();
        let f = induced_coset_hom(&spec, &z2, &phi).unwrap();
        assert_eq!(f.source.quandle, FiniteQuandle::trivial(2));
        assert_eq!(f.target.quandle, FiniteQuandle::trivial(2));
        assert!(f.as_hom().is_hom() && f.as_hom().is_surjective());
    }

    #[test]
    fn non_surjective_phi_is_rejected() {
        let z2 = PermGroup::regular_representation(&FiniteGroup::cyclic(2));
        let spec = CosetQuandleSpec::new(z2.clone(), PermGroup::trivial(2), Permutation::identity(2)).unwrap();
        let trivial_map = GroupHom::from_element_images(&z2, &z2, vec![0, 0]).unwrap();
        assert_eq!(induced_coset_hom(&spec, &z2, &trivial_map).unwrap_err(), Error::NotSurjective { level: 0 });
    }
}
