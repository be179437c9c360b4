use std::collections::VecDeque;

use crate::error::{Error, Result};

use super::{PermGroup, Permutation};

/// A group homomorphism between two enumerated permutation groups, stored as
/// the image index of every source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    images: Vec<usize>,
    target_order: usize,
}

impl GroupHom {
    /// Extends `g ↦ φ(g)` from a generating set to all of `src`.
    ///
    /// Walks the Cayley graph of `src` along the given generators; every edge
    /// `x → x·g` is checked against `φ(x)·φ(g)`, so the result is single-valued
    /// and multiplicative or an error is returned. When the pairs cover the
    /// source's reduced generators only those edges are walked, and every
    /// remaining pair is checked against the extension afterwards.
    pub fn from_generator_images(
        src: &PermGroup,
        dst: &PermGroup,
        pairs: &[(Permutation, Permutation)],
    ) -> Result<GroupHom> {
        let mut gens: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for (g, img) in pairs {
            let gi = src
                .index_of(g)
                .ok_or_else(|| Error::NotSubgroup(format!("generator {g} is not in the source group")))?;
            let ii = dst
                .index_of(img)
                .ok_or_else(|| Error::NotSubgroup(format!("image {img} is not in the target group")))?;
            gens.push((gi, ii));
        }
        gens.sort_unstable();
        gens.dedup();
        if let Some(w) = gens.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::WellDefinednessFailure(format!(
                "{} has images {} and {}",
                src.element(w[0].0),
                dst.element(w[0].1),
                dst.element(w[1].1)
            )));
        }
        let reduced: Vec<usize> = src.reduced_generators().iter().map(|g| src.index_of(g).expect("member")).collect();
        let walk: Vec<(usize, usize)> = if reduced.iter().all(|r| gens.iter().any(|(g, _)| g == r)) {
            gens.iter().copied().filter(|(g, _)| reduced.contains(g)).collect()
        } else {
            gens.clone()
        };

        let mut images = vec![usize::MAX; src.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &(g, gi) in &walk {
                let y = src.mul_index(x, g);
                let expected = dst.mul_index(images[x], gi);
                if images[y] == usize::MAX {
                    images[y] = expected;
                    queue.push_back(y);
                } else if images[y] != expected {
                    return Err(Error::WellDefinednessFailure(format!(
                        "{} has images {} and {}",
                        src.element(y),
                        dst.element(images[y]),
                        dst.element(expected)
                    )));
                }
            }
        }
        if let Some(x) = images.iter().position(|&i| i == usize::MAX) {
            return Err(Error::WellDefinednessFailure(format!("generators do not reach {}", src.element(x))));
        }
        for &(g, gi) in &gens {
            if images[g] != gi {
                return Err(Error::WellDefinednessFailure(format!(
                    "{} has images {} and {}",
                    src.element(g),
                    dst.element(images[g]),
                    dst.element(gi)
                )));
            }
        }
        Ok(GroupHom { images, target_order: dst.order() })
    }

    /// Tabulates `f` on every element of `src` and checks the result is a
    /// homomorphism into `dst`. Multiplicativity is checked on the edges
    /// `x → x·g` for the reduced generators `g`, which suffices.
    pub fn from_map(src: &PermGroup, dst: &PermGroup, f: impl Fn(&Permutation) -> Permutation) -> Result<GroupHom> {
        let images = src
            .elements()
            .iter()
            .map(|g| {
                let img = f(g);
                dst.index_of(&img)
                    .ok_or_else(|| Error::NotSubgroup(format!("image {img} of {g} is not in the target group")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images[0] != 0 {
            return Err(Error::NotHom { level: 0, witness: vec![0] });
        }
        for g in src.reduced_generators() {
            let gi = src.index_of(g).expect("member");
            for x in 0..src.order() {
                if images[src.mul_index(x, gi)] != dst.mul_index(images[x], images[gi]) {
                    return Err(Error::NotHom { level: 0, witness: vec![x, gi] });
                }
            }
        }
        Ok(GroupHom { images, target_order: dst.order() })
    }

    /// From a full image table; the homomorphism law is checked on all pairs.
    pub fn from_element_images(src: &PermGroup, dst: &PermGroup, images: Vec<usize>) -> Result<GroupHom> {
        if images.len() != src.order() || images.iter().any(|&i| i >= dst.order()) {
            return Err(Error::Malformed("image table has the wrong shape".into()));
        }
        for a in 0..src.order() {
            for b in 0..src.order() {
                if images[src.mul_index(a, b)] != dst.mul_index(images[a], images[b]) {
                    return Err(Error::NotHom { level: 0, witness: vec![a, b] });
                }
            }
        }
        Ok(GroupHom { images, target_order: dst.order() })
    }

    pub fn identity(g: &PermGroup) -> GroupHom {
        GroupHom { images: (0..g.order()).collect(), target_order: g.order() }
    }

    #[inline]
    pub fn image_index(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn apply<'a>(&self, src: &PermGroup, dst: &'a PermGroup, g: &Permutation) -> Option<&'a Permutation> {
        src.index_of(g).map(|i| dst.element(self.images[i]))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// `self` then `next`.
    pub fn then(&self, next: &GroupHom) -> GroupHom {
        GroupHom { images: self.images.iter().map(|&i| next.images[i]).collect(), target_order: next.target_order }
    }

    /// φ(H) as a subgroup of the target.
    pub fn image_of(&self, src: &PermGroup, dst: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
        let gens: Vec<Permutation> = h
            .generators()
            .iter()
            .map(|g| {
                self.apply(src, dst, g)
                    .cloned()
                    .ok_or_else(|| Error::NotSubgroup(format!("{g} is not in the source group")))
            })
            .collect::<Result<_>>()?;
        dst.subgroup(&gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn z(n: usize) -> PermGroup {
        PermGroup::regular_representation(&FiniteGroup::cyclic(n))
    }

    #[test]
    fn reduction_mod_two() {
        let (z4, z2) = (z(4), z(2));
        let phi = GroupHom::from_generator_images(&z4, &z2, &[(z4.element(1).clone(), z2.element(1).clone())]).unwrap();
        assert_eq!(phi.images(), &[0, 1, 0, 1]);
        assert!(phi.is_surjective());
    }

    #[test]
    fn inconsistent_generator_images_are_rejected() {
        // a generator of order 3 cannot go to one of order 2
        let (z3, z2) = (z(3), z(2));
        let r = GroupHom::from_generator_images(&z3, &z2, &[(z3.element(1).clone(), z2.element(1).clone())]);
        assert!(matches!(r, Err(Error::WellDefinednessFailure(_))));
    }

    #[test]
    fn sign_map_on_s3() {
        let s3 = PermGroup::symmetric(3);
        let z2 = z(2);
        let pairs: Vec<_> =
            s3.generators().iter().map(|g| (g.clone(), z2.element(usize::from(g.parity().is_odd())).clone())).collect();
        let sign = GroupHom::from_generator_images(&s3, &z2, &pairs).unwrap();
        let by_map = GroupHom::from_map(&s3, &z2, |g| z2.element(usize::from(g.parity().is_odd())).clone()).unwrap();
        assert_eq!(by_map, sign);
        for (i, g) in s3.elements().iter().enumerate() {
            assert_eq!(sign.image_index(i), usize::from(g.parity().is_odd()));
        }
        let full = GroupHom::from_element_images(&s3, &z2, sign.images().to_vec()).unwrap();
        assert_eq!(full, sign);
    }
}
