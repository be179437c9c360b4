use serde::Serialize;

use crate::error::{Error, Result};
use crate::inner::two_cycles;
use crate::permgroup::{GroupHom, PermGroup, Permutation, StabChain};

use super::{inn_tower, m_product_tower, GroupTower};

/// Levels whose faithful inner group would need more than this many
/// stored images (points × order) are skipped in the cross-check.
const FAITHFUL_LIMIT: usize = 4_000_000;

/// The inner groups of the `M₂ × … × M_{k+2}` tower inside `∏ 𝔖ₙ`.
///
/// Level `k` acts on the disjoint union of blocks of sizes `2, …, k+2`
/// (block `n` occupies points `offsets[n-2]..offsets[n-2]+n`). The symmetry
/// at `(τ₂, …, τ_{k+2})` is the tuple of transpositions itself. For
/// `k ≥ 1` this is isomorphic to the inner group acting on the quandle; at
/// `k = 0` it keeps the transposition of `𝔖₂`, which acts trivially on `M₂`.
#[derive(Debug, Clone)]
pub struct ProductInnTower {
    pub groups: GroupTower,
    /// Start of each block.
    pub offsets: Vec<usize>,
}

fn offsets(depth: usize) -> Vec<usize> {
    (2..depth + 2)
        .scan(0, |acc, n| {
            let start = *acc;
            *acc += n;
            Some(start)
        })
        .collect()
}

fn block_degree(k: usize) -> usize {
    (2..k + 3).sum()
}

/// Places one permutation per block, blocks `2..` in order.
fn tuple(parts: &[Permutation]) -> Permutation {
    let images = parts
        .iter()
        .scan(0, |off, p| {
            let start = *off;
            *off += p.degree();
            Some(p.images().iter().map(move |&x| x + start))
        })
        .flatten()
        .collect();
    Permutation::from_images_unchecked(images)
}

pub fn m_product_inn_tower(depth: usize, bound: usize) -> Result<ProductInnTower> {
    if depth == 0 {
        return Err(Error::Malformed("depth must be at least 1".into()));
    }
    let mut levels: Vec<PermGroup> = Vec::with_capacity(depth);
    let mut tuples: Vec<Vec<Permutation>> = vec![Vec::new()];
    for n in 2..depth + 2 {
        let ts: Vec<Permutation> =
            two_cycles(n).into_iter().map(|(a, b)| Permutation::transposition(n, a, b).expect("in range")).collect();
        tuples = tuples
            .iter()
            .flat_map(|prefix| {
                ts.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
        let gens: Vec<Permutation> = tuples.iter().map(|parts| tuple(parts)).collect();
        levels.push(PermGroup::generate(block_degree(n - 2), &gens, bound)?);
    }
    let transitions = (0..depth - 1)
        .map(|k| {
            let d = block_degree(k);
            GroupHom::from_map(&levels[k + 1], &levels[k], |g| {
                Permutation::from_images_unchecked(g.images()[..d].to_vec())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductInnTower { groups: GroupTower::new(levels, transitions)?, offsets: offsets(depth) })
}

/// `ℓₙ = (0 1 … 2⌊n/2⌋−1)` in `𝔖ₙ`.
pub(crate) fn ell(n: usize) -> Permutation {
    let m = 2 * (n / 2);
    Permutation::from_cycles(n, &[(0..m).collect()]).expect("cycle in range")
}

/// Even and odd permutation counts of `𝔖ₙ`, by listing them.
fn parity_counts(n: usize) -> (usize, usize) {
    let all = PermGroup::symmetric(n);
    let odd = all.elements().iter().filter(|p| p.parity().is_odd()).count();
    (all.order() - odd, odd)
}

/// Deepest probe supported; the inner group orders grow factorially.
pub const MAX_PROBE_DEPTH: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeLevel {
    pub level: usize,
    /// The `n` of each factor `Mₙ`.
    pub factors: Vec<usize>,
    pub quandle_size: u64,
    /// From a stabilizer chain on the symmetries.
    pub inn_order: u64,
    /// Order of `{σ ∈ ∏𝔖ₙ : all σₙ of one parity}`, counted by filtering.
    pub same_parity_order: u64,
    /// Order of the enumerated group, when within the bound; every element
    /// was checked to have coordinates of one parity.
    pub enumerated_order: Option<u64>,
    pub inn_is_same_parity: bool,
    /// Order of the inner group acting on the quandle itself, when small
    /// enough to build.
    pub faithful_inn_order: Option<u64>,
    pub quandle_orbits: Option<usize>,
    pub ell_in_inn: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub depth: usize,
    pub levels: Vec<ProbeLevel>,
    /// `(n, #even, #odd)` in `𝔖ₙ`.
    pub parity_table: Vec<(usize, u64, u64)>,
    pub ell_odd: Vec<bool>,
    pub ell_coherent: bool,
    /// `min_transpositions(ℓₙ)` for `n = 2..N+1`.
    pub min_transpositions: Vec<usize>,
    pub unbounded: bool,
    pub passed: bool,
}

/// Symmetries of level `k` in a deterministic order that varies every
/// factor early: the diagonal `i ↦ (τ[i mod |Mₙ|])ₙ` first, then all tuples.
fn symmetry_stream(k: usize) -> impl Iterator<Item = Permutation> {
    let factors: Vec<Vec<Permutation>> = (2..k + 3)
        .map(|n| {
            two_cycles(n).into_iter().map(|(a, b)| Permutation::transposition(n, a, b).expect("in range")).collect()
        })
        .collect();
    let sizes: Vec<usize> = factors.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().product();
    let diagonal = sizes.iter().max().map_or(0, |m| m * m);
    let pick = move |digits: Vec<usize>| -> Permutation {
        let parts: Vec<Permutation> = digits.iter().zip(&factors).map(|(&d, f)| f[d].clone()).collect();
        tuple(&parts)
    };
    let sizes2 = sizes.clone();
    (0..diagonal)
        .map(move |i| sizes.iter().map(|c| i % c).collect::<Vec<_>>())
        .chain((0..total).map(move |mut i| {
            let mut digits = vec![0; sizes2.len()];
            for (d, c) in digits.iter_mut().zip(&sizes2).rev() {
                *d = i % c;
                i /= c;
            }
            digits
        }))
        .map(pick)
}

fn same_parity(p: &Permutation, offsets: &[usize], factors: &[usize]) -> bool {
    let odd: Vec<bool> = offsets
        .iter()
        .zip(factors)
        .map(|(&off, &n)| {
            Permutation::from_images_unchecked(p.images()[off..off + n].iter().map(|&x| x - off).collect())
                .parity()
                .is_odd()
        })
        .collect();
    odd.iter().all(|&b| b == odd[0])
}

/// The finite shadow of the `∏ Mₙ` counterexample: the tuple `ℓ` lies in
/// every truncated inner group while the word length of its coordinates
/// keeps growing.
///
/// Level orders come from stabilizer chains. Every symmetry is a tuple of
/// transpositions, so the inner group lies in the same-parity subgroup;
/// symmetries are fed to the chain until its order reaches that subgroup's.
/// Levels of order at most `bound` are also enumerated and filtered.
pub fn counterexample_probe(depth: usize, bound: usize) -> Result<ProbeReport> {
    if depth == 0 {
        return Err(Error::Malformed("depth must be at least 1".into()));
    }
    if depth > MAX_PROBE_DEPTH {
        return Err(Error::SizeBound { size: depth, bound: MAX_PROBE_DEPTH });
    }
    let offs = offsets(depth);
    let parity_table: Vec<(usize, u64, u64)> = (2..depth + 2)
        .map(|n| {
            let (e, o) = parity_counts(n);
            (n, e as u64, o as u64)
        })
        .collect();

    let ells: Vec<Permutation> = (2..depth + 2).map(ell).collect();
    let ell_levels: Vec<Permutation> = (0..depth).map(|k| tuple(&ells[..k + 1])).collect();

    let mut levels = Vec::with_capacity(depth);
    let mut quandle_size = 1u64;
    for k in 0..depth {
        let factors: Vec<usize> = (2..k + 3).collect();
        quandle_size *= ((k + 2) * (k + 1) / 2) as u64;
        let (all_even, all_odd) = parity_table[..=k].iter().fold((1u64, 1u64), |(e, o), &(_, ne, no)| (e * ne, o * no));
        let target = all_even + all_odd;
        let mut chain = StabChain::new(block_degree(k));
        let mut generators_ok = true;
        for s in symmetry_stream(k) {
            generators_ok &= same_parity(&s, &offs[..=k], &factors);
            chain.add_generator(&s);
            if chain.order() == Some(u128::from(target)) {
                break;
            }
        }
        let inn_order = chain.order().and_then(|o| u64::try_from(o).ok()).expect("fits");
        levels.push(ProbeLevel {
            level: k,
            factors,
            quandle_size,
            inn_order,
            same_parity_order: target,
            enumerated_order: None,
            inn_is_same_parity: generators_ok && inn_order == target,
            faithful_inn_order: None,
            quandle_orbits: None,
            ell_in_inn: chain.contains(&ell_levels[k]),
        });
    }

    // enumerate the prefix that fits the bound
    let fit = levels.iter().take_while(|l| l.inn_order <= bound as u64).count();
    let mut ell_coherent = true;
    if fit > 0 {
        let tower = m_product_inn_tower(fit, bound)?;
        for (k, level) in levels.iter_mut().enumerate().take(fit) {
            let g = tower.groups.level(k);
            level.enumerated_order = Some(g.order() as u64);
            level.inn_is_same_parity &= g.order() as u64 == level.same_parity_order
                && g.elements().iter().all(|p| same_parity(p, &offs[..=k], &level.factors));
            level.ell_in_inn &= g.contains(&ell_levels[k]);
        }
        ell_coherent =
            (0..fit - 1).all(|k| tower.groups.project(k, &ell_levels[k + 1]).is_some_and(|p| *p == ell_levels[k]));
    }
    // restriction to the earlier blocks, above the enumerated prefix
    ell_coherent &= (0..depth - 1).all(|k| ell_levels[k + 1].images()[..block_degree(k)] == *ell_levels[k].images());

    // the inner group acting on the quandle itself
    let faithful = levels
        .iter()
        .take_while(|l| {
            l.quandle_size.saturating_mul(l.inn_order) <= FAITHFUL_LIMIT as u64 && l.inn_order <= bound as u64
        })
        .count();
    if faithful > 0 {
        let q = m_product_tower(faithful)?;
        let inn = inn_tower(&q, bound)?;
        for (k, level) in levels.iter_mut().take(faithful).enumerate() {
            level.faithful_inn_order = Some(inn.level(k).order() as u64);
            level.quandle_orbits = Some(q.level(k).inn_orbits().len());
        }
    }

    let min_transpositions: Vec<usize> = ells.iter().map(Permutation::min_transpositions).collect();
    let formula: Vec<usize> = (2..depth + 2).map(|n| 2 * (n / 2) - 1).collect();
    // a new record at every even n
    let unbounded = min_transpositions == formula
        && (2..depth + 2)
            .zip(&min_transpositions)
            .all(|(n, &m)| n % 2 == 1 || min_transpositions[..n - 2].iter().all(|&e| e < m));
    let ell_odd: Vec<bool> = ells.iter().map(|l| l.parity().is_odd()).collect();
    let faithful_ok =
        levels.iter().all(|l| l.faithful_inn_order.is_none_or(|o| o == if l.level == 0 { 1 } else { l.inn_order }));
    let passed =
        ell_coherent && unbounded && faithful_ok && levels.iter().all(|l| l.inn_is_same_parity && l.ell_in_inn);
    Ok(ProbeReport { depth, levels, parity_table, ell_odd, ell_coherent, min_transpositions, unbounded, passed })
}
