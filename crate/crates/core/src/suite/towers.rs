use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{corpus, CheckResult};
use crate::quandle::FiniteQuandle;
use crate::tower::{counterexample_probe, inn_tower, levelwise_action_check, QuandleTower, TruncatedElement};

type Outcome = std::result::Result<(), String>;

/// Exhaustive triples up to this many top-level elements; sampled above.
const EXHAUSTIVE_TRIPLES: usize = 64;
const SAMPLED_TRIPLES: usize = 20_000;

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn corpus_or_fail(id: &str, reference: &str) -> std::result::Result<Vec<(String, QuandleTower)>, CheckResult> {
    corpus::towers().map_err(|e| CheckResult::new(id, reference, Err(format!("corpus: {e}"))))
}

fn limit_laws<'a>(name: &str, t: &'a QuandleTower, rng: &mut ChaCha8Rng) -> Outcome {
    let all = t.all_elements();
    let err = |e: crate::Error| format!("{name}: {e}");
    let op = |a: &TruncatedElement<'a>, b: &TruncatedElement<'a>| a.limit_op(b).map_err(err);
    for a in &all {
        ensure(op(a, a)?.coords() == a.coords(), || format!("{name}: Q1 fails at {:?}", a.coords()))?;
        for b in &all {
            let ab = op(a, b)?;
            for k in 0..t.depth() {
                ensure(ab.coords()[k] == t.level(k).op(a.coords()[k], b.coords()[k]), || {
                    format!("{name}: not coordinatewise at level {k}")
                })?;
            }
            let back = ab.limit_inv_op(b).map_err(err)?;
            ensure(back.coords() == a.coords(), || format!("{name}: Q2 fails at {:?}, {:?}", a.coords(), b.coords()))?;
        }
    }
    // right translation by b is a bijection of the limit
    for b in &all {
        let mut hit: Vec<Vec<usize>> =
            all.iter().map(|a| op(a, b).map(|e| e.coords().to_vec())).collect::<Result<_, _>>()?;
        hit.sort();
        hit.dedup();
        ensure(hit.len() == all.len(), || format!("{name}: Q2 fails, ◁ {:?} is not injective", b.coords()))?;
    }
    let q3 = |a: &TruncatedElement<'a>, b: &TruncatedElement<'a>, c: &TruncatedElement<'a>| -> Outcome {
        let lhs = op(&op(a, b)?, c)?;
        let rhs = op(&op(a, c)?, &op(b, c)?)?;
        ensure(lhs.coords() == rhs.coords(), || {
            format!("{name}: Q3 fails at {:?}, {:?}, {:?}", a.coords(), b.coords(), c.coords())
        })
    };
    if all.len() <= EXHAUSTIVE_TRIPLES {
        for a in &all {
            for b in &all {
                for c in &all {
                    q3(a, b, c)?;
                }
            }
        }
    } else {
        for _ in 0..SAMPLED_TRIPLES {
            let pick = |rng: &mut ChaCha8Rng| &all[rng.gen_range(0..all.len())];
            let (a, b, c) = (pick(rng), pick(rng), pick(rng));
            q3(a, b, c)?;
        }
    }
    Ok(())
}

/// Ambient elements of a closure, by pushing its levels through the embeddings.
fn closure_elements<'a>(
    t: &'a QuandleTower,
    set: &[TruncatedElement<'a>],
) -> std::result::Result<Vec<Vec<usize>>, String> {
    let sub = t.projection_subtower(set).map_err(|e| e.to_string())?;
    Ok(sub
        .tower
        .all_elements()
        .iter()
        .map(|e| e.coords().iter().enumerate().map(|(k, &x)| sub.embeddings[k][x]).collect())
        .collect())
}

fn closure_laws(name: &str, t: &QuandleTower, rng: &mut ChaCha8Rng) -> Outcome {
    let all = t.all_elements();
    for _ in 0..8 {
        let mut small: Vec<TruncatedElement<'_>> = {
            let size = rng.gen_range(0..=all.len().min(3));
            all.choose_multiple(rng, size).cloned().collect()
        };
        let extra: Vec<TruncatedElement<'_>> = all.choose_multiple(rng, 2.min(all.len())).cloned().collect();
        let mut large = small.clone();
        large.extend(extra);
        small.sort_by(|a, b| a.coords().cmp(b.coords()));

        let cl_small = closure_elements(t, &small)?;
        let cl_large = closure_elements(t, &large)?;
        ensure(small.iter().all(|e| cl_small.iter().any(|c| c == e.coords())), || {
            format!("{name}: closure is not extensive")
        })?;
        ensure(cl_small.iter().all(|c| cl_large.contains(c)), || format!("{name}: closure is not monotone"))?;
        let again: Vec<TruncatedElement<'_>> =
            cl_small.iter().map(|c| t.element(c.clone())).collect::<crate::Result<_>>().map_err(|e| e.to_string())?;
        let cl_again = closure_elements(t, &again)?;
        ensure(cl_again.len() == cl_small.len(), || format!("{name}: closure is not idempotent"))?;
        // the closure is closed under the limit operations
        for a in &again {
            for b in &again {
                let ab = a.limit_op(b).map_err(|e| e.to_string())?;
                let ai = a.limit_inv_op(b).map_err(|e| e.to_string())?;
                ensure(cl_small.iter().any(|c| c == ab.coords()) && cl_small.iter().any(|c| c == ai.coords()), || {
                    format!(
                        "{name}: closure of {:?} is not a subquandle",
                        small.iter().map(|e| e.coords()).collect::<Vec<_>>()
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn is_level_hom(src: &FiniteQuandle, dst: &FiniteQuandle, map: &[usize]) -> bool {
    (0..src.len()).all(|x| (0..src.len()).all(|y| map[src.op(x, y)] == dst.op(map[x], map[y])))
}

/// The projections out of a product and the inclusions into a disjoint union
/// are homomorphisms at every level and commute with the transitions.
fn combination_coherence(a: &QuandleTower, b: &QuandleTower) -> Outcome {
    let p = a.product(b);
    let u = a.disjoint_union(b);
    QuandleTower::new(p.levels().to_vec(), p.transitions().to_vec()).map_err(|e| format!("product: {e}"))?;
    QuandleTower::new(u.levels().to_vec(), u.transitions().to_vec()).map_err(|e| format!("union: {e}"))?;
    for k in 0..p.depth() {
        let (qa, qb) = (a.level(k), b.level(k));
        let m = qb.len();
        let left: Vec<usize> = (0..p.level(k).len()).map(|i| i / m).collect();
        let right: Vec<usize> = (0..p.level(k).len()).map(|i| i % m).collect();
        ensure(is_level_hom(p.level(k), qa, &left) && is_level_hom(p.level(k), qb, &right), || {
            format!("product projections fail at level {k}")
        })?;
        let into_a: Vec<usize> = (0..qa.len()).collect();
        let into_b: Vec<usize> = (0..qb.len()).map(|x| qa.len() + x).collect();
        ensure(is_level_hom(qa, u.level(k), &into_a) && is_level_hom(qb, u.level(k), &into_b), || {
            format!("union inclusions fail at level {k}")
        })?;
        if k + 1 < p.depth() {
            let mb = b.level(k + 1).len();
            for i in 0..p.level(k + 1).len() {
                let down = p.transition(k)[i];
                ensure(down / m == a.transition(k)[i / mb] && down % m == b.transition(k)[i % mb], || {
                    format!("product transition {k} does not commute at {i}")
                })?;
            }
            let na = a.level(k + 1).len();
            for x in 0..u.level(k + 1).len() {
                let expect = if x < na { a.transition(k)[x] } else { qa.len() + b.transition(k)[x - na] };
                ensure(u.transition(k)[x] == expect, || format!("union transition {k} does not commute at {x}"))?;
            }
        }
    }
    Ok(())
}

pub(super) fn towers_block(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let towers = match corpus_or_fail("towers.validate", "inverse systems of quandles") {
        Ok(t) => t,
        Err(c) => return vec![c],
    };
    let validate = towers.iter().try_for_each(|(name, t)| {
        QuandleTower::new(t.levels().to_vec(), t.transitions().to_vec()).map(|_| ()).map_err(|e| format!("{name}: {e}"))
    });
    let laws = towers.iter().try_for_each(|(name, t)| limit_laws(name, t, rng));
    let slim = towers.iter().try_for_each(|(name, t)| t.slim_basis_check().map_err(|e| format!("{name}: {e}")));
    let closure = towers.iter().try_for_each(|(name, t)| closure_laws(name, t, rng));
    let small: Vec<&(String, QuandleTower)> = towers.iter().filter(|(_, t)| t.top().len() <= 24).collect();
    let combos = small.iter().try_for_each(|(an, a)| {
        small.iter().try_for_each(|(bn, b)| combination_coherence(a, b).map_err(|e| format!("{an}, {bn}: {e}")))
    });
    vec![
        CheckResult::new("towers.validate", "inverse systems of quandles", validate),
        CheckResult::new("towers.limit-axioms", "the limit is a quandle", laws),
        CheckResult::new("towers.slim-basis", "slim basis", slim),
        CheckResult::new("towers.closure", "closed subquandles", closure),
        CheckResult::new("towers.product-union", "product and disjoint union of profinite quandles", combos),
    ]
}

/// Generated subquandle of `seed` by naive saturation under both operations.
fn naive_closure(q: &FiniteQuandle, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; q.len()];
    for &s in seed {
        inside[s] = true;
    }
    loop {
        let members: Vec<usize> = (0..q.len()).filter(|&x| inside[x]).collect();
        let mut grew = false;
        for &x in &members {
            for &y in &members {
                for z in [q.op(x, y), q.inv_op(x, y)] {
                    if !inside[z] {
                        inside[z] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return (0..q.len()).filter(|&x| inside[x]).collect();
        }
    }
}

pub(super) fn density_block(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let towers = match corpus_or_fail("density.oracle", "density of projection images") {
        Ok(t) => t,
        Err(c) => return vec![c],
    };
    let outcome = towers.iter().try_for_each(|(name, t)| {
        let all = t.all_elements();
        let mut seeds: Vec<Vec<TruncatedElement<'_>>> = vec![Vec::new(), all.clone()];
        for size in 1..=3 {
            for _ in 0..4 {
                seeds.push(all.choose_multiple(rng, size.min(all.len())).cloned().collect());
            }
        }
        for set in &seeds {
            let report = t.density_check(set).map_err(|e| format!("{name}: {e}"))?;
            let mut every_full = true;
            for (k, level) in report.levels.iter().enumerate() {
                let seed: Vec<usize> = set.iter().map(|e| e.coords()[k]).collect();
                let oracle = naive_closure(t.level(k), &seed);
                ensure(oracle == level.image, || {
                    format!("{name}: level {k} image {:?}, oracle {oracle:?}", level.image)
                })?;
                let full = oracle.len() == t.level(k).len();
                ensure(full == level.full, || format!("{name}: level {k} fullness disagrees"))?;
                every_full &= full;
            }
            ensure(report.dense == every_full, || {
                format!("{name}: dense = {} but fullness {every_full}", report.dense)
            })?;
        }
        Ok(())
    });
    vec![CheckResult::new("density.oracle", "density of projection images", outcome)]
}

/// `2⌊n/2⌋ − 1`.
fn ell_transpositions(n: usize) -> usize {
    2 * (n / 2) - 1
}

/// `|{σ ∈ 𝔖₂ × ... × 𝔖_{k+2} : all σₙ of one parity}| = 2 ∏ n!/2`.
fn same_parity_closed_form(k: usize) -> u128 {
    (2..k + 3).map(|n| (1..=n as u128).product::<u128>() / 2).product::<u128>() * 2
}

pub(super) fn probe_block(bound: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut maxima = Vec::new();
    for depth in 2..=5 {
        let outcome = counterexample_probe(depth, bound).map_err(|e| e.to_string()).and_then(|r| {
            for l in &r.levels {
                ensure(u128::from(l.inn_order) == same_parity_closed_form(l.level), || {
                    format!("level {}: |Inn| = {}, expected {}", l.level, l.inn_order, same_parity_closed_form(l.level))
                })?;
                ensure(l.inn_order == l.same_parity_order && l.inn_is_same_parity, || {
                    format!("level {}: Inn is not the same-parity subgroup", l.level)
                })?;
                ensure(l.enumerated_order.is_none_or(|o| o == l.inn_order), || {
                    format!("level {}: enumeration gives {:?}", l.level, l.enumerated_order)
                })?;
                ensure(l.ell_in_inn, || format!("level {}: ℓ is not in Inn", l.level))?;
            }
            if let Some(l) = r.levels.get(2) {
                ensure(l.inn_order == 72, || format!("M2 x M3 x M4 level has order {}", l.inn_order))?;
            }
            ensure(r.ell_coherent, || "ℓ is not coherent".into())?;
            let expected: Vec<usize> = (2..depth + 2).map(ell_transpositions).collect();
            ensure(r.min_transpositions == expected, || format!("min transpositions {:?}", r.min_transpositions))?;
            ensure(r.unbounded, || format!("{:?} does not set a record at every even n", r.min_transpositions))?;
            ensure(r.passed, || "probe reported failure".into())?;
            maxima.push(r.min_transpositions.iter().copied().max().unwrap_or(0));
            Ok(())
        });
        out.push(CheckResult::new(&format!("probe.depth{depth}"), "the 2-cycle counterexample", outcome));
    }
    // over the probed range the bound on ℓ grows without a ceiling
    let growth = ensure(maxima.len() == 4 && maxima.windows(2).all(|w| w[0] <= w[1]) && maxima[3] > maxima[0], || {
        format!("maxima {maxima:?} over depths 2..5")
    });
    out.push(CheckResult::new("probe.unbounded", "the 2-cycle counterexample", growth));
    out
}

pub(super) fn inn_density_block(bound: usize) -> Vec<CheckResult> {
    let towers = match corpus_or_fail("inn-density.levels", "density of the inner group") {
        Ok(t) => t,
        Err(c) => return vec![c],
    };
    let outcome = towers.iter().try_for_each(|(name, t)| {
        let g = inn_tower(t, bound).map_err(|e| format!("{name}: {e}"))?;
        for (k, phi) in g.transitions().iter().enumerate() {
            ensure(phi.is_surjective(), || format!("{name}: Inn transition {k} is not onto"))?;
        }
        levelwise_action_check(t, &g).map_err(|e| format!("{name}: {e}"))
    });
    vec![CheckResult::new("inn-density.levels", "density and continuity of the inner group action", outcome)]
}
