use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{corpus, CheckResult, CONNECTED_COUNTS, QUANDLE_COUNTS};
use crate::abelian::{adtak, smith_normal_form, AugmentedQuandle, Matrix};
use crate::error::Error;
use crate::group::FiniteGroup;
use crate::inner::{
    coset_quandle, ehrman_decompose, ehrman_roundtrip, enumerate_connected, enumerate_quandles, induced_coset_hom,
    two_cycle_quandle, two_cycles, DEFAULT_ENUMERATION_BOUND,
};
use crate::permgroup::{GroupHom, PermGroup, Permutation};
use crate::quandle::{find_isomorphism, FiniteQuandle, DEFAULT_SUBSET_BOUND};

type Outcome = std::result::Result<(), String>;

/// The Tait table, 1-indexed.
const TAIT: [[usize; 3]; 3] = [[1, 3, 2], [3, 2, 1], [2, 1, 3]];

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

pub(super) fn tait_checks(table: &[Vec<usize>]) -> Vec<CheckResult> {
    let axioms = FiniteQuandle::from_table(table.to_vec()).map(|_| ()).map_err(|e| e.to_string());
    let matches = ensure(table.len() == 3, || format!("{} rows", table.len())).and_then(|()| {
        for (x, row) in table.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if TAIT[x].get(y) != Some(&(v + 1)) {
                    return Err(format!("cell ({}, {}) is {}", x + 1, y + 1, v + 1));
                }
            }
        }
        Ok(())
    });
    let mutations = (|| {
        let n = table.len();
        let mut rejected = 0;
        for x in 0..n {
            for y in 0..n {
                for v in (0..n).filter(|&v| v != table[x][y]) {
                    let mut t = table.to_vec();
                    t[x][y] = v;
                    if FiniteQuandle::from_table(t).is_ok() {
                        return Err(format!("setting ({}, {}) to {} is accepted", x + 1, y + 1, v + 1));
                    }
                    rejected += 1;
                }
            }
        }
        ensure(rejected == 18, || format!("{rejected} mutations instead of 18"))
    })();
    vec![
        CheckResult::new("tait.axioms", "Tait quandle axioms", axioms),
        CheckResult::new("tait.table", "Tait quandle table", matches),
        CheckResult::new("tait.mutations", "Tait quandle single-cell mutations", mutations),
    ]
}

pub(super) fn tait_block() -> Vec<CheckResult> {
    let mut out = tait_checks(FiniteQuandle::tait().table());
    let display = FiniteQuandle::tait().one_indexed_table();
    out.push(CheckResult::new(
        "tait.display",
        "Tait quandle table",
        ensure(display.iter().zip(TAIT).all(|(r, t)| r[..] == t[..]), || format!("{display:?}")),
    ));
    out
}

fn revalidate(name: &str, q: &FiniteQuandle) -> Outcome {
    FiniteQuandle::from_table(q.table().to_vec()).map(|_| ()).map_err(|e| format!("{name}: {e}"))
}

fn family(prefix: &str, id: &str, reference: &str, corpus: &[(String, FiniteQuandle)]) -> CheckResult {
    let outcome = corpus.iter().filter(|(n, _)| n.starts_with(prefix)).try_for_each(|(n, q)| revalidate(n, q));
    CheckResult::new(id, reference, outcome)
}

pub(super) fn axioms_block(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let qs = corpus::quandles();
    let binary: Vec<(String, FiniteQuandle)> =
        qs.iter().filter(|(n, _)| n.contains(" x ") || n.contains(" + ")).cloned().collect();
    let mut out = vec![
        family("trivial", "axioms.trivial", "trivial quandle", &qs),
        family("Conj", "axioms.conj", "conjugation quandle", &qs),
        family("Core", "axioms.core", "core quandle", &qs),
        family("Tak", "axioms.tak", "Takasaki kei", &qs),
        family("davis", "axioms.davis", "Davis quotient", &qs),
        family("M", "axioms.two-cycles", "quandle of 2-cycles", &qs),
        CheckResult::new(
            "axioms.product-union",
            "product and disjoint union",
            binary.iter().try_for_each(|(n, q)| revalidate(n, q)),
        ),
    ];
    let coset = (|| {
        let groups = corpus::groups_up_to_48();
        for (name, g) in &groups {
            for _ in 0..3 {
                let spec = corpus::random_spec(g, rng);
                let built = coset_quandle(&spec).map_err(|e| format!("{name}: {e}"))?;
                revalidate(name, &built.quandle)?;
                ensure(built.quandle.len() * spec.subgroup().order() == g.order(), || {
                    format!("{name}: {} cosets of a subgroup of order {}", built.quandle.len(), spec.subgroup().order())
                })?;
            }
        }
        Ok(())
    })();
    out.push(CheckResult::new("axioms.coset", "right coset quandle", coset));
    out
}

/// `Sym(n) → Inn(Mₙ)` by conjugating 2-cycles, checked to be a bijective
/// homomorphism.
fn conjugation_iso(n: usize, q: &FiniteQuandle, inn: &PermGroup) -> Outcome {
    let pairs = two_cycles(n);
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).expect("a 2-cycle");
    let sym = PermGroup::symmetric(n);
    let phi = GroupHom::from_map(&sym, inn, |s| {
        Permutation::new(pairs.iter().map(|&(a, b)| index(s.apply(a), s.apply(b))).collect()).expect("bijection")
    })
    .map_err(|e| format!("M{n}: {e}"))?;
    let mut images = phi.images().to_vec();
    images.sort_unstable();
    images.dedup();
    ensure(images.len() == sym.order() && phi.is_surjective(), || format!("M{n}: conjugation is not bijective"))?;
    ensure(q.len() == pairs.len(), || format!("M{n} has {} elements", q.len()))
}

pub(super) fn inn_mn_block(bound: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 3..=5 {
        let outcome = (|| {
            let q = two_cycle_quandle(n).map_err(|e| e.to_string())?;
            let inn = q.inn(bound).map_err(|e| e.to_string())?;
            let factorial: usize = (1..=n).product();
            ensure(inn.order() == factorial, || format!("|Inn(M{n})| = {}", inn.order()))?;
            ensure(inn.is_transitive(), || format!("Inn(M{n}) has orbits {:?}", inn.orbits()))?;
            conjugation_iso(n, &q, &inn)
        })();
        out.push(CheckResult::new(&format!("inn-mn.m{n}"), "Inn of the 2-cycle quandle is symmetric", outcome));
    }
    let tait = two_cycle_quandle(3)
        .map_err(|e| e.to_string())
        .and_then(|m3| ensure(find_isomorphism(&m3, &FiniteQuandle::tait()).is_some(), || "M3 is not Tait".into()));
    out.push(CheckResult::new("inn-mn.tait", "M3 is the Tait quandle", tait));
    out
}

fn ehrman_checks(q: &FiniteQuandle, bound: usize) -> Outcome {
    let n = q.len();
    for base in 0..n {
        let at = |e: Error| format!("{:?} at {base}: {e}", q.table());
        let d = ehrman_decompose(q, base, bound).map_err(at)?;
        let (g, h) = (&d.group, &d.stabilizer);
        ensure(h.contains(&d.h) && h.centralizes(&d.h), || format!("{:?} at {base}: h not in Z(H)", q.table()))?;
        ensure(g.order() == n * h.order(), || {
            format!("{:?} at {base}: index {} / {}", q.table(), g.order(), h.order())
        })?;
        let generated = g.subgroup(&d.aug).map_err(at)?;
        ensure(generated.order() == g.order(), || {
            format!("{:?} at {base}: augmentations generate a proper subgroup", q.table())
        })?;
        ensure(ehrman_roundtrip(q, base, bound).map_err(at)?, || format!("{:?} at {base}: not isomorphic", q.table()))?;
    }
    Ok(())
}

pub(super) fn ehrman_block(bound: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let counts = (0..=5).try_for_each(|n| {
        let all = enumerate_quandles(n, true, DEFAULT_ENUMERATION_BOUND).map_err(|e| e.to_string())?;
        ensure(all.len() == QUANDLE_COUNTS[n], || format!("{} quandles of order {n}", all.len()))
    });
    out.push(CheckResult::new("ehrman.quandle-counts", "quandles of small order", counts));
    for (n, &expected) in CONNECTED_COUNTS.iter().enumerate().take(6).skip(1) {
        let outcome =
            enumerate_connected(n, true, DEFAULT_ENUMERATION_BOUND).map_err(|e| e.to_string()).and_then(|qs| {
                ensure(qs.len() == expected, || format!("{} connected quandles of order {n}", qs.len()))?;
                qs.iter().try_for_each(|q| ehrman_checks(q, bound))
            });
        out.push(CheckResult::new(&format!("ehrman.order{n}"), "Ehrman decomposition and coset round trip", outcome));
    }
    out
}

pub(super) fn induced_hom_block(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut homs = corpus::surjections();
    homs.shuffle(rng);
    let outcome = (0..20).try_for_each(|i| {
        let (name, src, dst, phi) = &homs[i % homs.len()];
        let spec = corpus::random_spec(src, rng);
        let induced = induced_coset_hom(&spec, dst, phi).map_err(|e| format!("{name}: {e}"))?;
        let hom = induced.as_hom();
        ensure(hom.is_hom(), || format!("{name}: fails at {:?}", hom.hom_witness()))?;
        ensure(hom.is_surjective(), || format!("{name}: not onto"))
    });
    vec![CheckResult::new("induced-hom.samples", "induced surjective quandle homomorphism", outcome)]
}

pub(super) fn complements_block() -> Vec<CheckResult> {
    let outcome = corpus::quandles().iter().filter(|(_, q)| q.len() <= 5).try_for_each(|(name, q)| {
        let subs = q.all_subquandles(DEFAULT_SUBSET_BOUND).map_err(|e| format!("{name}: {e}"))?;
        for a in &subs {
            let b = q
                .find_complement(a, DEFAULT_SUBSET_BOUND)
                .map_err(|e| format!("{name}: {e}"))?
                .ok_or_else(|| format!("{name}: {:?} has no complement", a.elements()))?;
            ensure(a.meet(&b).is_empty() && a.join(&b).is_full(), || {
                format!("{name}: {:?} and {:?} are not complements", a.elements(), b.elements())
            })?;
        }
        Ok(())
    });
    vec![CheckResult::new("complements.small", "complemented subquandle lattice", outcome)]
}

fn snf_invariants(m: &Matrix<BigInt>) -> Outcome {
    let snf = smith_normal_form(m);
    let show = || format!("{m}");
    ensure(snf.u.is_unimodular() && snf.v.is_unimodular(), || format!("transforms not unimodular for\n{}", show()))?;
    let recomposed = snf.u.mul(m).and_then(|um| um.mul(&snf.v)).map_err(|e| e.to_string())?;
    ensure(recomposed == snf.s, || format!("U M V != S for\n{}", show()))?;
    let uu = snf.u.mul(&snf.u_inv).map_err(|e| e.to_string())?;
    let vv = snf.v.mul(&snf.v_inv).map_err(|e| e.to_string())?;
    ensure(uu == Matrix::identity(m.rows()) && vv == Matrix::identity(m.cols()), || {
        format!("bad inverses for\n{}", show())
    })?;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            ensure(i == j || *snf.s.get(i, j) == BigInt::from(0), || format!("S not diagonal for\n{}", show()))?;
        }
    }
    let d = snf.s.diagonal();
    ensure(d.iter().all(|x| *x >= BigInt::from(0)), || format!("negative diagonal {d:?}"))?;
    for w in d.windows(2) {
        let ok = if w[0] == BigInt::from(0) { w[1] == BigInt::from(0) } else { &w[1] % &w[0] == BigInt::from(0) };
        ensure(ok, || format!("{} does not divide {}", w[0], w[1]))?;
    }
    Ok(())
}

pub(super) fn snf_block(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let outcome = (0..100).try_for_each(|_| {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let entries = (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-20..=20))).collect()).collect();
        snf_invariants(&Matrix::new(entries).map_err(|e| e.to_string())?)
    });
    vec![CheckResult::new("snf.random", "Smith normal form invariants", outcome)]
}

/// Frozen AdTak values, computed by hand and by determinantal divisors.
fn adtak_expected() -> Vec<(&'static str, FiniteQuandle, &'static str)> {
    vec![
        ("singleton", FiniteQuandle::trivial(1), "Z^1"),
        ("trivial(2)", FiniteQuandle::trivial(2), "Z^1 x Z/2"),
        ("trivial(3)", FiniteQuandle::trivial(3), "Z^1 x Z/2 x Z/2"),
        ("Tak(Z3)", FiniteQuandle::tak(&FiniteGroup::cyclic(3)).expect("abelian"), "Z^1 x Z/3"),
    ]
}

pub(super) fn adtak_block() -> Vec<CheckResult> {
    let values = adtak_expected().into_iter().try_for_each(|(name, k, want)| {
        let got = adtak(&k, true).map_err(|e| format!("{name}: {e}"))?.to_string();
        ensure(got == want, || format!("{name}: {got}, expected {want}"))
    });
    let kei = (|| {
        let m4 = two_cycle_quandle(4).map_err(|e| e.to_string())?;
        ensure(matches!(adtak(&m4, true), Err(Error::NotKei(..))) == !m4.is_kei(), || {
            "kei requirement ignored".into()
        })?;
        let davis = FiniteQuandle::davis_quotient(3).map_err(|e| e.to_string())?;
        ensure(matches!(adtak(&davis, true), Err(Error::NotKei(..))), || "davis(3) accepted as a kei".into())
    })();
    vec![
        CheckResult::new("adtak.values", "AdTak of small kei", values),
        CheckResult::new("adtak.kei", "AdTak of small kei", kei),
    ]
}

pub(super) fn augmented_block(bound: usize) -> Vec<CheckResult> {
    let outcome = corpus::quandles().iter().filter(|(_, q)| q.len() <= 12).try_for_each(|(name, q)| {
        let aq = AugmentedQuandle::inner(q, bound).map_err(|e| format!("{name}: {e}"))?;
        if aq.group.order() > 64 {
            return Ok(());
        }
        aq.verify().map_err(|e| format!("{name}: {e}"))
    });
    vec![CheckResult::new("augmented.inner", "augmented quandle axioms", outcome)]
}
