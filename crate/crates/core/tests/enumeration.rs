//! Quandle counts against a brute-force oracle that shares no code with the
//! library search: every choice of columns fixing their own index, a direct
//! right-distributivity test, and isomorphism classes by trying every
//! relabelling.

use std::collections::BTreeSet;

use quandle::inner::{canonical_form, enumerate_connected, enumerate_quandles};
use quandle::suite::{CONNECTED_COUNTS, QUANDLE_COUNTS};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn distributive(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x][y]][z] == t[t[x][z]][t[y][z]])))
}

fn connected(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        // orbits under S_y and its inverse agree for finite sets
        for &z in &t[x] {
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Least relabelled row-major table, over all `n!` relabellings.
fn least_form(t: &[Vec<usize>], perms: &[Vec<usize>]) -> Vec<usize> {
    let n = t.len();
    perms
        .iter()
        .map(|p| {
            let mut flat = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    flat[p[x] * n + p[y]] = p[t[x][y]];
                }
            }
            flat
        })
        .min()
        .unwrap_or_default()
}

/// `(all classes, connected classes)` as canonical flat tables.
fn brute(n: usize) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
    let perms = permutations(n);
    let columns: Vec<Vec<&Vec<usize>>> = (0..n).map(|y| perms.iter().filter(|p| p[y] == y).collect()).collect();
    let (mut all, mut conn) = (BTreeSet::new(), BTreeSet::new());
    let mut choice = vec![0usize; n];
    loop {
        let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| columns[y][choice[y]][x]).collect()).collect();
        if distributive(&table) {
            let form = least_form(&table, &perms);
            if connected(&table) {
                conn.insert(form.clone());
            }
            all.insert(form);
        }
        // odometer over column choices
        let mut i = 0;
        loop {
            if i == n {
                return (all, conn);
            }
            choice[i] += 1;
            if choice[i] < columns[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn counts_match_the_brute_force_oracle() {
    for n in 1..=5 {
        let (all, conn) = brute(n);
        assert_eq!(all.len(), QUANDLE_COUNTS[n], "order {n}");
        assert_eq!(conn.len(), CONNECTED_COUNTS[n], "connected, order {n}");
        let lib: BTreeSet<Vec<usize>> =
            enumerate_quandles(n, true, 6).unwrap().iter().map(|q| canonical_form(q).concat()).collect();
        assert_eq!(lib, all, "order {n}");
        let lib: BTreeSet<Vec<usize>> =
            enumerate_connected(n, true, 6).unwrap().iter().map(|q| canonical_form(q).concat()).collect();
        assert_eq!(lib, conn, "connected, order {n}");
    }
}

#[test]
fn frozen_counts_through_order_six() {
    for n in 0..=6 {
        assert_eq!(enumerate_quandles(n, true, 6).unwrap().len(), QUANDLE_COUNTS[n], "order {n}");
        assert_eq!(enumerate_connected(n, true, 6).unwrap().len(), CONNECTED_COUNTS[n], "connected, order {n}");
    }
}
