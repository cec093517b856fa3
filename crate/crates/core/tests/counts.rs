//! Enumeration counts against brute force over all relations.

use std::collections::BTreeSet;

use emcat::harness::{enumerate_labeled_posets, enumerate_posets};
use emcat::Budget;

fn is_partial_order(n: usize, r: &[Vec<bool>]) -> bool {
    (0..n).all(|i| r[i][i])
        && (0..n).all(|i| (0..n).all(|j| i == j || !(r[i][j] && r[j][i])))
        && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r[i][j] && r[j][k]) || r[i][k])))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
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

/// Every partial order on `n` labeled points, as relation matrices.
fn orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << off.len() {
        let mut r = vec![vec![false; n]; n];
        for i in 0..n {
            r[i][i] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            r[i][j] = mask >> k & 1 == 1;
        }
        if is_partial_order(n, &r) {
            out.push(r);
        }
    }
    out
}

fn canonical(n: usize, r: &[Vec<bool>], perms: &[Vec<usize>]) -> Vec<bool> {
    perms.iter().map(|p| (0..n).flat_map(|i| (0..n).map(move |j| r[p[i]][p[j]])).collect::<Vec<_>>()).min().unwrap()
}

#[test]
fn labeled_posets_match_brute_force() {
    for n in 0..=4 {
        let got = enumerate_labeled_posets(n, &Budget::default()).unwrap().len();
        assert_eq!(got, orders(n).len(), "n = {n}");
    }
}

#[test]
fn posets_up_to_iso_match_brute_force() {
    let got = enumerate_posets(4, &Budget::default()).unwrap();
    for n in 0..=4 {
        let perms = permutations(n);
        let classes: BTreeSet<_> = orders(n).iter().map(|r| canonical(n, r, &perms)).collect();
        assert_eq!(got.iter().filter(|p| p.len() == n).count(), classes.len(), "n = {n}");
    }
}
