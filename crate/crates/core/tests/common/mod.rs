//! Independent oracles: direct transcriptions with no memo tables, no
//! matching algorithm and no layered generation.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gapord_core::notation::validate;
use gapord_core::{GapTree, OrdinalTerm, PlainTree, RawTerm, TermView};

pub fn ref_eps(a: &OrdinalTerm) -> Vec<OrdinalTerm> {
    match a.view() {
        TermView::Omega => vec![],
        TermView::Theta(_) => vec![a.clone()],
        TermView::Sum(xs) => xs.iter().flat_map(ref_eps).collect(),
    }
}

pub fn ref_le(a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    a == b || ref_lt(a, b)
}

pub fn ref_lt(a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    use TermView::*;
    match (a.view(), b.view()) {
        (Omega, Omega) | (Omega, Theta(_)) => false,
        (Omega, Sum(ys)) => !ys.is_empty() && ref_le(a, &ys[0]),
        (Theta(_), Omega) => true,
        (Theta(_), Sum(ys)) => !ys.is_empty() && ref_le(a, &ys[0]),
        (Theta(x), Theta(y)) => {
            (ref_lt(x, y) && ref_eps(x).iter().all(|g| ref_lt(g, b)))
                || ref_eps(y).iter().any(|g| ref_le(a, g))
        }
        (Sum(xs), Omega | Theta(_)) => xs.is_empty() || ref_lt(&xs[0], b),
        (Sum(xs), Sum(ys)) => {
            for (x, y) in xs.iter().zip(ys) {
                if x != y {
                    return ref_lt(x, y);
                }
            }
            xs.len() < ys.len()
        }
    }
}

fn raw_len(r: &RawTerm) -> usize {
    match r {
        RawTerm::Omega => 0,
        RawTerm::Theta(x) => raw_len(x) + 1,
        RawTerm::Sum(xs) => xs.len() + xs.iter().map(raw_len).sum::<usize>(),
    }
}

/// Every raw term of raw length exactly `l`, descending or not.
fn raw_exact(l: usize, memo: &mut Vec<Option<Vec<RawTerm>>>) -> Vec<RawTerm> {
    if let Some(v) = &memo[l] {
        return v.clone();
    }
    let mut out = Vec::new();
    if l == 0 {
        out.push(RawTerm::Omega);
        out.push(RawTerm::Sum(vec![]));
    } else {
        for x in raw_exact(l - 1, memo) {
            out.push(RawTerm::Theta(Box::new(x)));
        }
        // A sum with first entry of length k uses 1 + k, the rest is a sum of length l - 1 - k.
        for k in 0..l {
            let heads = raw_exact(k, memo);
            for tail in raw_sums(l - 1 - k, memo) {
                for h in &heads {
                    let mut xs = vec![h.clone()];
                    xs.extend(tail.iter().cloned());
                    out.push(RawTerm::Sum(xs));
                }
            }
        }
    }
    memo[l] = Some(out.clone());
    out
}

fn raw_sums(l: usize, memo: &mut Vec<Option<Vec<RawTerm>>>) -> Vec<Vec<RawTerm>> {
    let mut out = Vec::new();
    if l == 0 {
        out.push(vec![]);
    }
    for k in 0..l {
        let heads = raw_exact(k, memo);
        for tail in raw_sums(l - 1 - k, memo) {
            for h in &heads {
                let mut xs = vec![h.clone()];
                xs.extend(tail.iter().cloned());
                out.push(xs);
            }
        }
    }
    out
}

/// Generate every raw term up to the length bound and keep the valid ones.
pub fn generate_and_filter(max_len: usize) -> BTreeSet<String> {
    let mut memo = vec![None; max_len + 1];
    let mut out = BTreeSet::new();
    for l in 0..=max_len {
        for r in raw_exact(l, &mut memo) {
            assert_eq!(raw_len(&r), l);
            if let Ok(t) = validate(&r) {
                out.insert(t.to_string());
            }
        }
    }
    out
}

fn rank(t: &PlainTree) -> u32 {
    t.label().unwrap()
}

/// `s ⊴ t` straight from the three clauses; multisets by trying every injection.
pub fn ref_tree_leq(s: &PlainTree, t: &PlainTree) -> bool {
    let (n, m) = (rank(s), rank(t));
    (n == m && ref_multiset_leq(s.children(), t.children()))
        || (rank(s) <= m && t.children().iter().any(|c| ref_tree_leq(s, c)))
}

pub fn ref_multiset_leq(xs: &[PlainTree], ys: &[PlainTree]) -> bool {
    fn go(xs: &[PlainTree], ys: &[PlainTree], used: &mut Vec<bool>) -> bool {
        let Some((x, rest)) = xs.split_first() else {
            return true;
        };
        for j in 0..ys.len() {
            if !used[j] && ref_tree_leq(x, &ys[j]) {
                used[j] = true;
                if go(rest, ys, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    go(xs, ys, &mut vec![false; ys.len()])
}

/// All trees of `T_n(∅)` with exactly `size` nodes, generated by child lists in
/// every order and deduplicated through the canonical constructor.
pub fn ref_trees(n: u32, size: usize) -> BTreeSet<PlainTree> {
    let mut out = BTreeSet::new();
    if size == 0 {
        return out;
    }
    for children in ref_forests(n, size - 1) {
        for l in 0..n {
            out.insert(GapTree::node(l, children.clone()));
        }
    }
    out
}

fn ref_forests(n: u32, size: usize) -> Vec<Vec<PlainTree>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 1..=size {
        for first in ref_trees(n, k) {
            for mut rest in ref_forests(n, size - k) {
                rest.insert(0, first.clone());
                out.push(rest);
            }
        }
    }
    out
}
