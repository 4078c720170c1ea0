mod common;

use std::collections::BTreeSet;

use common::{generate_and_filter, ref_lt, ref_multiset_leq, ref_tree_leq, ref_trees};
use gapord_core::enumerate::{
    enum_terms, enum_trees, longest_bad_sequence, longest_bad_sequence_naive, term_layers,
    DEFAULT_BUDGET,
};
use gapord_core::notation::{length, validate};
use gapord_core::{compare, PlainTree, TermMultiset, Universe};

#[test]
fn term_enumeration_matches_generate_and_filter() {
    let fast: BTreeSet<String> = enum_terms(5)
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(fast, generate_and_filter(5));
}

#[test]
fn cumulative_term_counts() {
    let counts: Vec<usize> = (0..=5).map(|l| enum_terms(l).unwrap().len()).collect();
    assert_eq!(counts, [2, 5, 12, 33, 102, 333]);
    for layer in term_layers(5, DEFAULT_BUDGET).unwrap() {
        for a in &layer.items {
            assert_eq!(length(a), layer.measure);
            assert_eq!(validate(&a.to_raw()).as_ref(), Ok(a));
        }
        for w in layer.items.windows(2) {
            assert_eq!(compare(&w[0], &w[1]), std::cmp::Ordering::Less);
        }
    }
}

#[test]
fn tree_enumeration_matches_reference() {
    for n in 1..=3 {
        for size in 1..=5 {
            let fast: BTreeSet<PlainTree> = enum_trees(n, size).unwrap().into_iter().collect();
            let slow: BTreeSet<PlainTree> = (1..=size).flat_map(|s| ref_trees(n, s)).collect();
            assert_eq!(fast, slow, "N={n} size<={size}");
        }
    }
}

#[test]
fn tree_counts_for_t2() {
    let counts: Vec<usize> = (1..=5).map(|s| enum_trees(2, s).unwrap().len()).collect();
    assert_eq!(counts, [2, 6, 20, 72, 286]);
}

#[test]
fn compare_matches_reference_on_small_terms() {
    let terms = enum_terms(4).unwrap();
    for a in &terms {
        for b in &terms {
            assert_eq!(
                compare(a, b) == std::cmp::Ordering::Less,
                ref_lt(a, b),
                "{a} vs {b}"
            );
        }
    }
}

#[test]
fn tree_leq_matches_reference() {
    let u = Universe::plain(2);
    let trees = enum_trees(2, 5).unwrap();
    for s in &trees {
        for t in &trees {
            assert_eq!(u.tree_leq(s, t), ref_tree_leq(s, t), "{s} vs {t}");
        }
    }
}

#[test]
fn multiset_leq_matches_reference() {
    let u = Universe::plain(2);
    let trees = enum_trees(2, 2).unwrap();
    let mut multisets = vec![vec![]];
    for _ in 0..3 {
        let grown: Vec<Vec<PlainTree>> = multisets
            .iter()
            .flat_map(|m: &Vec<PlainTree>| {
                trees.iter().map(move |t| {
                    let mut m = m.clone();
                    m.push(t.clone());
                    m
                })
            })
            .collect();
        multisets.extend(grown);
    }
    multisets.truncate(400);
    for s in &multisets {
        for t in &multisets {
            let fast = u.multiset_leq(&TermMultiset::new(s.clone()), &TermMultiset::new(t.clone()));
            assert_eq!(fast, ref_multiset_leq(s, t));
        }
    }
}

// Every bad sequence, by extending in all ways with no cut at all.
fn exhaustive_longest(trees: &[PlainTree], seq: &mut Vec<usize>) -> usize {
    let mut best = seq.len();
    for j in 0..trees.len() {
        if seq.iter().any(|&i| ref_tree_leq(&trees[i], &trees[j])) {
            continue;
        }
        seq.push(j);
        best = best.max(exhaustive_longest(trees, seq));
        seq.pop();
    }
    best
}

#[test]
fn bad_sequences_against_full_search() {
    for (n, size) in [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1)] {
        let trees = enum_trees(n, size).unwrap();
        let want = exhaustive_longest(&trees, &mut vec![]);
        let pruned = longest_bad_sequence(n, size, DEFAULT_BUDGET).unwrap();
        let naive = longest_bad_sequence_naive(n, size, DEFAULT_BUDGET).unwrap();
        assert_eq!(pruned.length, want, "N={n} size<={size}");
        assert_eq!(naive.length, want, "N={n} size<={size}");
        for (i, a) in pruned.witness.iter().enumerate() {
            for b in &pruned.witness[i + 1..] {
                assert!(!ref_tree_leq(a, b));
            }
        }
    }
}

#[test]
fn bad_sequence_examples() {
    let r = longest_bad_sequence(2, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.length, 2);
    assert_eq!(
        longest_bad_sequence(1, 1, DEFAULT_BUDGET).unwrap().length,
        1
    );
}
