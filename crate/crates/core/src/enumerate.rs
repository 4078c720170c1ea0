//! Exhaustive generators: every valid term up to a length, every tree up to a
//! size, longest bad sequences, and random descending chains.

use std::convert::Infallible;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::gaptree::{GapTree, PlainTree, Universe};
use crate::notation::{compare, length, lt, OrdinalTerm, TermView};

/// Item cap applied when the caller does not pass one.
pub const DEFAULT_BUDGET: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{what}: exceeded the budget of {limit} items{}", best_hint(.best_so_far))]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        best_so_far: Option<usize>,
    },
}

fn best_hint(best: &Option<usize>) -> String {
    best.map(|b| format!(" (best bound so far: {b})"))
        .unwrap_or_default()
}

/// All objects of one measure, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationLayer<T> {
    pub measure: usize,
    pub items: Vec<T>,
}

/// Layers of valid terms by exact length `0..=max_len`, each sorted by `≺`.
pub fn term_layers(
    max_len: usize,
    budget: usize,
) -> Result<Vec<EnumerationLayer<OrdinalTerm>>, EnumError> {
    let mut layers: Vec<EnumerationLayer<OrdinalTerm>> = Vec::with_capacity(max_len + 1);
    // Every term of length < k, ascending, with its length.
    let mut pool: Vec<(OrdinalTerm, usize)> = Vec::new();
    let mut total = 0usize;
    for k in 0..=max_len {
        let mut items = Vec::new();
        if k == 0 {
            items.push(OrdinalTerm::zero());
            items.push(OrdinalTerm::omega());
        } else {
            items.extend(layers[k - 1].items.iter().cloned().map(OrdinalTerm::theta));
            let mut stack = Vec::new();
            descending_sums(
                &pool,
                pool.len(),
                k,
                &mut stack,
                &mut items,
                budget.saturating_sub(total),
            )?;
        }
        items.sort_by(compare);
        total += items.len();
        if total > budget {
            return Err(EnumError::ResourceLimit {
                what: "enum-terms",
                limit: budget,
                best_so_far: None,
            });
        }
        pool.extend(items.iter().map(|t| (t.clone(), k)));
        pool.sort_by(|a, b| compare(&a.0, &b.0));
        layers.push(EnumerationLayer { measure: k, items });
    }
    Ok(layers)
}

// Extends `stack` by entries with pool index below `bound` (so weakly
// descending) until the remaining length is used up.
fn descending_sums(
    pool: &[(OrdinalTerm, usize)],
    bound: usize,
    remaining: usize,
    stack: &mut Vec<OrdinalTerm>,
    out: &mut Vec<OrdinalTerm>,
    budget: usize,
) -> Result<(), EnumError> {
    if remaining == 0 {
        if !(stack.len() == 1 && stack[0].is_special()) {
            out.push(OrdinalTerm::sum_unchecked(stack.clone()));
            if out.len() > budget {
                return Err(EnumError::ResourceLimit {
                    what: "enum-terms",
                    limit: budget,
                    best_so_far: None,
                });
            }
        }
        return Ok(());
    }
    for i in 0..bound {
        let (t, l) = &pool[i];
        if l + 1 > remaining {
            continue;
        }
        stack.push(t.clone());
        // Equal entries may repeat, so the bound is inclusive of `i`.
        descending_sums(pool, i + 1, remaining - l - 1, stack, out, budget)?;
        stack.pop();
    }
    Ok(())
}

/// All valid terms with `l ≤ max_len`, by length and then by `≺`.
pub fn enum_terms(max_len: usize) -> Result<Vec<OrdinalTerm>, EnumError> {
    enum_terms_with_budget(max_len, DEFAULT_BUDGET)
}

pub fn enum_terms_with_budget(
    max_len: usize,
    budget: usize,
) -> Result<Vec<OrdinalTerm>, EnumError> {
    Ok(term_layers(max_len, budget)?
        .into_iter()
        .flat_map(|l| l.items)
        .collect())
}

/// Layers of trees by exact size, with node labels below `n` and the given
/// leaves, each leaf counted with the size it is paired with.
pub fn tree_layers<L: Clone + Ord>(
    n: u32,
    leaves: &[(L, usize)],
    max_size: usize,
    budget: usize,
) -> Result<Vec<EnumerationLayer<GapTree<L>>>, EnumError> {
    let mut layers: Vec<EnumerationLayer<GapTree<L>>> = vec![EnumerationLayer {
        measure: 0,
        items: Vec::new(),
    }];
    let mut pool: Vec<(GapTree<L>, usize)> = Vec::new();
    let mut total = 0usize;
    for s in 1..=max_size {
        let mut items: Vec<GapTree<L>> = leaves
            .iter()
            .filter(|(_, w)| *w == s)
            .map(|(x, _)| GapTree::Leaf(x.clone()))
            .collect();
        let mut kids = Vec::new();
        multisets_of_weight(&pool, 0, s - 1, &mut Vec::new(), &mut kids);
        for label in 0..n {
            for k in &kids {
                items.push(GapTree::node(label, k.clone()));
            }
        }
        items.sort();
        total += items.len();
        if total > budget {
            return Err(EnumError::ResourceLimit {
                what: "enum-trees",
                limit: budget,
                best_so_far: None,
            });
        }
        pool.extend(items.iter().map(|t| (t.clone(), s)));
        pool.sort();
        layers.push(EnumerationLayer { measure: s, items });
    }
    Ok(layers)
}

// Multisets drawn from a sorted pool, as non-decreasing index sequences whose
// weights sum to exactly `remaining`.
fn multisets_of_weight<T: Clone>(
    pool: &[(T, usize)],
    from: usize,
    remaining: usize,
    stack: &mut Vec<T>,
    out: &mut Vec<Vec<T>>,
) {
    if remaining == 0 {
        out.push(stack.clone());
        return;
    }
    for i in from..pool.len() {
        let (t, w) = &pool[i];
        if *w > remaining {
            continue;
        }
        stack.push(t.clone());
        multisets_of_weight(pool, i, remaining - w, stack, out);
        stack.pop();
    }
}

/// All multisets of elements of `pool` whose weights sum to at most
/// `max_total`. The pool must be sorted.
pub fn multisets_up_to<T: Clone>(pool: &[(T, usize)], max_total: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        multisets_of_weight(pool, 0, total, &mut Vec::new(), &mut out);
    }
    out
}

/// All trees of `T_N(∅)` with at most `max_size` nodes, by size and then in
/// canonical order.
pub fn enum_trees(n: u32, max_size: usize) -> Result<Vec<PlainTree>, EnumError> {
    enum_trees_with_budget(n, max_size, DEFAULT_BUDGET)
}

pub fn enum_trees_with_budget(
    n: u32,
    max_size: usize,
    budget: usize,
) -> Result<Vec<PlainTree>, EnumError> {
    Ok(tree_layers::<Infallible>(n, &[], max_size, budget)?
        .into_iter()
        .flat_map(|l| l.items)
        .collect())
}

/// Elements of `T_N(T⁰_{N+1}(∅))` whose image under `π` has at most
/// `max_size` nodes. A leaf weighs as much as its payload.
pub fn enum_pi_domain(n: u32, max_size: usize) -> Result<Vec<GapTree<PlainTree>>, EnumError> {
    let payloads: Vec<(PlainTree, usize)> = enum_trees(n + 1, max_size)?
        .into_iter()
        .filter(|t| t.label() == Some(0))
        .map(|t| {
            let w = t.size();
            (t, w)
        })
        .collect();
    Ok(tree_layers(n, &payloads, max_size, DEFAULT_BUDGET)?
        .into_iter()
        .flat_map(|l| l.items)
        .collect())
}

/// Result of a longest-bad-sequence search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadSequence {
    pub length: usize,
    #[serde(serialize_with = "crate::syntax::serialize_trees")]
    pub witness: Vec<PlainTree>,
    pub candidates: usize,
    pub states: usize,
}

struct BadSearch {
    up: Vec<Bits>,
    memo: FxHashMap<Bits, usize>,
    budget: usize,
    best: usize,
}

impl BadSearch {
    // Longest bad sequence using only elements of `open`. Which elements stay
    // usable depends only on the set already chosen, so `open` is the state.
    fn longest(&mut self, open: &Bits) -> Result<usize, EnumError> {
        if let Some(&v) = self.memo.get(open) {
            return Ok(v);
        }
        if self.memo.len() >= self.budget {
            return Err(EnumError::ResourceLimit {
                what: "bad-seq",
                limit: self.budget,
                best_so_far: Some(self.best),
            });
        }
        let mut best = 0;
        let total = open.count();
        // Later trees are larger, so trying them first reaches a sequence
        // that uses every open tree right away and the cut below fires.
        for x in open.ones().collect::<Vec<_>>().into_iter().rev() {
            if best >= total {
                break;
            }
            let next = open.minus(&self.up[x]);
            best = best.max(1 + self.longest(&next)?);
        }
        self.best = self.best.max(best);
        self.memo.insert(open.clone(), best);
        Ok(best)
    }
}

fn upsets(trees: &[PlainTree], n: u32) -> Vec<Bits> {
    let u = Universe::plain(n);
    trees
        .iter()
        .map(|s| {
            let mut b = Bits::empty(trees.len());
            for (j, t) in trees.iter().enumerate() {
                if u.tree_leq(s, t) {
                    b.set(j);
                }
            }
            b
        })
        .collect()
}

/// Longest sequence over `enum_trees(n, max_size)` with no `i < j` such that
/// the `i`-th tree embeds into the `j`-th, with one witness.
pub fn longest_bad_sequence(
    n: u32,
    max_size: usize,
    budget: usize,
) -> Result<BadSequence, EnumError> {
    let trees = enum_trees_with_budget(n, max_size, budget)?;
    let up = upsets(&trees, n);
    let mut search = BadSearch {
        up,
        memo: FxHashMap::default(),
        budget,
        best: 0,
    };
    let mut open = Bits::full(trees.len());
    let length = search.longest(&open)?;
    let mut witness = Vec::with_capacity(length);
    let mut left = length;
    while left > 0 {
        let x = open
            .ones()
            .find(|&x| {
                let next = open.minus(&search.up[x]);
                1 + search.memo.get(&next).copied().unwrap_or(0) == left
            })
            .expect("memo holds every state on an optimal path");
        witness.push(trees[x].clone());
        open = open.minus(&search.up[x]);
        left -= 1;
    }
    Ok(BadSequence {
        length,
        witness,
        candidates: trees.len(),
        states: search.memo.len(),
    })
}

/// The same search without memoization or state pruning: bad sequences are
/// extended in every possible way, largest trees first. The only cut is
/// stopping once a sequence uses every tree, since a repeat is a good pair.
pub fn longest_bad_sequence_naive(
    n: u32,
    max_size: usize,
    budget: usize,
) -> Result<BadSequence, EnumError> {
    let trees = enum_trees_with_budget(n, max_size, budget)?;
    let u = Universe::plain(n);
    let mut seq: Vec<usize> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    let mut visited = 0usize;

    fn dfs(
        trees: &[PlainTree],
        u: &Universe<crate::gaptree::EmptyAlphabet>,
        seq: &mut Vec<usize>,
        best: &mut Vec<usize>,
        visited: &mut usize,
        budget: usize,
    ) -> Result<(), EnumError> {
        *visited += 1;
        if *visited > budget {
            return Err(EnumError::ResourceLimit {
                what: "bad-seq (naive)",
                limit: budget,
                best_so_far: Some(best.len()),
            });
        }
        if seq.len() > best.len() {
            *best = seq.clone();
        }
        for j in (0..trees.len()).rev() {
            if best.len() == trees.len() {
                break;
            }
            if seq.iter().any(|&i| u.tree_leq(&trees[i], &trees[j])) {
                continue;
            }
            seq.push(j);
            dfs(trees, u, seq, best, visited, budget)?;
            seq.pop();
        }
        Ok(())
    }

    dfs(&trees, &u, &mut seq, &mut best, &mut visited, budget)?;
    Ok(BadSequence {
        length: best.len(),
        witness: best.iter().map(|&i| trees[i].clone()).collect(),
        candidates: trees.len(),
        states: visited,
    })
}

/// Random strictly descending chain from `start`. Each step moves to a
/// predecessor: a sum with its last entry dropped or lowered, or any term of
/// length at most `pool_len` below the current one. Stops at `0` or after
/// `steps` steps.
pub fn descent_sampler(
    start: &OrdinalTerm,
    seed: u64,
    steps: usize,
    pool_len: usize,
) -> Result<Vec<OrdinalTerm>, EnumError> {
    let pool = enum_terms(pool_len)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = vec![start.clone()];
    let mut current = start.clone();
    for _ in 0..steps {
        if current.is_zero() {
            break;
        }
        let mut options: Vec<OrdinalTerm> =
            pool.iter().filter(|p| lt(p, &current)).cloned().collect();
        if let TermView::Sum(es) = current.view() {
            let (last, init) = es.split_last().expect("nonzero sum");
            options.push(OrdinalTerm::from_entries(init.to_vec()));
            for p in pool.iter().filter(|p| lt(p, last)) {
                let mut entries = init.to_vec();
                entries.push(p.clone());
                options.push(OrdinalTerm::from_entries(entries));
            }
        }
        let next = options
            .choose(&mut rng)
            .expect("zero is below every other term")
            .clone();
        assert!(
            lt(&next, &current),
            "sampler produced a non-descending step"
        );
        chain.push(next.clone());
        current = next;
    }
    Ok(chain)
}

/// Length of the longest term in a list, for coverage reports.
pub fn max_length(terms: &[OrdinalTerm]) -> usize {
    terms.iter().map(length).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(label: u32, children: Vec<PlainTree>) -> PlainTree {
        GapTree::node(label, children)
    }

    #[test]
    fn small_term_counts() {
        assert_eq!(enum_terms(0).unwrap().len(), 2);
        assert_eq!(enum_terms(1).unwrap().len(), 5);
        assert_eq!(enum_terms(2).unwrap().len(), 12);
    }

    #[test]
    fn term_budget_is_enforced() {
        assert!(matches!(
            enum_terms_with_budget(5, 10),
            Err(EnumError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn small_tree_layers() {
        assert_eq!(enum_trees(2, 1).unwrap(), vec![n(0, vec![]), n(1, vec![])]);
        assert_eq!(
            enum_trees(1, 2).unwrap(),
            vec![n(0, vec![]), n(0, vec![n(0, vec![])])]
        );
        let t = enum_trees(2, 2).unwrap();
        assert_eq!(t.len(), 6);
        for x in [
            n(0, vec![n(0, vec![])]),
            n(0, vec![n(1, vec![])]),
            n(1, vec![n(0, vec![])]),
            n(1, vec![n(1, vec![])]),
        ] {
            assert!(t.contains(&x));
        }
        assert_eq!(enum_trees(2, 3).unwrap().len(), 20);
    }

    #[test]
    fn bad_sequences_small() {
        let r = longest_bad_sequence(2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.length, 2);
        assert_eq!(r.witness.len(), 2);
        assert_eq!(
            longest_bad_sequence(1, 1, DEFAULT_BUDGET).unwrap().length,
            1
        );
        assert_eq!(
            longest_bad_sequence_naive(1, 1, DEFAULT_BUDGET)
                .unwrap()
                .length,
            1
        );
    }

    #[test]
    fn sampler_descends() {
        let z = OrdinalTerm::zero();
        assert_eq!(descent_sampler(&z, 1, 10, 3).unwrap(), vec![z.clone()]);
        let two = crate::notation::numeral(2);
        let chain = descent_sampler(&two, 7, 100, 3).unwrap();
        assert_eq!(chain.last(), Some(&z));
        assert!(chain.windows(2).all(|w| lt(&w[1], &w[0])));
    }
}
