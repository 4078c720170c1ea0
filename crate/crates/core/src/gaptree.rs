//! Finite trees with the gap condition: the sets `T_N(X)`, the embedding
//! `⊴`, its multiset extension, and the maps `π`, `κ`, `supp` and `Ē` that
//! relate `T_N(T⁰_{N+1}(X))` to `T_{N+1}(X)`.
//!
//! Children are kept sorted under a structural total order (the derived `Ord`
//! on [`GapTree`]), so that structural equality is multiset equality. That
//! order is a storage convention and has nothing to do with `⊴`.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::convert::Infallible;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::notation::{leq as term_leq, ByPrecedence};

/// A tree in `T_N(X)`: a leaf carrying a letter of `X`, or `n⋆σ` with `σ` a
/// finite multiset of trees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GapTree<L> {
    Leaf(L),
    Node {
        label: u32,
        children: TermMultiset<L>,
    },
}

/// A finite multiset of trees, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermMultiset<L>(Arc<[GapTree<L>]>);

/// The tree type of `T_N(∅)`.
pub type PlainTree = GapTree<Infallible>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("label {label} is out of range for N = {n}")]
    LabelOutOfRange { label: u32, n: u32 },
    #[error("trees belong to different universes")]
    UniverseMismatch,
    #[error("leaf payload has rank {rank}, expected at most 0")]
    PayloadRank { rank: i64 },
}

impl<L: Ord> TermMultiset<L> {
    pub fn new(mut items: Vec<GapTree<L>>) -> Self {
        items.sort();
        TermMultiset(items.into())
    }
}

impl<L> TermMultiset<L> {
    pub fn empty() -> Self {
        TermMultiset(Arc::from(Vec::new()))
    }

    pub fn as_slice(&self) -> &[GapTree<L>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GapTree<L>> {
        self.0.iter()
    }

    /// Sum of the sizes of the elements.
    pub fn total_size(&self) -> usize {
        self.0.iter().map(GapTree::size).sum()
    }
}

impl<L> GapTree<L> {
    pub fn leaf(x: L) -> Self {
        GapTree::Leaf(x)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, GapTree::Leaf(_))
    }

    pub fn label(&self) -> Option<u32> {
        match self {
            GapTree::Leaf(_) => None,
            GapTree::Node { label, .. } => Some(*label),
        }
    }

    /// Children of a node; empty for a leaf.
    pub fn children(&self) -> &[GapTree<L>] {
        match self {
            GapTree::Leaf(_) => &[],
            GapTree::Node { children, .. } => children.as_slice(),
        }
    }

    /// Number of nodes and leaves.
    pub fn size(&self) -> usize {
        match self {
            GapTree::Leaf(_) => 1,
            GapTree::Node { children, .. } => 1 + children.total_size(),
        }
    }

    /// Largest label occurring in the tree.
    pub fn max_label(&self) -> Option<u32> {
        match self {
            GapTree::Leaf(_) => None,
            GapTree::Node { label, children } => children
                .iter()
                .filter_map(GapTree::max_label)
                .chain([*label])
                .max(),
        }
    }
}

impl<L: Ord> GapTree<L> {
    pub fn node(label: u32, children: Vec<GapTree<L>>) -> Self {
        GapTree::Node {
            label,
            children: TermMultiset::new(children),
        }
    }
}

impl<L: fmt::Debug> fmt::Debug for GapTree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapTree::Leaf(x) => write!(f, "{{{x:?}}}"),
            GapTree::Node { label, children } => write!(f, "{label}*{children:?}"),
        }
    }
}

impl<L: fmt::Debug> fmt::Debug for TermMultiset<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t:?}")?;
        }
        f.write_str("]")
    }
}

/// `r`: `−1` on leaves, the root label on nodes.
pub fn rank<L>(t: &GapTree<L>) -> i64 {
    match t {
        GapTree::Leaf(_) => -1,
        GapTree::Node { label, .. } => i64::from(*label),
    }
}

/// `h(n⋆[t₀,…]) = max({0} ∪ {h(tᵢ)+1})`, and `0` on leaves.
pub fn height<L>(t: &GapTree<L>) -> usize {
    t.children()
        .iter()
        .map(|c| height(c) + 1)
        .max()
        .unwrap_or(0)
}

/// A leaf alphabet: a carrier with a decidable partial order. Letters also
/// need a total order, used only to store children canonically.
pub trait LeafAlphabet: Clone + PartialEq + fmt::Debug {
    type Letter: Clone + Ord + Hash + fmt::Debug;

    fn leq(&self, x: &Self::Letter, y: &Self::Letter) -> bool;
}

/// `X = ∅`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmptyAlphabet;

impl LeafAlphabet for EmptyAlphabet {
    type Letter = Infallible;

    fn leq(&self, x: &Infallible, _: &Infallible) -> bool {
        match *x {}
    }
}

/// Terms ordered by `⪯`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TermAlphabet;

impl LeafAlphabet for TermAlphabet {
    type Letter = ByPrecedence;

    fn leq(&self, x: &ByPrecedence, y: &ByPrecedence) -> bool {
        term_leq(&x.0, &y.0)
    }
}

/// `T⁰_{N+1}(X)` as a leaf alphabet, ordered by `⊴` of `T_{N+1}(X)`. Leaves of
/// `T_N(T⁰_{N+1}(X))` carry letters of this alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct SubtreeAlphabet<A: LeafAlphabet> {
    pub inner: Universe<A>,
}

impl<A: LeafAlphabet> LeafAlphabet for SubtreeAlphabet<A> {
    type Letter = GapTree<A::Letter>;

    fn leq(&self, x: &Self::Letter, y: &Self::Letter) -> bool {
        self.inner.tree_leq(x, y)
    }
}

type Memo<L> = FxHashMap<(GapTree<L>, GapTree<L>), bool>;

/// The ambient set `T_N(X)`: a label bound and a leaf alphabet. Embedding
/// queries are memoized per universe value.
pub struct Universe<A: LeafAlphabet> {
    n: u32,
    alphabet: A,
    memo: RefCell<Memo<A::Letter>>,
}

impl<A: LeafAlphabet> Clone for Universe<A> {
    fn clone(&self) -> Self {
        Universe::new(self.n, self.alphabet.clone())
    }
}

impl<A: LeafAlphabet> PartialEq for Universe<A> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.alphabet == other.alphabet
    }
}

impl<A: LeafAlphabet> fmt::Debug for Universe<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("n", &self.n)
            .field("alphabet", &self.alphabet)
            .finish()
    }
}

impl Universe<EmptyAlphabet> {
    /// `T_N(∅)`.
    pub fn plain(n: u32) -> Self {
        Universe::new(n, EmptyAlphabet)
    }
}

impl<A: LeafAlphabet> Universe<A> {
    pub fn new(n: u32, alphabet: A) -> Self {
        Universe {
            n,
            alphabet,
            memo: RefCell::new(FxHashMap::default()),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alphabet(&self) -> &A {
        &self.alphabet
    }

    /// The universe `T_N(T⁰_{N+1}(X))` that `π` maps from.
    pub fn pi_domain(&self) -> Universe<SubtreeAlphabet<A>> {
        Universe::new(
            self.n,
            SubtreeAlphabet {
                inner: Universe::new(self.n + 1, self.alphabet.clone()),
            },
        )
    }

    /// Checks that every label is below `N`.
    pub fn admits(&self, t: &GapTree<A::Letter>) -> Result<(), GapError> {
        match t {
            GapTree::Leaf(_) => Ok(()),
            GapTree::Node { label, children } => {
                if *label >= self.n {
                    return Err(GapError::LabelOutOfRange {
                        label: *label,
                        n: self.n,
                    });
                }
                children.iter().try_for_each(|c| self.admits(c))
            }
        }
    }

    /// `s ⊴ t`.
    pub fn tree_leq(&self, s: &GapTree<A::Letter>, t: &GapTree<A::Letter>) -> bool {
        match (s, t) {
            (GapTree::Leaf(x), GapTree::Leaf(y)) => self.alphabet.leq(x, y),
            (_, GapTree::Leaf(_)) => false,
            (
                _,
                GapTree::Node {
                    label: n,
                    children: tc,
                },
            ) => {
                if let Some(&hit) = self.memo.borrow().get(&(s.clone(), t.clone())) {
                    return hit;
                }
                let root_to_root = match s {
                    GapTree::Node {
                        label: m,
                        children: sc,
                    } => m == n && self.multiset_leq(sc, tc),
                    GapTree::Leaf(_) => false,
                };
                let r = root_to_root
                    || (rank(s) <= i64::from(*n) && tc.iter().any(|ti| self.tree_leq(s, ti)));
                let mut memo = self.memo.borrow_mut();
                if memo.len() >= 1 << 22 {
                    memo.clear();
                }
                memo.insert((s.clone(), t.clone()), r);
                r
            }
        }
    }

    /// `s ⊴^M t`: some injection sends each element of `s` to an element of
    /// `t` above it.
    pub fn multiset_leq(&self, s: &TermMultiset<A::Letter>, t: &TermMultiset<A::Letter>) -> bool {
        injection_exists(s.len(), t.len(), |i, j| {
            self.tree_leq(&s.as_slice()[i], &t.as_slice()[j])
        })
    }

    pub fn clear_memo(&self) {
        self.memo.borrow_mut().clear();
    }
}

/// `s ⊴ t` for trees that carry their universes; both must match and admit
/// their trees.
pub fn tree_leq<A: LeafAlphabet>(
    (su, s): (&Universe<A>, &GapTree<A::Letter>),
    (tu, t): (&Universe<A>, &GapTree<A::Letter>),
) -> Result<bool, GapError> {
    if su != tu {
        return Err(GapError::UniverseMismatch);
    }
    su.admits(s)?;
    su.admits(t)?;
    Ok(su.tree_leq(s, t))
}

/// Decides whether an injection `f: {0..k} → {0..m}` with `edge(i, f(i))`
/// exists, by augmenting paths.
pub fn injection_exists(k: usize, m: usize, edge: impl Fn(usize, usize) -> bool) -> bool {
    if k > m {
        return false;
    }
    if k == 0 {
        return true;
    }
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..m).filter(|&j| edge(i, j)).collect())
        .collect();
    if adj.iter().any(Vec::is_empty) {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for i in 0..k {
        let mut seen = vec![false; m];
        if !augment(i, &adj, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &j in &adj[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|other| augment(other, adj, owner, seen)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}

/// `π: T_N(T⁰_{N+1}(X)) → T_{N+1}(X)`: leaves unwrap, labels shift up by one.
pub fn pi<L: Clone + Ord>(t: &GapTree<GapTree<L>>) -> Result<GapTree<L>, GapError> {
    match t {
        GapTree::Leaf(s) => {
            if rank(s) > 0 {
                return Err(GapError::PayloadRank { rank: rank(s) });
            }
            Ok(s.clone())
        }
        GapTree::Node { label, children } => Ok(GapTree::node(
            label + 1,
            children.iter().map(pi).collect::<Result<_, _>>()?,
        )),
    }
}

/// Inverse of [`pi`].
pub fn pi_inverse<L: Clone + Ord>(t: &GapTree<L>) -> GapTree<GapTree<L>> {
    match t {
        GapTree::Node { label, children } if *label > 0 => {
            GapTree::node(label - 1, children.iter().map(pi_inverse).collect())
        }
        _ => GapTree::Leaf(t.clone()),
    }
}

/// `κ([t₀,…]) = 0⋆[π(t₀),…]`, landing in `T⁰_{N+1}(X)`.
pub fn kappa<L: Clone + Ord>(sigma: &TermMultiset<GapTree<L>>) -> Result<GapTree<L>, GapError> {
    Ok(GapTree::node(
        0,
        sigma.iter().map(pi).collect::<Result<_, _>>()?,
    ))
}

/// `supp(s̄) = {s}`, `supp(n⋆τ) = supp^M(τ)`.
pub fn supp<L: Clone + Ord>(t: &GapTree<GapTree<L>>) -> Result<BTreeSet<GapTree<L>>, GapError> {
    let mut out = BTreeSet::new();
    collect_supp(t, &mut out)?;
    Ok(out)
}

/// Union of [`supp`] over the elements of a multiset.
pub fn supp_multiset<L: Clone + Ord>(
    sigma: &TermMultiset<GapTree<L>>,
) -> Result<BTreeSet<GapTree<L>>, GapError> {
    let mut out = BTreeSet::new();
    for t in sigma.iter() {
        collect_supp(t, &mut out)?;
    }
    Ok(out)
}

fn collect_supp<L: Clone + Ord>(
    t: &GapTree<GapTree<L>>,
    out: &mut BTreeSet<GapTree<L>>,
) -> Result<(), GapError> {
    match t {
        GapTree::Leaf(s) => {
            if rank(s) > 0 {
                return Err(GapError::PayloadRank { rank: rank(s) });
            }
            out.insert(s.clone());
        }
        GapTree::Node { children, .. } => {
            for c in children.iter() {
                collect_supp(c, out)?;
            }
        }
    }
    Ok(())
}

/// `Ē(t)` on `T₂`: `{t}` when the root is labelled 0 and some child is
/// labelled 1, otherwise the union over the children.
pub fn ebar(t: &PlainTree) -> BTreeSet<PlainTree> {
    let mut out = BTreeSet::new();
    collect_ebar(t, &mut out);
    out
}

fn collect_ebar(t: &PlainTree, out: &mut BTreeSet<PlainTree>) {
    let fires = t.label() == Some(0) && t.children().iter().any(|c| c.label() == Some(1));
    if fires {
        out.insert(t.clone());
    } else {
        t.children().iter().for_each(|c| collect_ebar(c, out));
    }
}
