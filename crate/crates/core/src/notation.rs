//! Terms of the Bachmann-Howard notation system ϑ(ε_Ω+1).
//!
//! A term is `Ω`, a collapse `ϑα`, or a Cantor-normal-form sum `⟨α₀,…,α_{n−1}⟩`
//! standing for `ω^α₀ + … + ω^α_{n−1}`. Validity of sums, the order `≺` and the
//! coefficient sets `E(α)` are defined simultaneously; [`validate`] and
//! [`compare`] decide them by recursion on the length function [`length`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

/// A well-formed term. The representation is private so that every value
/// reachable through the public API satisfies the sum side conditions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrdinalTerm(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Omega,
    Theta(Arc<OrdinalTerm>),
    Sum(Arc<[OrdinalTerm]>),
}

/// Borrowed view of the outermost constructor of an [`OrdinalTerm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermView<'a> {
    Omega,
    Theta(&'a OrdinalTerm),
    Sum(&'a [OrdinalTerm]),
}

/// Unchecked term shape, as produced by the parser.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RawTerm {
    Omega,
    Theta(Box<RawTerm>),
    Sum(Vec<RawTerm>),
}

/// Child-index path from the root of a term to one of its nodes. The argument
/// of a collapse has index 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

/// Why a [`RawTerm`] is not a term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationReport {
    #[error("singleton sum at {path} wraps a term of the form W or t(...)")]
    SingletonSpecial { path: NodePath },
    #[error("sum at {path} is not weakly descending at entries {index} and {}", .index + 1)]
    NotDescending { path: NodePath, index: usize },
}

impl ValidationReport {
    pub fn path(&self) -> &NodePath {
        match self {
            ValidationReport::SingletonSpecial { path } => path,
            ValidationReport::NotDescending { path, .. } => path,
        }
    }
}

impl OrdinalTerm {
    pub fn omega() -> Self {
        OrdinalTerm(Repr::Omega)
    }

    pub fn zero() -> Self {
        OrdinalTerm(Repr::Sum(Arc::from(Vec::new())))
    }

    /// The numeral `n`, a sum of `n` zeros.
    pub fn numeral(n: usize) -> Self {
        let zero = Self::zero();
        OrdinalTerm(Repr::Sum(vec![zero; n].into()))
    }

    /// `ω = ⟨1⟩`.
    pub fn small_omega() -> Self {
        OrdinalTerm(Repr::Sum(Arc::from(vec![Self::numeral(1)])))
    }

    /// `ϑα`. Every term may be collapsed.
    pub fn theta(arg: OrdinalTerm) -> Self {
        OrdinalTerm(Repr::Theta(Arc::new(arg)))
    }

    /// Builds `⟨entries⟩`, checking both side conditions.
    pub fn sum(entries: Vec<OrdinalTerm>) -> Result<Self, ValidationReport> {
        check_sum(&entries, &NodePath::default())?;
        Ok(Self::sum_unchecked(entries))
    }

    /// Builds a sum from entries the caller has already checked.
    pub(crate) fn sum_unchecked(entries: Vec<OrdinalTerm>) -> Self {
        debug_assert!(check_sum(&entries, &NodePath::default()).is_ok());
        OrdinalTerm(Repr::Sum(entries.into()))
    }

    /// Reads a weakly descending entry list back as a term, unwrapping a
    /// singleton of the form `Ω` or `ϑα`.
    pub(crate) fn from_entries(mut entries: Vec<OrdinalTerm>) -> Self {
        if entries.len() == 1 && entries[0].is_special() {
            return entries.pop().unwrap();
        }
        Self::sum_unchecked(entries)
    }

    /// Entry list with `Ω` and `ϑα` read as the singletons `⟨Ω⟩` and `⟨ϑα⟩`.
    pub(crate) fn entries(&self) -> Vec<OrdinalTerm> {
        match &self.0 {
            Repr::Sum(es) => es.to_vec(),
            _ => vec![self.clone()],
        }
    }

    pub fn view(&self) -> TermView<'_> {
        match &self.0 {
            Repr::Omega => TermView::Omega,
            Repr::Theta(a) => TermView::Theta(a),
            Repr::Sum(es) => TermView::Sum(es),
        }
    }

    pub fn is_omega(&self) -> bool {
        matches!(self.0, Repr::Omega)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Sum(es) if es.is_empty())
    }

    pub fn theta_arg(&self) -> Option<&OrdinalTerm> {
        match &self.0 {
            Repr::Theta(a) => Some(a),
            _ => None,
        }
    }

    /// True for `Ω` and `ϑα`, the forms that denote ε-numbers.
    pub fn is_special(&self) -> bool {
        !matches!(self.0, Repr::Sum(_))
    }

    /// If the term is a numeral, its value.
    pub fn as_numeral(&self) -> Option<usize> {
        match &self.0 {
            Repr::Sum(es) if es.iter().all(OrdinalTerm::is_zero) => Some(es.len()),
            _ => None,
        }
    }

    pub fn to_raw(&self) -> RawTerm {
        match &self.0 {
            Repr::Omega => RawTerm::Omega,
            Repr::Theta(a) => RawTerm::Theta(Box::new(a.to_raw())),
            Repr::Sum(es) => RawTerm::Sum(es.iter().map(OrdinalTerm::to_raw).collect()),
        }
    }

    /// Number of constructor nodes.
    pub fn node_count(&self) -> usize {
        match &self.0 {
            Repr::Omega => 1,
            Repr::Theta(a) => 1 + a.node_count(),
            Repr::Sum(es) => 1 + es.iter().map(OrdinalTerm::node_count).sum::<usize>(),
        }
    }
}

impl fmt::Debug for OrdinalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Omega => f.write_str("W"),
            Repr::Theta(a) => write!(f, "t({a:?})"),
            Repr::Sum(es) if es.is_empty() => f.write_str("0"),
            Repr::Sum(es) => {
                f.write_str("[")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e:?}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl RawTerm {
    pub fn zero() -> Self {
        RawTerm::Sum(Vec::new())
    }

    pub fn numeral(n: usize) -> Self {
        RawTerm::Sum(vec![RawTerm::zero(); n])
    }
}

fn check_sum(entries: &[OrdinalTerm], path: &NodePath) -> Result<(), ValidationReport> {
    if entries.len() == 1 && entries[0].is_special() {
        return Err(ValidationReport::SingletonSpecial { path: path.clone() });
    }
    for (i, w) in entries.windows(2).enumerate() {
        if precedes(&w[0], &w[1]) {
            return Err(ValidationReport::NotDescending {
                path: path.clone(),
                index: i,
            });
        }
    }
    Ok(())
}

/// Checks a raw term bottom-up. Descent of sum entries is decided with
/// [`compare`] on entries that have already been validated.
pub fn validate(raw: &RawTerm) -> Result<OrdinalTerm, ValidationReport> {
    fn go(raw: &RawTerm, path: &mut Vec<usize>) -> Result<OrdinalTerm, ValidationReport> {
        match raw {
            RawTerm::Omega => Ok(OrdinalTerm::omega()),
            RawTerm::Theta(a) => {
                path.push(0);
                let a = go(a, path)?;
                path.pop();
                Ok(OrdinalTerm::theta(a))
            }
            RawTerm::Sum(es) => {
                let mut entries = Vec::with_capacity(es.len());
                for (i, e) in es.iter().enumerate() {
                    path.push(i);
                    entries.push(go(e, path)?);
                    path.pop();
                }
                check_sum(&entries, &NodePath(path.clone()))?;
                Ok(OrdinalTerm(Repr::Sum(entries.into())))
            }
        }
    }
    go(raw, &mut Vec::new())
}

/// The length `l`: `l(Ω)=0`, `l(ϑα)=l(α)+1`, `l(⟨α₀,…⟩)=n+Σl(αᵢ)`.
pub fn length(a: &OrdinalTerm) -> usize {
    match a.view() {
        TermView::Omega => 0,
        TermView::Theta(b) => length(b) + 1,
        TermView::Sum(es) => es.len() + es.iter().map(length).sum::<usize>(),
    }
}

pub fn raw_length(a: &RawTerm) -> usize {
    match a {
        RawTerm::Omega => 0,
        RawTerm::Theta(b) => raw_length(b) + 1,
        RawTerm::Sum(es) => es.len() + es.iter().map(raw_length).sum::<usize>(),
    }
}

pub fn numeral(n: usize) -> OrdinalTerm {
    OrdinalTerm::numeral(n)
}

/// Three-way comparison under `≺`. Equality is syntactic identity.
pub fn compare(a: &OrdinalTerm, b: &OrdinalTerm) -> Ordering {
    if a == b {
        Ordering::Equal
    } else if precedes(a, b) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// `a ⪯ b`.
pub fn leq(a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    a == b || precedes(a, b)
}

/// `a ≺ b`.
pub fn lt(a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    precedes(a, b)
}

/// `E(a) ≺* b`: every element of `E(a)` lies below `b`.
pub fn eps_dominated(a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    all_eps(a, &mut |g| precedes(g, b))
}

/// `a ⪯* E(b)`: `a` lies weakly below some element of `E(b)`.
pub fn dominates_eps(a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    any_eps(b, &mut |g| leq(a, g))
}

/// `E(a)` as a deduplicated list in ascending `≺` order. Only collapses occur.
pub fn e_parts(a: &OrdinalTerm) -> Vec<OrdinalTerm> {
    let mut out = Vec::new();
    collect_eps(a, &mut out);
    out.sort_by(compare);
    out.dedup();
    out
}

fn collect_eps(a: &OrdinalTerm, out: &mut Vec<OrdinalTerm>) {
    match a.view() {
        TermView::Omega => {}
        TermView::Theta(_) => out.push(a.clone()),
        TermView::Sum(es) => es.iter().for_each(|e| collect_eps(e, out)),
    }
}

fn all_eps(a: &OrdinalTerm, pred: &mut impl FnMut(&OrdinalTerm) -> bool) -> bool {
    match a.view() {
        TermView::Omega => true,
        TermView::Theta(_) => pred(a),
        TermView::Sum(es) => es.iter().all(|e| all_eps(e, pred)),
    }
}

fn any_eps(a: &OrdinalTerm, pred: &mut impl FnMut(&OrdinalTerm) -> bool) -> bool {
    match a.view() {
        TermView::Omega => false,
        TermView::Theta(_) => pred(a),
        TermView::Sum(es) => es.iter().any(|e| any_eps(e, pred)),
    }
}

// Memo for collapse-versus-collapse comparisons, the only clause whose
// recursion branches. Each thread keeps its own table.
const MEMO_CAP: usize = 1 << 21;

thread_local! {
    static THETA_MEMO: RefCell<FxHashMap<(OrdinalTerm, OrdinalTerm), bool>> =
        RefCell::new(FxHashMap::default());
}

/// Drops the calling thread's comparison memo.
pub fn clear_compare_memo() {
    THETA_MEMO.with(|m| m.borrow_mut().clear());
}

fn precedes(a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    match (a.view(), b.view()) {
        (TermView::Omega, TermView::Sum(bs)) => bs.first().is_some_and(|b0| leq(a, b0)),
        (TermView::Omega, _) => false,
        (TermView::Theta(_), TermView::Omega) => true,
        (TermView::Theta(_), TermView::Sum(bs)) => bs.first().is_some_and(|b0| leq(a, b0)),
        (TermView::Theta(a1), TermView::Theta(b1)) => {
            let key = (a.clone(), b.clone());
            if let Some(hit) = THETA_MEMO.with(|m| m.borrow().get(&key).copied()) {
                return hit;
            }
            let r = (precedes(a1, b1) && all_eps(a1, &mut |g| precedes(g, b)))
                || any_eps(b1, &mut |g| leq(a, g));
            THETA_MEMO.with(|m| {
                let mut m = m.borrow_mut();
                if m.len() >= MEMO_CAP {
                    m.clear();
                }
                m.insert(key, r);
            });
            r
        }
        (TermView::Sum(xs), TermView::Omega | TermView::Theta(_)) => {
            xs.first().is_none_or(|x0| precedes(x0, b))
        }
        (TermView::Sum(xs), TermView::Sum(ys)) => {
            let j = xs.iter().zip(ys.iter()).take_while(|(x, y)| x == y).count();
            if j == xs.len() {
                j < ys.len()
            } else if j == ys.len() {
                false
            } else {
                precedes(&xs[j], &ys[j])
            }
        }
    }
}

/// Wrapper ordering terms by `≺`, for use as map keys and in sorted sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ByPrecedence(pub OrdinalTerm);

impl PartialOrd for ByPrecedence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByPrecedence {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(&self.0, &other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> OrdinalTerm {
        OrdinalTerm::omega()
    }
    fn z() -> OrdinalTerm {
        OrdinalTerm::zero()
    }
    fn t(a: OrdinalTerm) -> OrdinalTerm {
        OrdinalTerm::theta(a)
    }
    fn s(es: Vec<OrdinalTerm>) -> OrdinalTerm {
        OrdinalTerm::sum(es).unwrap()
    }

    #[test]
    fn singleton_of_omega_is_rejected() {
        let raw = RawTerm::Sum(vec![RawTerm::Omega]);
        assert_eq!(
            validate(&raw),
            Err(ValidationReport::SingletonSpecial {
                path: NodePath(vec![])
            })
        );
        let raw = RawTerm::Theta(Box::new(RawTerm::Sum(vec![RawTerm::Theta(Box::new(
            RawTerm::Omega,
        ))])));
        assert_eq!(validate(&raw).unwrap_err().path(), &NodePath(vec![0]));
    }

    #[test]
    fn zero_is_valid() {
        assert_eq!(validate(&RawTerm::zero()).unwrap(), z());
    }

    #[test]
    fn descent_is_checked() {
        let raw = RawTerm::Sum(vec![RawTerm::zero(), RawTerm::numeral(1)]);
        assert_eq!(
            validate(&raw),
            Err(ValidationReport::NotDescending {
                path: NodePath(vec![]),
                index: 0
            })
        );
        let raw = RawTerm::Sum(vec![RawTerm::numeral(1), RawTerm::zero(), RawTerm::zero()]);
        assert!(validate(&raw).is_ok());
        let nested = RawTerm::Sum(vec![
            RawTerm::Omega,
            RawTerm::Sum(vec![RawTerm::zero(), RawTerm::Omega]),
        ]);
        assert_eq!(validate(&nested).unwrap_err().path(), &NodePath(vec![1]));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&z(), &w()), Ordering::Less);
        assert_eq!(compare(&t(z()), &w()), Ordering::Less);
        assert_eq!(compare(&w(), &s(vec![w(), z()])), Ordering::Less);
        assert_eq!(compare(&t(w()), &t(s(vec![w(), z()]))), Ordering::Less);
        assert_eq!(compare(&t(s(vec![w(), z()])), &t(w())), Ordering::Greater);
        assert_eq!(compare(&w(), &w()), Ordering::Equal);
    }

    #[test]
    fn theta_of_omega_sits_above_numerals_and_small_omega() {
        let om = OrdinalTerm::small_omega();
        assert!(lt(&om, &t(z())));
        assert!(lt(&numeral(5), &om));
        assert!(lt(&t(z()), &t(w())));
    }

    #[test]
    fn e_parts_examples() {
        assert!(e_parts(&w()).is_empty());
        assert_eq!(e_parts(&t(w())), vec![t(w())]);
        assert_eq!(e_parts(&s(vec![w(), t(z()), t(z())])), vec![t(z())]);
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&w()), 0);
        assert_eq!(length(&t(t(w()))), 2);
        assert_eq!(length(&s(vec![w(), z()])), 2);
    }

    #[test]
    fn numerals() {
        assert_eq!(numeral(0), z());
        assert_eq!(numeral(1), s(vec![z()]));
        assert_eq!(numeral(3), s(vec![z(), z(), z()]));
        assert_eq!(numeral(3).as_numeral(), Some(3));
        assert_eq!(w().as_numeral(), None);
    }

    #[test]
    fn epsilon_shortcuts() {
        assert!(eps_dominated(&w(), &z()));
        assert!(dominates_eps(&t(z()), &s(vec![t(z()), z()])));
        assert!(!dominates_eps(&t(w()), &s(vec![t(z()), z()])));
        for a in [w(), z(), t(z()), s(vec![w(), t(z())])] {
            assert!(eps_dominated(&a, &t(a.clone())));
        }
    }

    #[test]
    fn node_path_display() {
        assert_eq!(NodePath(vec![]).to_string(), "root");
        assert_eq!(NodePath(vec![1, 0]).to_string(), "/1/0");
    }
}
