//! The map `f` from terms into `T₂ = T₂(∅)` and pointwise checks of the facts
//! that make it order reflecting.

use crate::gaptree::{ebar, EmptyAlphabet, GapTree, PlainTree, Universe};
use crate::notation::{e_parts, length, leq, lt, OrdinalTerm, TermView};

/// `f(Ω) = 1⋆[]`, `f(ϑα) = 0⋆[1⋆[f(α)]]`, and a sum maps to `i⋆[f(α₀),…]`
/// with `i = 0` if the sum is empty or `α₀ ≺ Ω`, else `i = 1`.
pub fn embed_term(a: &OrdinalTerm) -> PlainTree {
    match a.view() {
        TermView::Omega => GapTree::node(1, vec![]),
        TermView::Theta(arg) => GapTree::node(0, vec![GapTree::node(1, vec![embed_term(arg)])]),
        TermView::Sum(es) => {
            let root = match es.first() {
                None => 0,
                Some(a0) if lt(a0, &OrdinalTerm::omega()) => 0,
                Some(_) => 1,
            };
            GapTree::node(root, es.iter().map(embed_term).collect())
        }
    }
}

/// Holds unless `f(a) ⊴ f(b)` while `b ≺ a`.
pub fn reflection_check(u: &Universe<EmptyAlphabet>, a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    !u.tree_leq(&embed_term(a), &embed_term(b)) || leq(a, b)
}

/// `Ē(f(a)) = f[E(a)]`.
pub fn ebar_image_check(a: &OrdinalTerm) -> bool {
    let lhs = ebar(&embed_term(a));
    let rhs = e_parts(a).iter().map(embed_term).collect();
    lhs == rhs
}

/// Holds unless `f(a) ⊴ f(b)` while `l(a) > l(b)`.
pub fn length_monotone_check(
    u: &Universe<EmptyAlphabet>,
    a: &OrdinalTerm,
    b: &OrdinalTerm,
) -> bool {
    !u.tree_leq(&embed_term(a), &embed_term(b)) || length(a) <= length(b)
}

/// The universe `T₂(∅)` that `f` maps into.
pub fn t2() -> Universe<EmptyAlphabet> {
    Universe::plain(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::numeral;

    fn n(label: u32, children: Vec<PlainTree>) -> PlainTree {
        GapTree::node(label, children)
    }

    #[test]
    fn embedding_examples() {
        let w = OrdinalTerm::omega();
        let z = OrdinalTerm::zero();
        assert_eq!(embed_term(&w), n(1, vec![]));
        assert_eq!(embed_term(&z), n(0, vec![]));
        assert_eq!(
            embed_term(&OrdinalTerm::theta(z.clone())),
            n(0, vec![n(1, vec![n(0, vec![])])])
        );
        let s = OrdinalTerm::sum(vec![w.clone(), z.clone()]).unwrap();
        assert_eq!(embed_term(&s), n(1, vec![n(1, vec![]), n(0, vec![])]));
    }

    #[test]
    fn pointwise_checks() {
        let u = t2();
        let w = OrdinalTerm::omega();
        let z = OrdinalTerm::zero();
        let t0 = OrdinalTerm::theta(z.clone());
        assert!(!u.tree_leq(&embed_term(&z), &embed_term(&w)));
        assert!(reflection_check(&u, &z, &w));
        assert!(ebar_image_check(&w));
        assert!(ebar_image_check(&t0));
        assert!(length_monotone_check(&u, &z, &z));
        assert!(length_monotone_check(
            &u,
            &t0,
            &OrdinalTerm::theta(t0.clone())
        ));
        assert!(reflection_check(&u, &numeral(2), &numeral(3)));
    }
}
