//! Membership in the coefficient sets `C_α(β)` and bounded checks of the
//! characterization of `ϑα` as the least `γ` with `α ∈ C_α(γ)` and
//! `C_α(γ) ∩ Ω ≺* γ`.
//!
//! Membership recurses through subterms: a sum belongs exactly when all its
//! entries do, and a collapse `ϑγ` not already below `β` belongs exactly when
//! `γ` belongs and `γ ≺ α`. A collapse never enters through the sum clause
//! since `⟨ϑγ⟩` is not a term.

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{enum_terms, EnumError};
use crate::notation::{e_parts, lt, OrdinalTerm, TermView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsetError {
    #[error("expected {lower:?} to lie below {upper:?}")]
    NotBelow {
        lower: OrdinalTerm,
        upper: OrdinalTerm,
    },
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Decides `g ∈ C_a(b)`.
pub fn c_member(g: &OrdinalTerm, a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    if g.is_omega() || lt(g, b) {
        return true;
    }
    match g.view() {
        TermView::Omega => true,
        TermView::Sum(es) => es.iter().all(|e| c_member(e, a, b)),
        TermView::Theta(arg) => lt(arg, a) && c_member(arg, a, b),
    }
}

/// `E(g) ⊆ C_a(b)`, checked element by element.
pub fn e_closure_check(g: &OrdinalTerm, a: &OrdinalTerm, b: &OrdinalTerm) -> bool {
    e_parts(g).iter().all(|e| c_member(e, a, b))
}

/// Outcome of testing whether `g` satisfies the two conditions that define
/// `ϑa` as a minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaConditions {
    /// `a ∈ C_a(g)`.
    pub contains_a: bool,
    /// First candidate `δ ≺ Ω` in `C_a(g)` that is not below `g`.
    #[serde(serialize_with = "crate::syntax::serialize_opt_term")]
    pub omega_trap_counterexample: Option<OrdinalTerm>,
}

impl ThetaConditions {
    /// Both conditions hold as far as the search could tell.
    pub fn satisfied(&self) -> bool {
        self.contains_a && self.omega_trap_counterexample.is_none()
    }
}

/// Searches all terms of length at most `search_bound` for a witness that
/// `C_a(g) ∩ Ω ≺* g` fails. Absence of a witness is evidence only.
pub fn theta_conditions(
    a: &OrdinalTerm,
    g: &OrdinalTerm,
    search_bound: usize,
) -> Result<ThetaConditions, CsetError> {
    let candidates = enum_terms(search_bound)?;
    Ok(theta_conditions_among(a, g, &candidates))
}

/// As [`theta_conditions`], with the candidate list supplied by the caller in
/// the order it should be searched.
pub fn theta_conditions_among(
    a: &OrdinalTerm,
    g: &OrdinalTerm,
    candidates: &[OrdinalTerm],
) -> ThetaConditions {
    let w = OrdinalTerm::omega();
    let omega_trap_counterexample = candidates
        .iter()
        .find(|d| lt(d, &w) && !lt(d, g) && c_member(d, a, g))
        .cloned();
    ThetaConditions {
        contains_a: c_member(a, a, g),
        omega_trap_counterexample,
    }
}

/// For `b ≺ g`: `b ∈ C_g(ϑg)` implies `ϑb ≺ ϑg`.
pub fn collapse_monotone_check(b: &OrdinalTerm, g: &OrdinalTerm) -> Result<bool, CsetError> {
    if !lt(b, g) {
        return Err(CsetError::NotBelow {
            lower: b.clone(),
            upper: g.clone(),
        });
    }
    let tg = OrdinalTerm::theta(g.clone());
    Ok(!c_member(b, g, &tg) || lt(&OrdinalTerm::theta(b.clone()), &tg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::numeral;

    fn w() -> OrdinalTerm {
        OrdinalTerm::omega()
    }
    fn z() -> OrdinalTerm {
        OrdinalTerm::zero()
    }
    fn t(a: OrdinalTerm) -> OrdinalTerm {
        OrdinalTerm::theta(a)
    }

    #[test]
    fn membership_examples() {
        for (a, b) in [(z(), z()), (w(), t(w())), (t(z()), numeral(3))] {
            assert!(c_member(&w(), &a, &b));
        }
        assert!(!c_member(&t(z()), &z(), &z()));
        assert!(c_member(&t(z()), &numeral(1), &z()));
    }

    #[test]
    fn e_closure_examples() {
        assert!(e_closure_check(&w(), &z(), &z()));
        let g = OrdinalTerm::sum(vec![t(z()), z()]).unwrap();
        assert!(e_closure_check(&g, &numeral(1), &z()));
        assert_eq!(e_closure_check(&g, &z(), &z()), c_member(&g, &z(), &z()));
    }

    #[test]
    fn theta_conditions_examples() {
        let r = theta_conditions(&z(), &t(z()), 7).unwrap();
        assert!(r.contains_a);
        assert_eq!(r.omega_trap_counterexample, None);

        // g = 0: nothing lies below 0, but 0 itself is in C and is not below 0.
        let r = theta_conditions(&z(), &z(), 7).unwrap();
        assert!(r.contains_a);
        assert_eq!(r.omega_trap_counterexample, Some(z()));

        let r = theta_conditions(&w(), &t(w()), 7).unwrap();
        assert!(r.contains_a);
    }

    #[test]
    fn collapse_monotone_examples() {
        assert_eq!(collapse_monotone_check(&z(), &w()), Ok(true));
        assert!(lt(&t(z()), &t(w())));
        assert!(matches!(
            collapse_monotone_check(&w(), &z()),
            Err(CsetError::NotBelow { .. })
        ));
    }
}
