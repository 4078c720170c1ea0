//! Cantor-normal-form arithmetic on terms.
//!
//! `Ω` and `ϑα` are read as the singleton sums `⟨Ω⟩` and `⟨ϑα⟩` on input, and
//! every result is normalized back so that such singletons never escape.

use thiserror::Error;

use crate::notation::{leq, lt, OrdinalTerm, TermView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{op}: argument {arg:?} is not below W")]
    NotBelowOmega { op: &'static str, arg: OrdinalTerm },
}

/// `a + b`: keep the entries of `a` that are at least the leading entry of
/// `b`, then append all of `b`.
pub fn add(a: &OrdinalTerm, b: &OrdinalTerm) -> OrdinalTerm {
    if b.is_zero() {
        return a.clone();
    }
    let rhs = b.entries();
    let mut out = a.entries();
    let keep = out.iter().take_while(|x| leq(&rhs[0], x)).count();
    out.truncate(keep);
    out.extend(rhs);
    OrdinalTerm::from_entries(out)
}

/// `ω·a`.
pub fn omega_mul(a: &OrdinalTerm) -> OrdinalTerm {
    match a.view() {
        TermView::Omega | TermView::Theta(_) => a.clone(),
        TermView::Sum(es) => {
            let one = OrdinalTerm::numeral(1);
            OrdinalTerm::from_entries(es.iter().map(|e| add(&one, e)).collect())
        }
    }
}

/// `ω(a)`, i.e. `ω^a`.
pub fn omega_exp(a: &OrdinalTerm) -> OrdinalTerm {
    if a.is_special() {
        a.clone()
    } else {
        OrdinalTerm::sum_unchecked(vec![a.clone()])
    }
}

/// `Ω·a`, entrywise `Ω+αᵢ`.
pub fn big_omega_mul(a: &OrdinalTerm) -> OrdinalTerm {
    let w = OrdinalTerm::omega();
    let entries = if a.is_zero() { Vec::new() } else { a.entries() };
    OrdinalTerm::from_entries(entries.iter().map(|e| add(&w, e)).collect())
}

/// `φ̄(a, b) = ϑ(Ω·a + b)` for `a, b ≺ Ω`.
pub fn veblen(a: &OrdinalTerm, b: &OrdinalTerm) -> Result<OrdinalTerm, ArithError> {
    let w = OrdinalTerm::omega();
    for arg in [a, b] {
        if !lt(arg, &w) {
            return Err(ArithError::NotBelowOmega {
                op: "veblen",
                arg: arg.clone(),
            });
        }
    }
    Ok(OrdinalTerm::theta(add(&big_omega_mul(a), b)))
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
    fn s(es: Vec<OrdinalTerm>) -> OrdinalTerm {
        OrdinalTerm::sum(es).unwrap()
    }

    #[test]
    fn addition_examples() {
        for a in [w(), z(), t(z()), s(vec![w(), z()])] {
            assert_eq!(add(&z(), &a), a);
            assert_eq!(add(&a, &z()), a);
        }
        assert_eq!(add(&w(), &numeral(1)), s(vec![w(), z()]));
        assert_eq!(add(&numeral(1), &w()), w());
        assert_eq!(add(&numeral(2), &numeral(3)), numeral(5));
        // 1 + ω = ω
        let om = OrdinalTerm::small_omega();
        assert_eq!(add(&numeral(1), &om), om);
    }

    #[test]
    fn omega_mul_examples() {
        assert_eq!(omega_mul(&w()), w());
        assert_eq!(omega_mul(&t(z())), t(z()));
        assert_eq!(omega_mul(&numeral(1)), OrdinalTerm::small_omega());
        assert_eq!(omega_mul(&z()), z());
    }

    #[test]
    fn omega_exp_examples() {
        assert_eq!(omega_exp(&w()), w());
        let a = s(vec![w(), z()]);
        assert_eq!(omega_exp(&a), s(vec![a.clone()]));
        assert_eq!(omega_exp(&z()), numeral(1));
    }

    #[test]
    fn big_omega_mul_examples() {
        assert_eq!(big_omega_mul(&z()), z());
        assert_eq!(big_omega_mul(&numeral(1)), w());
        assert_eq!(big_omega_mul(&t(z())), s(vec![s(vec![w(), t(z())])]));
        assert_eq!(big_omega_mul(&w()), s(vec![s(vec![w(), w()])]));
    }

    #[test]
    fn veblen_examples() {
        assert_eq!(veblen(&z(), &z()).unwrap(), t(z()));
        assert_eq!(veblen(&z(), &t(z())).unwrap(), t(t(z())));
        assert_eq!(
            veblen(&t(z()), &z()).unwrap(),
            t(s(vec![s(vec![w(), t(z())])]))
        );
        assert!(matches!(
            veblen(&w(), &z()),
            Err(ArithError::NotBelowOmega { .. })
        ));
        assert!(veblen(&z(), &s(vec![w(), z()])).is_err());
    }
}
