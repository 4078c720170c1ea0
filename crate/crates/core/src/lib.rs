//! Decision procedures for the Bachmann-Howard notation system ϑ(ε_Ω+1) and
//! for Friedman's gap-condition trees, together with the order-reflecting map
//! from terms into trees and exhaustive small-instance checkers.

pub mod arith;
pub mod audit;
mod bits;
pub mod cset;
pub mod embed;
pub mod enumerate;
pub mod gaptree;
pub mod notation;
pub mod syntax;

pub use gaptree::{GapTree, PlainTree, TermMultiset, Universe};
pub use notation::{compare, OrdinalTerm, RawTerm, TermView, ValidationReport};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
