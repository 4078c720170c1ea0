//! Fixed workloads shared by the benchmarks.

use gapord_core::enumerate::{enum_terms, enum_trees};
use gapord_core::{OrdinalTerm, PlainTree};

pub fn terms(max_len: usize) -> Vec<OrdinalTerm> {
    enum_terms(max_len).expect("within the default budget")
}

pub fn t2_trees(max_size: usize) -> Vec<PlainTree> {
    enum_trees(2, max_size).expect("within the default budget")
}
