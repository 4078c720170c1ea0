use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gapord_bench::{t2_trees, terms};
use gapord_core::embed::embed_term;
use gapord_core::enumerate::{enum_terms, longest_bad_sequence, DEFAULT_BUDGET};
use gapord_core::notation::clear_compare_memo;
use gapord_core::{compare, Universe};

fn compare_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("compare-all-pairs");
    g.sample_size(10);
    for l in [4, 5, 6] {
        let ts = terms(l);
        g.bench_with_input(BenchmarkId::from_parameter(l), &ts, |b, ts| {
            b.iter(|| {
                clear_compare_memo();
                let mut less = 0usize;
                for x in ts {
                    for y in ts {
                        less += usize::from(compare(x, y).is_lt());
                    }
                }
                black_box(less)
            })
        });
    }
    g.finish();
}

fn tree_leq_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("tree-leq-all-pairs");
    g.sample_size(10);
    for s in [3, 4, 5] {
        let ts = t2_trees(s);
        g.bench_with_input(BenchmarkId::from_parameter(s), &ts, |b, ts| {
            b.iter(|| {
                let u = Universe::plain(2);
                let mut hits = 0usize;
                for x in ts {
                    for y in ts {
                        hits += usize::from(u.tree_leq(x, y));
                    }
                }
                black_box(hits)
            })
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enum-terms");
    g.sample_size(10);
    for l in [5, 6, 7] {
        g.bench_with_input(BenchmarkId::from_parameter(l), &l, |b, &l| {
            b.iter(|| black_box(enum_terms(l).unwrap().len()))
        });
    }
    g.finish();
}

fn embedding(c: &mut Criterion) {
    let ts = terms(6);
    c.bench_function("embed-terms-l6", |b| {
        b.iter(|| ts.iter().map(|a| embed_term(a).size()).sum::<usize>())
    });
}

fn bad_sequences(c: &mut Criterion) {
    c.bench_function("bad-seq-n2-s5", |b| {
        b.iter(|| longest_bad_sequence(2, 5, DEFAULT_BUDGET).unwrap().length)
    });
}

criterion_group!(
    benches,
    compare_sweep,
    tree_leq_sweep,
    enumeration,
    embedding,
    bad_sequences
);
criterion_main!(benches);
