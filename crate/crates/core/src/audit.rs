//! Exhaustive invariant batteries over enumerated terms and trees.
//!
//! Each battery returns a [`SuiteReport`] listing every check with the number
//! of cases it covered and the first few violating witnesses. Sweeps fan out
//! over rayon; the report is the same for any thread count.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{add, big_omega_mul, omega_exp, omega_mul, veblen};
use crate::bits::Bits;
use crate::cset::{c_member, collapse_monotone_check, e_closure_check, theta_conditions_among};
use crate::embed::{embed_term, t2};
use crate::enumerate::{
    descent_sampler, enum_pi_domain, enum_terms, enum_trees, longest_bad_sequence,
    longest_bad_sequence_naive, multisets_up_to, EnumError,
};
use crate::gaptree::{
    ebar, height, injection_exists, kappa, pi, pi_inverse, rank, supp, supp_multiset, GapTree,
    PlainTree, TermMultiset, Universe,
};
use crate::notation::{
    compare, dominates_eps, e_parts, eps_dominated, length, leq, lt, validate, OrdinalTerm,
    TermView,
};
use crate::syntax::{parse_domain_tree, parse_term, parse_tree, print_term, print_tree, Style};

const WITNESS_CAP: usize = 5;

/// One property checked over a family of cases.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, u64>,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    fn new(suite: &str, params: &[(&str, u64)]) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, tally: Tally) -> &mut CheckOutcome {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            cases: tally.cases,
            violations: tally.violations,
            witnesses: tally.witnesses,
            notes: Vec::new(),
        });
        self.checks.last_mut().unwrap()
    }
}

#[derive(Debug, Default)]
struct Tally {
    cases: u64,
    violations: u64,
    witnesses: Vec<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.violations += other.violations;
        let room = WITNESS_CAP.saturating_sub(self.witnesses.len());
        self.witnesses
            .extend(other.witnesses.into_iter().take(room));
        self
    }
}

// Runs `body` for each index in parallel and merges the tallies in index order.
fn sweep<S>(
    n: usize,
    init: impl Fn() -> S + Sync + Send,
    body: impl Fn(&mut S, usize, &mut Tally) + Sync + Send,
) -> Tally {
    (0..n)
        .into_par_iter()
        .map_init(init, |state, i| {
            let mut t = Tally::default();
            body(state, i, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn pt(a: &OrdinalTerm) -> String {
    print_term(a, Style::Canonical)
}

/// Sorting, pairwise trichotomy at `max_len`, exhaustive transitivity at
/// `triple_len`, and `samples` random triples at `max_len`.
pub fn linearity(
    max_len: usize,
    triple_len: usize,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new(
        "linearity",
        &[
            ("max_len", max_len as u64),
            ("triple_len", triple_len as u64),
            ("samples", samples as u64),
            ("seed", seed),
        ],
    );
    let terms = enum_terms(max_len)?;
    report.params.insert("items".into(), terms.len() as u64);

    let mut sorted = terms.clone();
    let sorted_ok = panic::catch_unwind(AssertUnwindSafe(|| sorted.sort_by(compare))).is_ok();
    let mut t = Tally::default();
    t.case(sorted_ok, || "sort_by(compare) panicked".into());
    report.push("sort", t);

    let n = sorted.len();
    let t = sweep(
        n,
        || (),
        |_, i, t| {
            let a = &sorted[i];
            t.case(compare(a, a) == std::cmp::Ordering::Equal, || {
                format!("{} not equal to itself", pt(a))
            });
            for b in &sorted[i + 1..] {
                let ab = compare(a, b);
                let ba = compare(b, a);
                t.case(
                    ab == std::cmp::Ordering::Less && ba == std::cmp::Ordering::Greater,
                    || {
                        format!(
                            "sorted {} before {} but compare gives {ab:?}/{ba:?}",
                            pt(a),
                            pt(b)
                        )
                    },
                );
            }
        },
    );
    report.push("trichotomy", t);

    let small: Vec<OrdinalTerm> = terms
        .iter()
        .filter(|a| length(a) <= triple_len)
        .cloned()
        .collect();
    let m = small.len();
    let less: Vec<Vec<bool>> = small
        .par_iter()
        .map(|a| small.iter().map(|b| lt(a, b)).collect())
        .collect();
    let t = sweep(
        m,
        || (),
        |_, i, t| {
            for j in 0..m {
                for k in 0..m {
                    t.case(!(less[i][j] && less[j][k]) || less[i][k], || {
                        format!(
                            "{} < {} < {} but not {} < {}",
                            pt(&small[i]),
                            pt(&small[j]),
                            pt(&small[k]),
                            pt(&small[i]),
                            pt(&small[k])
                        )
                    });
                }
            }
        },
    );
    report.push("transitivity", t);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    if n > 0 {
        for _ in 0..samples {
            let [a, b, c] = [0; 3].map(|_| &terms[rng.gen_range(0..n)]);
            t.case(!(lt(a, b) && lt(b, c)) || lt(a, c), || {
                format!("{} < {} < {} breaks transitivity", pt(a), pt(b), pt(c))
            });
        }
    }
    report.push("sampled-transitivity", t);
    Ok(report)
}

/// The coefficient-set properties of the notation system, exhaustively over
/// terms with `l ≤ max_len`.
pub fn coefficient_laws(max_len: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new("coefficients", &[("max_len", max_len as u64)]);
    let terms = enum_terms(max_len)?;
    let n = terms.len();
    let w = OrdinalTerm::omega();

    let mut t = Tally::default();
    for a in &terms {
        let ta = OrdinalTerm::theta(a.clone());
        t.case(eps_dominated(a, &ta), || {
            format!("E({}) not below t({})", pt(a), pt(a))
        });
    }
    report.push("e-domination", t);

    let mut t = Tally::default();
    for a in &terms {
        for g in e_parts(a) {
            t.case(leq(&g, a) && length(&g) <= length(a), || {
                format!("{} in E({}) is not below it or is longer", pt(&g), pt(a))
            });
        }
    }
    report.push("e-parts-below", t);

    let t = sweep(
        n,
        || (),
        |_, i, t| {
            let a = &terms[i];
            if !lt(a, &w) {
                return;
            }
            for b in &terms {
                let tb = OrdinalTerm::theta(b.clone());
                t.case(eps_dominated(a, &tb) == lt(a, &tb), || {
                    format!(
                        "alpha={} beta={}: E(alpha)<*t(beta) disagrees with alpha<t(beta)",
                        pt(a),
                        pt(b)
                    )
                });
            }
        },
    );
    report.push("below-omega-equivalence", t);

    let mut t = Tally::default();
    for a in &terms {
        if let TermView::Sum([a0, ..]) = a.view() {
            t.case(lt(a0, a), || format!("head of {} is not below it", pt(a)));
        }
    }
    report.push("head-dominance", t);

    let sums: Vec<&OrdinalTerm> = terms.iter().filter(|a| !a.is_special()).collect();
    let t = sweep(
        sums.len(),
        || (),
        |_, i, t| {
            let TermView::Sum(xs) = sums[i].view() else {
                return;
            };
            for b in &sums {
                let TermView::Sum(ys) = b.view() else {
                    continue;
                };
                if injection_exists(xs.len(), ys.len(), |p, q| leq(&xs[p], &ys[q])) {
                    t.case(leq(sums[i], b), || {
                    format!("entries of {} inject below entries of {} but the sums are ordered the other way", pt(sums[i]), pt(b))
                });
                }
            }
        },
    );
    report.push("injection-monotonicity", t);

    let hereditary =
        |a: &OrdinalTerm, b: &OrdinalTerm| e_parts(a).iter().all(|g| dominates_eps(g, b));
    let t = sweep(
        n,
        || (),
        |_, i, t| {
            let a = &terms[i];
            for b in &terms {
                if leq(a, b) && lt(b, &w) {
                    t.case(hereditary(a, b), || {
                        format!("alpha={} beta={}", pt(a), pt(b))
                    });
                }
            }
        },
    );
    report.push("hereditary-e-monotonicity", t);

    // Without the bound below W the implication must fail somewhere.
    let mut caveat = None;
    'outer: for a in &terms {
        for b in &terms {
            if leq(a, b) && !lt(b, &w) && !hereditary(a, b) {
                caveat = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }
    let mut t = Tally::default();
    t.case(caveat.is_some(), || {
        "no pair alpha<=beta with beta not below W breaks hereditary E-monotonicity".into()
    });
    let c = report.push("hereditary-e-caveat", t);
    if let Some((a, b)) = caveat {
        c.notes
            .push(format!("counterexample: alpha={} beta={}", pt(&a), pt(&b)));
    }
    Ok(report)
}

// Relation matrix rows: bit j of row i says item i relates to item j.
fn relation_rows<T: Sync, S>(
    items: &[T],
    init: impl Fn() -> S + Sync + Send,
    rel: impl Fn(&S, &T, &T) -> bool + Sync + Send,
) -> Vec<Bits> {
    items
        .par_iter()
        .map_init(init, |s, a| {
            let mut row = Bits::empty(items.len());
            for (j, b) in items.iter().enumerate() {
                if rel(s, a, b) {
                    row.set(j);
                }
            }
            row
        })
        .collect()
}

fn partial_order_checks(
    report: &mut SuiteReport,
    prefix: &str,
    rows: &[Bits],
    show: impl Fn(usize) -> String + Sync,
) {
    let n = rows.len();
    let mut t = Tally::default();
    for (i, row) in rows.iter().enumerate() {
        t.case(row.get(i), || format!("{} not related to itself", show(i)));
    }
    report.push(&format!("{prefix}-reflexive"), t);

    let mut t = Tally::default();
    for i in 0..n {
        for j in i + 1..n {
            t.case(!(rows[i].get(j) && rows[j].get(i)), || {
                format!("{} and {} related both ways", show(i), show(j))
            });
        }
    }
    report.push(&format!("{prefix}-antisymmetric"), t);

    // For each i and each j above i, everything above j must be above i.
    let t = sweep(
        n,
        || (),
        |_, i, t| {
            for j in rows[i].ones() {
                t.cases += n as u64 - 1;
                if !rows[j].is_subset(&rows[i]) {
                    let k = rows[j].minus(&rows[i]).ones().next().unwrap();
                    t.cases += 1;
                    t.violations += 1;
                    if t.witnesses.len() < WITNESS_CAP {
                        t.witnesses.push(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            show(i),
                            show(j),
                            show(k),
                            show(i),
                            show(k)
                        ));
                    }
                } else {
                    t.cases += 1;
                }
            }
        },
    );
    let c = report.push(&format!("{prefix}-transitive"), t);
    c.notes
        .push("triples (i, j, k) with i <= j; checked as bitset inclusions".into());
}

/// `⊴` on `T₂` trees of size `≤ max_size`, and `⊴^M` on multisets of total
/// size `≤ multiset_total`.
pub fn gap_trees(max_size: usize, multiset_total: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new(
        "gaptree",
        &[
            ("max_size", max_size as u64),
            ("multiset_total", multiset_total as u64),
        ],
    );
    let trees = enum_trees(2, max_size)?;
    report.params.insert("trees".into(), trees.len() as u64);

    let mut t = Tally::default();
    for tr in &trees {
        let rebuilt = GapTree::node(tr.label().unwrap(), tr.children().to_vec());
        t.case(rebuilt == *tr, || {
            format!("{} is not canonical", print_tree(tr))
        });
    }
    report.push("canonical-storage", t);

    let rows = relation_rows(&trees, t2, |u, s, t| u.tree_leq(s, t));
    partial_order_checks(&mut report, "tree-leq", &rows, |i| print_tree(&trees[i]));

    let mut t = Tally::default();
    for (i, row) in rows.iter().enumerate() {
        for j in row.ones() {
            t.case(height(&trees[i]) <= height(&trees[j]), || {
                format!(
                    "{} <= {} but heights {} > {}",
                    print_tree(&trees[i]),
                    print_tree(&trees[j]),
                    height(&trees[i]),
                    height(&trees[j])
                )
            });
        }
    }
    report.push("height-monotone", t);

    let pool: Vec<(PlainTree, usize)> = enum_trees(2, multiset_total)?
        .into_iter()
        .map(|t| {
            let w = t.size();
            (t, w)
        })
        .collect();
    let mut pool = pool;
    pool.sort();
    let multisets: Vec<TermMultiset<_>> = multisets_up_to(&pool, multiset_total)
        .into_iter()
        .map(TermMultiset::new)
        .collect();
    report
        .params
        .insert("multisets".into(), multisets.len() as u64);
    let rows = relation_rows(&multisets, t2, |u, s, t| u.multiset_leq(s, t));
    partial_order_checks(&mut report, "multiset-leq", &rows, |i| {
        multisets[i].to_string()
    });
    Ok(report)
}

/// `π` is an order isomorphism, the support law, the `κ` equivalence and the
/// support height bound, for `N ∈ {0, 1}` and `X = ∅`.
pub fn pi_laws(max_size: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new("pi-laws", &[("max_size", max_size as u64)]);
    for n in [0u32, 1] {
        let tag = |s: &str| format!("{s}[N={n}]");
        let dom = enum_pi_domain(n, max_size)?;
        let images: Vec<PlainTree> = dom
            .iter()
            .map(|t| pi(t).expect("enumerated payloads have rank <= 0"))
            .collect();
        let target = enum_trees(n + 1, max_size)?;

        let mut t = Tally::default();
        let distinct: HashSet<&PlainTree> = images.iter().collect();
        let target_set: HashSet<&PlainTree> = target.iter().collect();
        t.case(distinct.len() == images.len(), || {
            "pi is not injective".into()
        });
        t.case(distinct == target_set, || {
            "pi images differ from T_{N+1} at this size".into()
        });
        for (d, img) in dom.iter().zip(&images) {
            t.case(pi_inverse(img) == *d, || {
                format!("unshift of {} is not {}", print_tree(img), print_tree(d))
            });
        }
        report.push(&tag("pi-bijective"), t);

        let domain_universe = move || (Universe::plain(n).pi_domain(), Universe::plain(n + 1));
        let t = sweep(dom.len(), domain_universe, |(du, tu), i, t| {
            for j in 0..dom.len() {
                let lhs = du.tree_leq(&dom[i], &dom[j]);
                let rhs = tu.tree_leq(&images[i], &images[j]);
                t.case(lhs == rhs, || {
                    format!(
                        "{} vs {}: domain {lhs}, image {rhs}",
                        print_tree(&dom[i]),
                        print_tree(&dom[j])
                    )
                });
            }
        });
        report.push(&tag("pi-order-isomorphism"), t);

        let rank0: Vec<&PlainTree> = target.iter().filter(|s| rank(s) <= 0).collect();
        let supps: Vec<BTreeSet<PlainTree>> = dom.iter().map(|d| supp(d).unwrap()).collect();
        let t = sweep(
            rank0.len(),
            move || Universe::plain(n + 1),
            |tu, i, t| {
                let s = rank0[i];
                for (j, img) in images.iter().enumerate() {
                    let lhs = tu.tree_leq(s, img);
                    let rhs = supps[j].iter().any(|x| tu.tree_leq(s, x));
                    t.case(lhs == rhs, || {
                        format!("s={} t={}", print_tree(s), print_tree(&dom[j]))
                    });
                }
            },
        );
        report.push(&tag("supp-law"), t);

        let mut t = Tally::default();
        for (j, img) in images.iter().enumerate() {
            for s in &supps[j] {
                t.case(height(s) <= height(img), || {
                    format!("{} in supp({})", print_tree(s), print_tree(&dom[j]))
                });
            }
        }
        report.push(&tag("supp-height"), t);

        let mut pool: Vec<(GapTree<PlainTree>, usize)> = dom
            .iter()
            .zip(&images)
            .map(|(d, i)| (d.clone(), i.size()))
            .collect();
        pool.sort();
        let sigmas: Vec<TermMultiset<PlainTree>> = multisets_up_to(&pool, max_size)
            .into_iter()
            .map(TermMultiset::new)
            .collect();
        let kappas: Vec<PlainTree> = sigmas.iter().map(|s| kappa(s).unwrap()).collect();
        let supp_ms: Vec<BTreeSet<PlainTree>> =
            sigmas.iter().map(|s| supp_multiset(s).unwrap()).collect();
        let mut t = Tally::default();
        for (s, k) in sigmas.iter().zip(&kappas) {
            t.case(rank(k) == 0, || format!("kappa({s}) has rank {}", rank(k)));
        }
        report.push(&tag("kappa-rank"), t);

        let t = sweep(sigmas.len(), domain_universe, |(du, tu), i, t| {
            for j in 0..sigmas.len() {
                let lhs = tu.tree_leq(&kappas[i], &kappas[j]);
                let rhs = du.multiset_leq(&sigmas[i], &sigmas[j])
                    || supp_ms[j].iter().any(|x| tu.tree_leq(&kappas[i], x));
                t.case(lhs == rhs, || {
                    format!("sigma={} tau={}", sigmas[i], sigmas[j])
                });
            }
        });
        let c = report.push(&tag("kappa-law"), t);
        c.notes.push(format!("{} multisets", sigmas.len()));
    }
    Ok(report)
}

/// Order reflection of `f`, `Ē(f(α)) = f[E(α)]`, and the length bound, over
/// all pairs with `l ≤ max_len`; plus `chains` random descending chains whose
/// images must contain no embedded pair.
pub fn embedding(
    max_len: usize,
    chains: usize,
    steps: usize,
    seed: u64,
) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new(
        "embedding",
        &[
            ("max_len", max_len as u64),
            ("chains", chains as u64),
            ("steps", steps as u64),
            ("seed", seed),
        ],
    );
    let terms = enum_terms(max_len)?;
    let images: Vec<PlainTree> = terms.iter().map(embed_term).collect();
    let n = terms.len();
    let max_image = images.iter().map(GapTree::size).max().unwrap_or(0);

    let mut t = Tally::default();
    for a in &terms {
        t.case(
            ebar(&embed_term(a)) == e_parts(a).iter().map(embed_term).collect(),
            || format!("Ebar(f({})) differs from f[E]", pt(a)),
        );
    }
    report.push("ebar-image", t);

    // Each pair is evaluated once; three checks share the embedding result.
    let results: Vec<(Tally, Tally, u64, Option<String>)> = (0..n)
        .into_par_iter()
        .map_init(t2, |u, i| {
            let mut refl = Tally::default();
            let mut lens = Tally::default();
            let mut preservation_failures = 0u64;
            let mut first = None;
            for j in 0..n {
                let embeds = u.tree_leq(&images[i], &images[j]);
                let (a, b) = (&terms[i], &terms[j]);
                refl.case(!embeds || leq(a, b), || {
                    format!("f({}) <| f({}) but not alpha <= beta", pt(a), pt(b))
                });
                lens.case(!embeds || length(a) <= length(b), || {
                    format!(
                        "f({}) <| f({}) but l {} > {}",
                        pt(a),
                        pt(b),
                        length(a),
                        length(b)
                    )
                });
                if !embeds && leq(a, b) {
                    preservation_failures += 1;
                    if first.is_none() {
                        first = Some(format!("{} <= {} but f does not embed", pt(a), pt(b)));
                    }
                }
            }
            (refl, lens, preservation_failures, first)
        })
        .collect();
    let mut refl = Tally::default();
    let mut lens = Tally::default();
    let mut pres = 0u64;
    let mut pres_first = None;
    for (r, l, p, f) in results {
        refl = refl.merge(r);
        lens = lens.merge(l);
        pres += p;
        if pres_first.is_none() {
            pres_first = f;
        }
    }
    let c = report.push("reflection", refl);
    c.notes.push(format!(
        "{} terms, {} pairs, largest image {} nodes",
        n,
        (n as u64).pow(2),
        max_image
    ));
    report.push("length-monotone", lens);

    let mut t = Tally::default();
    let c = report.push("preservation (logged only)", std::mem::take(&mut t));
    c.cases = (n as u64).pow(2);
    c.notes.push(format!(
        "{pres} pairs with alpha <= beta where f(alpha) does not embed into f(beta)"
    ));
    if let Some(f) = pres_first {
        c.notes.push(format!("first: {f}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = t2();
    let mut t = Tally::default();
    let mut longest = 0;
    for _ in 0..chains {
        if n == 0 {
            break;
        }
        let start = &terms[rng.gen_range(0..n)];
        let chain = descent_sampler(start, rng.gen(), steps, 4)?;
        longest = longest.max(chain.len());
        let imgs: Vec<PlainTree> = chain.iter().map(embed_term).collect();
        for i in 0..chain.len() {
            for j in i + 1..chain.len() {
                t.case(
                    lt(&chain[j], &chain[i]) && !u.tree_leq(&imgs[i], &imgs[j]),
                    || {
                        format!(
                            "chain positions {i} < {j}: {} then {}",
                            pt(&chain[i]),
                            pt(&chain[j])
                        )
                    },
                );
            }
        }
    }
    let c = report.push("descending-chain-images-bad", t);
    c.notes.push(format!("longest chain {longest}"));
    Ok(report)
}

/// Coefficient-set laws over triples with each argument of length
/// `≤ arg_len`, the collapse bound over pairs with `l ≤ pair_len`, and the
/// two-sided minimality check for `α` with `l ≤ alpha_len` searching terms with
/// `l ≤ bound`.
pub fn cset(
    arg_len: usize,
    pair_len: usize,
    alpha_len: usize,
    bound: usize,
) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new(
        "cset",
        &[
            ("arg_len", arg_len as u64),
            ("pair_len", pair_len as u64),
            ("alpha_len", alpha_len as u64),
            ("bound", bound as u64),
        ],
    );
    let mut small = enum_terms(arg_len)?;
    small.sort_by(compare);
    let m = small.len();

    let t = sweep(
        m,
        || (),
        |_, i, t| {
            let g = &small[i];
            for a in &small {
                for b in &small {
                    let lhs = c_member(g, a, b);
                    t.case(lhs == e_closure_check(g, a, b), || {
                        format!(
                            "g={} a={} b={}: membership {lhs} disagrees with E-closure",
                            pt(g),
                            pt(a),
                            pt(b)
                        )
                    });
                }
            }
        },
    );
    report.push("e-closure-equivalence", t);

    // `small` is ascending, so monotonicity means membership never drops
    // from true back to false along the scan.
    let t = sweep(
        m,
        || (),
        |_, i, t| {
            let g = &small[i];
            for a in &small {
                let mut seen: Option<&OrdinalTerm> = None;
                for b in &small {
                    let mem = c_member(g, a, b);
                    t.case(seen.is_none() || mem, || {
                        format!(
                            "g={} a={}: member for b={} but not for b={}",
                            pt(g),
                            pt(a),
                            pt(seen.unwrap()),
                            pt(b)
                        )
                    });
                    if mem && seen.is_none() {
                        seen = Some(b);
                    }
                }
            }
        },
    );
    report.push("monotone-in-b", t);

    let t = sweep(
        m,
        || (),
        |_, i, t| {
            let g = &small[i];
            for b in &small {
                let mut seen: Option<&OrdinalTerm> = None;
                for a in &small {
                    let mem = c_member(g, a, b);
                    t.case(seen.is_none() || mem, || {
                        format!(
                            "g={} b={}: member for a={} but not for a={}",
                            pt(g),
                            pt(b),
                            pt(seen.unwrap()),
                            pt(a)
                        )
                    });
                    if mem && seen.is_none() {
                        seen = Some(a);
                    }
                }
            }
        },
    );
    report.push("monotone-in-a", t);

    let t = sweep(
        m,
        || (),
        |_, i, t| {
            let a = &small[i];
            let ta = OrdinalTerm::theta(a.clone());
            for g in &small {
                if !lt(a, g) {
                    continue;
                }
                for d in &small {
                    if c_member(a, g, d) {
                        t.case(c_member(&ta, g, d), || {
                            format!("a={} g={} d={}", pt(a), pt(g), pt(d))
                        });
                    }
                }
            }
        },
    );
    report.push("theta-introduction", t);

    let pairs = enum_terms(pair_len)?;
    let t = sweep(
        pairs.len(),
        || (),
        |_, i, t| {
            let b = &pairs[i];
            for g in &pairs {
                if lt(b, g) {
                    t.case(collapse_monotone_check(b, g) == Ok(true), || {
                        format!("b={} g={}", pt(b), pt(g))
                    });
                }
            }
        },
    );
    report.push("collapse-monotone", t);

    let alphas = enum_terms(alpha_len)?;
    let candidates = enum_terms(bound)?;
    let mut t = Tally::default();
    for a in &alphas {
        let ta = OrdinalTerm::theta(a.clone());
        let r = theta_conditions_among(a, &ta, &candidates);
        t.case(r.satisfied(), || {
            format!(
                "a={}: contains_a={} counterexample={:?}",
                pt(a),
                r.contains_a,
                r.omega_trap_counterexample.as_ref().map(pt)
            )
        });
    }
    report.push("minimality-theta-qualifies", t);

    let t = sweep(
        alphas.len(),
        || (),
        |_, i, t| {
            let a = &alphas[i];
            let ta = OrdinalTerm::theta(a.clone());
            for g in candidates.iter().filter(|g| lt(g, &ta)) {
                let r = theta_conditions_among(a, g, &candidates);
                t.case(!r.satisfied(), || {
                    format!("a={} g={} below t(a) passes both conditions", pt(a), pt(g))
                });
            }
        },
    );
    report.push("minimality-nothing-smaller-qualifies", t);
    Ok(report)
}

/// Arithmetic laws over pairs with `l ≤ max_len` and triples (and Veblen
/// quadruples) with `l ≤ triple_len`.
pub fn arith(max_len: usize, triple_len: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new(
        "arith",
        &[
            ("max_len", max_len as u64),
            ("triple_len", triple_len as u64),
        ],
    );
    let terms = enum_terms(max_len)?;
    let small = enum_terms(triple_len)?;
    let w = OrdinalTerm::omega();
    let z = OrdinalTerm::zero();
    let one = OrdinalTerm::numeral(1);
    let valid = |x: &OrdinalTerm| validate(&x.to_raw()).as_ref() == Ok(x);

    let mut t = Tally::default();
    for a in &terms {
        for r in [omega_mul(a), omega_exp(a), big_omega_mul(a)] {
            t.case(valid(&r), || {
                format!("unary result {} from {} is not a valid term", pt(&r), pt(a))
            });
        }
        for b in &terms {
            let r = add(a, b);
            t.case(valid(&r), || {
                format!("{} + {} = {} is not a valid term", pt(a), pt(b), pt(&r))
            });
            if let Ok(v) = veblen(a, b) {
                t.case(valid(&v), || {
                    format!("veblen({}, {}) invalid", pt(a), pt(b))
                });
            }
        }
    }
    report.push("results-valid", t);

    let mut t = Tally::default();
    for a in &terms {
        t.case(add(&z, a) == *a && add(a, &z) == *a, || {
            format!("0 is not an identity for {}", pt(a))
        });
    }
    report.push("add-identity", t);

    let mut t = Tally::default();
    for a in &small {
        for b in &small {
            let ab = add(a, b);
            for c in &small {
                t.case(add(&ab, c) == add(a, &add(b, c)), || {
                    format!("({} + {}) + {} differs", pt(a), pt(b), pt(c))
                });
            }
        }
    }
    report.push("add-associative", t);

    let mut t = Tally::default();
    for a in &terms {
        for b in &terms {
            t.case(leq(b, &add(a, b)), || {
                format!("{} not below {} + {}", pt(b), pt(a), pt(b))
            });
        }
    }
    report.push("add-right-dominates", t);

    let mut t = Tally::default();
    for a in &small {
        for b in &small {
            for c in &small {
                if lt(b, c) {
                    t.case(lt(&add(a, b), &add(a, c)), || {
                        format!("a={} b={} b'={}", pt(a), pt(b), pt(c))
                    });
                }
            }
        }
    }
    report.push("add-right-strict", t);

    let mut t = Tally::default();
    for a in &terms {
        for b in &terms {
            if lt(a, b) {
                t.case(lt(&omega_mul(a), &omega_mul(b)), || {
                    format!("w*{} not below w*{}", pt(a), pt(b))
                });
            }
        }
    }
    report.push("omega-mul-monotone", t);

    let mut t = Tally::default();
    for a in &terms {
        let wa = omega_mul(a);
        for g in &terms {
            if lt(g, &wa) {
                t.case(lt(&add(g, &one), &wa), || {
                    format!("{} < w*{} but successor is not", pt(g), pt(a))
                });
            }
        }
    }
    report.push("omega-mul-successor", t);

    let mut t = Tally::default();
    for b in &small {
        let eb = omega_exp(b);
        let below: Vec<&OrdinalTerm> = small.iter().filter(|x| lt(x, &eb)).collect();
        for g in &below {
            for d in &below {
                t.case(lt(&add(g, d), &eb), || {
                    format!("{} + {} not below w^{}", pt(g), pt(d), pt(b))
                });
            }
        }
    }
    report.push("omega-exp-additive", t);

    let mut t = Tally::default();
    for a in &terms {
        for b in &terms {
            if lt(a, b) {
                t.case(lt(&big_omega_mul(a), &big_omega_mul(b)), || {
                    format!("W*{} not below W*{}", pt(a), pt(b))
                });
            }
        }
    }
    report.push("big-omega-mul-monotone", t);

    let countable: Vec<&OrdinalTerm> = terms.iter().filter(|x| lt(x, &w)).collect();
    let mut t = Tally::default();
    for a in &countable {
        for b in &countable {
            let v = veblen(a, b).expect("arguments below W");
            t.case(lt(&v, &w), || {
                format!("veblen({}, {}) not below W", pt(a), pt(b))
            });
        }
    }
    report.push("veblen-below-omega", t);

    let small_countable: Vec<&OrdinalTerm> = small.iter().filter(|x| lt(x, &w)).collect();
    let phi = |a: &OrdinalTerm, b: &OrdinalTerm| veblen(a, b).expect("arguments below W");
    let mut t = Tally::default();
    for a in &small_countable {
        for b in &small_countable {
            for c in &small_countable {
                if lt(b, c) {
                    t.case(lt(&phi(a, b), &phi(a, c)), || {
                        format!("a={} b={} b'={}", pt(a), pt(b), pt(c))
                    });
                }
            }
        }
    }
    report.push("veblen-right-monotone", t);

    let sc = &small_countable;
    let t = sweep(
        sc.len(),
        || (),
        |_, i, t| {
            let a = sc[i];
            for a2 in sc.iter().filter(|x| lt(a, x)) {
                for b2 in sc {
                    let rhs = phi(a2, b2);
                    for b in sc.iter().filter(|b| lt(b, &rhs)) {
                        t.case(lt(&phi(a, b), &rhs), || {
                            format!("a={} b={} a'={} b'={}", pt(a), pt(b), pt(a2), pt(b2))
                        });
                    }
                }
            }
        },
    );
    report.push("veblen-left-monotone", t);
    Ok(report)
}

/// Memoized longest bad sequence at `(n, max_size)`, and agreement with the
/// naive search for every size up to `naive_size`.
pub fn bad_sequences(
    n: u32,
    max_size: usize,
    naive_size: usize,
    budget: usize,
) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new(
        "bad-seq",
        &[
            ("n", u64::from(n)),
            ("max_size", max_size as u64),
            ("naive_size", naive_size as u64),
        ],
    );
    let r = longest_bad_sequence(n, max_size, budget)?;
    let u = Universe::plain(n);
    let mut t = Tally::default();
    for i in 0..r.witness.len() {
        for j in i + 1..r.witness.len() {
            t.case(!u.tree_leq(&r.witness[i], &r.witness[j]), || {
                format!("witness positions {i} < {j} form a good pair")
            });
        }
    }
    let c = report.push("witness-is-bad", t);
    c.notes.push(format!(
        "longest bad sequence over {} trees: {} ({} states)",
        r.candidates, r.length, r.states
    ));
    report.params.insert("longest".into(), r.length as u64);

    // A finite partial order listed largest-first is a bad sequence, and no
    // bad sequence repeats a tree, so the answer is the number of trees.
    let mut t = Tally::default();
    t.case(r.length == r.candidates, || {
        format!("longest {} but {} trees", r.length, r.candidates)
    });
    report.push("length-equals-tree-count", t);

    let mut t = Tally::default();
    let mut notes = Vec::new();
    for size in 1..=naive_size {
        let pruned = longest_bad_sequence(n, size, budget)?;
        let naive = longest_bad_sequence_naive(n, size, budget)?;
        t.case(pruned.length == naive.length, || {
            format!(
                "size {size}: pruned {} vs naive {}",
                pruned.length, naive.length
            )
        });
        notes.push(format!(
            "size <= {size}: {} (naive explored {} sequences)",
            naive.length, naive.states
        ));
    }
    let c = report.push("pruned-equals-naive", t);
    c.notes = notes;
    Ok(report)
}

/// Printing then parsing gives back every term with `l ≤ term_len` in both
/// styles and every tree of `T₂` with size `≤ tree_size`.
pub fn roundtrip(term_len: usize, tree_size: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new(
        "roundtrip",
        &[
            ("term_len", term_len as u64),
            ("tree_size", tree_size as u64),
        ],
    );
    let mut t = Tally::default();
    for a in enum_terms(term_len)? {
        for style in [Style::Canonical, Style::Sugar] {
            let text = print_term(&a, style);
            let back = parse_term(&text).ok().and_then(|r| validate(&r).ok());
            t.case(back.as_ref() == Some(&a), || format!("{text} ({style:?})"));
        }
    }
    report.push("terms", t);

    let mut t = Tally::default();
    for tr in enum_trees(2, tree_size)? {
        let text = print_tree(&tr);
        t.case(parse_tree(&text).as_ref() == Ok(&tr), || text);
    }
    report.push("trees", t);

    let mut t = Tally::default();
    for tr in enum_pi_domain(1, tree_size)? {
        let text = print_tree(&tr);
        t.case(parse_domain_tree(&text).as_ref() == Ok(&tr), || text);
    }
    report.push("domain-trees", t);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_pass(r: &SuiteReport) {
        for c in &r.checks {
            assert!(c.passed(), "{} / {}: {:?}", r.suite, c.name, c.witnesses);
            assert!(
                c.cases > 0 || c.name.contains("logged"),
                "{} / {} covered nothing",
                r.suite,
                c.name
            );
        }
    }

    #[test]
    fn small_batteries_pass() {
        assert_pass(&linearity(3, 2, 200, 1).unwrap());
        assert_pass(&coefficient_laws(3).unwrap());
        assert_pass(&gap_trees(3, 3).unwrap());
        assert_pass(&pi_laws(3).unwrap());
        assert_pass(&embedding(3, 4, 10, 1).unwrap());
        assert_pass(&cset(2, 3, 1, 3).unwrap());
        assert_pass(&arith(2, 2).unwrap());
        assert_pass(&bad_sequences(2, 2, 2, 1_000_000).unwrap());
        assert_pass(&roundtrip(3, 3).unwrap());
    }

    #[test]
    fn caveat_witness_recorded() {
        let r = coefficient_laws(2).unwrap();
        let c = r.check("hereditary-e-caveat").unwrap();
        assert!(c.passed());
        assert!(c.notes[0].starts_with("counterexample"));
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(
            linearity(3, 2, 50, 9).unwrap(),
            linearity(3, 2, 50, 9).unwrap()
        );
        assert_eq!(
            embedding(2, 3, 5, 4).unwrap(),
            embedding(2, 3, 5, 4).unwrap()
        );
    }
}
