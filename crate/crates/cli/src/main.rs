use std::collections::BTreeSet;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gapord_core::arith::{add, big_omega_mul, omega_exp, omega_mul, veblen};
use gapord_core::audit::{self, SuiteReport};
use gapord_core::cset::{c_member, theta_conditions_among};
use gapord_core::embed::embed_term;
use gapord_core::enumerate::{
    enum_terms_with_budget, enum_trees_with_budget, longest_bad_sequence, DEFAULT_BUDGET,
};
use gapord_core::gaptree::{ebar, kappa, pi, supp, tree_leq, GapError};
use gapord_core::notation::{e_parts, length, validate};
use gapord_core::syntax::{
    parse_domain_multiset, parse_domain_tree, parse_multiset, parse_term, parse_tree, print_term,
    print_tree, Style,
};
use gapord_core::{compare, GapTree, OrdinalTerm, PlainTree, TermMultiset, Universe};
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "gapord",
    version,
    about = "Bachmann-Howard terms and gap-condition trees"
)]
struct Cli {
    /// Emit a JSON envelope instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Item cap for enumerations and searches.
    #[arg(long, global = true, env = "GAPORD_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Also write the JSON envelope to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// How terms are printed.
    #[arg(long, global = true, value_enum, default_value_t = StyleArg::Canonical)]
    style: StyleArg,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Canonical,
    Sugar,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a term.
    Validate {
        term: String,
    },
    /// Compare two terms: prints <, = or >.
    Cmp {
        a: String,
        b: String,
    },
    Add {
        a: String,
        b: String,
    },
    /// w·a
    Wmul {
        a: String,
    },
    /// w^a
    Wexp {
        a: String,
    },
    /// W·a
    #[command(name = "Omul")]
    Omul {
        a: String,
    },
    /// The binary Veblen function on arguments below W.
    Veblen {
        a: String,
        b: String,
    },
    /// E(a), ascending.
    Eparts {
        a: String,
    },
    /// Length l(a).
    Len {
        a: String,
    },
    /// The tree f(a) in T2.
    Embed {
        a: String,
    },
    /// s ⊴ t in T_N.
    Tleq {
        #[arg(long)]
        n: u32,
        s: String,
        t: String,
    },
    /// Multiset relation over ⊴ in T_N.
    Mleq {
        #[arg(long)]
        n: u32,
        s: String,
        t: String,
    },
    /// π of a tree in T_N(T⁰_{N+1}); leaves are written {tree}.
    Pi {
        #[arg(long)]
        n: u32,
        t: String,
    },
    /// κ of a multiset over T_N(T⁰_{N+1}).
    Kappa {
        #[arg(long)]
        n: u32,
        sigma: String,
    },
    /// supp of a tree in T_N(T⁰_{N+1}).
    Supp {
        #[arg(long)]
        n: u32,
        t: String,
    },
    /// Ē of a tree in T2.
    Ebar {
        t: String,
    },
    /// g ∈ C_a(b).
    Cset {
        g: String,
        a: String,
        b: String,
    },
    /// Bounded check of the two conditions that single out t(a).
    ThetaCond {
        #[arg(long, default_value_t = 7)]
        bound: usize,
        a: String,
        g: String,
    },
    /// All terms with l ≤ L.
    EnumTerms {
        max_len: usize,
    },
    /// All trees of T_N with at most S nodes.
    EnumTrees {
        n: u32,
        max_size: usize,
    },
    /// Longest bad sequence over trees of T_N with at most S nodes.
    BadSeq {
        n: u32,
        max_size: usize,
    },
    /// Run an invariant suite.
    Check {
        suite: Suite,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Linearity,
    Coefficients,
    Gaptree,
    PiLaws,
    Embedding,
    Cset,
    Arith,
    BadSeq,
    Roundtrip,
    All,
}

enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Domain(String),
}

struct Outcome {
    text: String,
    result: Value,
    /// False when a checked property was violated.
    pass: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, result: Value) -> Self {
        Outcome {
            text: text.into(),
            result,
            pass: true,
        }
    }
}

struct Ctx {
    style: Style,
    budget: usize,
}

impl Ctx {
    fn show(&self, a: &OrdinalTerm) -> String {
        print_term(a, self.style)
    }
}

fn term(src: &str) -> Result<OrdinalTerm, Failure> {
    let raw = parse_term(src).map_err(|e| Failure::Usage(e.render(src)))?;
    validate(&raw).map_err(|e| Failure::Domain(format!("{src}: {e}")))
}

fn tree(src: &str, n: u32) -> Result<PlainTree, Failure> {
    let t = parse_tree(src).map_err(|e| Failure::Usage(e.render(src)))?;
    Universe::plain(n).admits(&t).map_err(|e| gap(src, e))?;
    Ok(t)
}

fn domain_tree(src: &str, n: u32) -> Result<GapTree<PlainTree>, Failure> {
    let t = parse_domain_tree(src).map_err(|e| Failure::Usage(e.render(src)))?;
    admit_domain(&t, n).map_err(|e| gap(src, e))?;
    Ok(t)
}

fn admit_domain(t: &GapTree<PlainTree>, n: u32) -> Result<(), GapError> {
    Universe::plain(n).pi_domain().admits(t)?;
    let payloads = Universe::plain(n + 1);
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        match t {
            GapTree::Leaf(s) => payloads.admits(s)?,
            GapTree::Node { children, .. } => stack.extend(children.iter()),
        }
    }
    Ok(())
}

fn gap(src: &str, e: GapError) -> Failure {
    let kind = match e {
        GapError::LabelOutOfRange { .. } => "LabelOutOfRange",
        GapError::UniverseMismatch => "UniverseMismatch",
        GapError::PayloadRank { .. } => "PayloadRank",
    };
    Failure::Domain(format!("{kind}: {src}: {e}"))
}

fn tree_set<L: Display>(set: &BTreeSet<GapTree<L>>) -> (String, Value) {
    let items: Vec<String> = set.iter().map(print_tree).collect();
    (format!("{{{}}}", items.join(", ")), json!(items))
}

fn run(cmd: &Cmd, cx: &Ctx) -> Result<Outcome, Failure> {
    Ok(match cmd {
        Cmd::Validate { term: src } => {
            let a = term(src)?;
            let s = cx.show(&a);
            Outcome::ok(s.clone(), json!({ "valid": true, "term": s }))
        }
        Cmd::Cmp { a, b } => {
            let sym = match compare(&term(a)?, &term(b)?) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Outcome::ok(sym, json!(sym))
        }
        Cmd::Add { a, b } => term_result(cx, add(&term(a)?, &term(b)?)),
        Cmd::Wmul { a } => term_result(cx, omega_mul(&term(a)?)),
        Cmd::Wexp { a } => term_result(cx, omega_exp(&term(a)?)),
        Cmd::Omul { a } => term_result(cx, big_omega_mul(&term(a)?)),
        Cmd::Veblen { a, b } => {
            let v = veblen(&term(a)?, &term(b)?).map_err(|e| Failure::Domain(e.to_string()))?;
            term_result(cx, v)
        }
        Cmd::Eparts { a } => {
            let parts: Vec<String> = e_parts(&term(a)?).iter().map(|g| cx.show(g)).collect();
            Outcome::ok(format!("{{{}}}", parts.join(", ")), json!(parts))
        }
        Cmd::Len { a } => {
            let l = length(&term(a)?);
            Outcome::ok(l.to_string(), json!(l))
        }
        Cmd::Embed { a } => {
            let t = print_tree(&embed_term(&term(a)?));
            Outcome::ok(t.clone(), json!(t))
        }
        Cmd::Tleq { n, s, t } => {
            let u = Universe::plain(*n);
            let (s, t) = (tree(s, *n)?, tree(t, *n)?);
            let r = tree_leq((&u, &s), (&u, &t)).map_err(|e| gap("", e))?;
            Outcome::ok(r.to_string(), json!(r))
        }
        Cmd::Mleq { n, s, t } => {
            let u = Universe::plain(*n);
            let parse = |src: &str| -> Result<TermMultiset<_>, Failure> {
                let m = parse_multiset(src).map_err(|e| Failure::Usage(e.render(src)))?;
                m.iter()
                    .try_for_each(|x| u.admits(x))
                    .map_err(|e| gap(src, e))?;
                Ok(m)
            };
            let r = u.multiset_leq(&parse(s)?, &parse(t)?);
            Outcome::ok(r.to_string(), json!(r))
        }
        Cmd::Pi { n, t: src } => {
            let r = pi(&domain_tree(src, *n)?).map_err(|e| gap(src, e))?;
            let s = print_tree(&r);
            Outcome::ok(s.clone(), json!(s))
        }
        Cmd::Kappa { n, sigma } => {
            let m = parse_domain_multiset(sigma).map_err(|e| Failure::Usage(e.render(sigma)))?;
            m.iter()
                .try_for_each(|x| admit_domain(x, *n))
                .map_err(|e| gap(sigma, e))?;
            let r = kappa(&m).map_err(|e| gap(sigma, e))?;
            let s = print_tree(&r);
            Outcome::ok(s.clone(), json!(s))
        }
        Cmd::Supp { n, t: src } => {
            let set = supp(&domain_tree(src, *n)?).map_err(|e| gap(src, e))?;
            let (text, v) = tree_set(&set);
            Outcome::ok(text, v)
        }
        Cmd::Ebar { t } => {
            let (text, v) = tree_set(&ebar(&tree(t, 2)?));
            Outcome::ok(text, v)
        }
        Cmd::Cset { g, a, b } => {
            let r = c_member(&term(g)?, &term(a)?, &term(b)?);
            Outcome::ok(r.to_string(), json!(r))
        }
        Cmd::ThetaCond { bound, a, g } => {
            let (a, g) = (term(a)?, term(g)?);
            let candidates = enum_terms_with_budget(*bound, cx.budget).map_err(domain)?;
            let r = theta_conditions_among(&a, &g, &candidates);
            let trap = r.omega_trap_counterexample.as_ref().map(|d| cx.show(d));
            let text = format!(
                "contains_a: {}\ncounterexample: {}",
                r.contains_a,
                trap.clone().unwrap_or_else(|| "none".into())
            );
            Outcome::ok(
                text,
                json!({ "contains_a": r.contains_a, "omega_trap_counterexample": trap, "searched": candidates.len() }),
            )
        }
        Cmd::EnumTerms { max_len } => {
            let items: Vec<String> = enum_terms_with_budget(*max_len, cx.budget)
                .map_err(domain)?
                .iter()
                .map(|a| cx.show(a))
                .collect();
            Outcome::ok(
                items.join("\n"),
                json!({ "count": items.len(), "items": items }),
            )
        }
        Cmd::EnumTrees { n, max_size } => {
            if *n == 0 {
                return Err(Failure::Usage("enum-trees needs N >= 1".into()));
            }
            let items: Vec<String> = enum_trees_with_budget(*n, *max_size, cx.budget)
                .map_err(domain)?
                .iter()
                .map(print_tree)
                .collect();
            Outcome::ok(
                items.join("\n"),
                json!({ "count": items.len(), "items": items }),
            )
        }
        Cmd::BadSeq { n, max_size } => {
            if *n == 0 {
                return Err(Failure::Usage("bad-seq needs N >= 1".into()));
            }
            let r = longest_bad_sequence(*n, *max_size, cx.budget).map_err(domain)?;
            let witness: Vec<String> = r.witness.iter().map(print_tree).collect();
            Outcome::ok(
                format!("{}\n[{}]", r.length, witness.join(", ")),
                serde_json::to_value(&r).expect("serializable"),
            )
        }
        Cmd::Check {
            suite,
            max_len,
            max_size,
            seed,
        } => check(*suite, *max_len, *max_size, *seed, cx)?,
    })
}

fn term_result(cx: &Ctx, a: OrdinalTerm) -> Outcome {
    let s = cx.show(&a);
    Outcome::ok(s.clone(), json!(s))
}

fn domain(e: impl Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn check(
    suite: Suite,
    max_len: Option<usize>,
    max_size: Option<usize>,
    seed: u64,
    cx: &Ctx,
) -> Result<Outcome, Failure> {
    // Enumerating up front makes the budget a hard cap on every suite.
    let terms = |l: usize| {
        enum_terms_with_budget(l, cx.budget)
            .map(drop)
            .map_err(domain)
    };
    let trees = |s: usize| {
        enum_trees_with_budget(2, s, cx.budget)
            .map(drop)
            .map_err(domain)
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    let all = matches!(suite, Suite::All);
    if all || matches!(suite, Suite::Linearity) {
        let l = max_len.unwrap_or(7);
        terms(l)?;
        reports.push(audit::linearity(l, l.saturating_sub(2), 100_000, seed).map_err(domain)?);
    }
    if all || matches!(suite, Suite::Coefficients) {
        let l = max_len.unwrap_or(6);
        terms(l)?;
        reports.push(audit::coefficient_laws(l).map_err(domain)?);
    }
    if all || matches!(suite, Suite::Gaptree) {
        let s = max_size.unwrap_or(6);
        trees(s)?;
        reports.push(audit::gap_trees(s, s).map_err(domain)?);
    }
    if all || matches!(suite, Suite::PiLaws) {
        let s = max_size.unwrap_or(5);
        trees(s)?;
        reports.push(audit::pi_laws(s).map_err(domain)?);
    }
    if all || matches!(suite, Suite::Embedding) {
        let l = max_len.unwrap_or(6);
        terms(l)?;
        reports.push(audit::embedding(l, 200, 12, seed).map_err(domain)?);
    }
    if all || matches!(suite, Suite::Cset) {
        let l = max_len.unwrap_or(7);
        terms(l)?;
        let (arg, pair, alpha) = (
            l.saturating_sub(3),
            l.saturating_sub(1),
            l.saturating_sub(4),
        );
        reports.push(audit::cset(arg, pair, alpha, l).map_err(domain)?);
    }
    if all || matches!(suite, Suite::Arith) {
        let l = max_len.unwrap_or(4);
        terms(l)?;
        reports.push(audit::arith(l, l.saturating_sub(1)).map_err(domain)?);
    }
    if all || matches!(suite, Suite::BadSeq) {
        let s = max_size.unwrap_or(4);
        reports.push(audit::bad_sequences(2, s, s.min(3), cx.budget).map_err(domain)?);
    }
    if all || matches!(suite, Suite::Roundtrip) {
        let (l, s) = (max_len.unwrap_or(6), max_size.unwrap_or(5));
        terms(l)?;
        trees(s)?;
        reports.push(audit::roundtrip(l, s).map_err(domain)?);
    }

    let mut text = Vec::new();
    for r in &reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        text.push(format!("{} [{}]", r.suite, params.join(" ")));
        for c in &r.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            text.push(format!(
                "  {mark} {} ({} cases, {} violations)",
                c.name, c.cases, c.violations
            ));
            for w in &c.witnesses {
                text.push(format!("       witness: {w}"));
            }
            for n in &c.notes {
                text.push(format!("       note: {n}"));
            }
        }
    }
    let pass = reports.iter().all(SuiteReport::passed);
    text.push(if pass { "pass".into() } else { "FAIL".into() });
    Ok(Outcome {
        text: text.join("\n"),
        result: json!({ "pass": pass, "reports": reports }),
        pass,
    })
}

fn verb(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Validate { .. } => "validate",
        Cmd::Cmp { .. } => "cmp",
        Cmd::Add { .. } => "add",
        Cmd::Wmul { .. } => "wmul",
        Cmd::Wexp { .. } => "wexp",
        Cmd::Omul { .. } => "Omul",
        Cmd::Veblen { .. } => "veblen",
        Cmd::Eparts { .. } => "eparts",
        Cmd::Len { .. } => "len",
        Cmd::Embed { .. } => "embed",
        Cmd::Tleq { .. } => "tleq",
        Cmd::Mleq { .. } => "mleq",
        Cmd::Pi { .. } => "pi",
        Cmd::Kappa { .. } => "kappa",
        Cmd::Supp { .. } => "supp",
        Cmd::Ebar { .. } => "ebar",
        Cmd::Cset { .. } => "cset",
        Cmd::ThetaCond { .. } => "theta-cond",
        Cmd::EnumTerms { .. } => "enum-terms",
        Cmd::EnumTrees { .. } => "enum-trees",
        Cmd::BadSeq { .. } => "bad-seq",
        Cmd::Check { .. } => "check",
    }
}

fn inputs(cmd: &Cmd) -> Value {
    match cmd {
        Cmd::Validate { term } => json!({ "term": term }),
        Cmd::Cmp { a, b } | Cmd::Add { a, b } | Cmd::Veblen { a, b } => json!({ "a": a, "b": b }),
        Cmd::Wmul { a }
        | Cmd::Wexp { a }
        | Cmd::Omul { a }
        | Cmd::Eparts { a }
        | Cmd::Len { a }
        | Cmd::Embed { a } => {
            json!({ "a": a })
        }
        Cmd::Tleq { n, s, t } | Cmd::Mleq { n, s, t } => json!({ "n": n, "s": s, "t": t }),
        Cmd::Pi { n, t } | Cmd::Supp { n, t } => json!({ "n": n, "t": t }),
        Cmd::Kappa { n, sigma } => json!({ "n": n, "sigma": sigma }),
        Cmd::Ebar { t } => json!({ "t": t }),
        Cmd::Cset { g, a, b } => json!({ "g": g, "a": a, "b": b }),
        Cmd::ThetaCond { bound, a, g } => json!({ "bound": bound, "a": a, "g": g }),
        Cmd::EnumTerms { max_len } => json!({ "max_len": max_len }),
        Cmd::EnumTrees { n, max_size } | Cmd::BadSeq { n, max_size } => {
            json!({ "n": n, "max_size": max_size })
        }
        Cmd::Check {
            suite,
            max_len,
            max_size,
            seed,
        } => json!({
            "suite": suite.to_possible_value().map(|v| v.get_name().to_string()),
            "max_len": max_len,
            "max_size": max_size,
            "seed": seed,
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cx = Ctx {
        style: match cli.style {
            StyleArg::Canonical => Style::Canonical,
            StyleArg::Sugar => Style::Sugar,
        },
        budget: cli.budget,
    };
    let outcome = run(&cli.cmd, &cx);
    let (code, result, diagnostics) = match &outcome {
        Ok(o) => (u8::from(!o.pass), o.result.clone(), Vec::<String>::new()),
        Err(Failure::Usage(m)) => (2, Value::Null, vec![m.clone()]),
        Err(Failure::Domain(m)) => (1, Value::Null, vec![m.clone()]),
    };
    let envelope = json!({
        "schema_version": SCHEMA_VERSION,
        "verb": verb(&cli.cmd),
        "inputs": inputs(&cli.cmd),
        "result": result,
        "diagnostics": diagnostics,
    });
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&envelope).expect("serializable")
        );
    } else {
        match &outcome {
            Ok(o) => {
                if !o.text.is_empty() {
                    println!("{}", o.text);
                }
            }
            Err(_) => {
                for d in &diagnostics {
                    eprintln!("error: {d}");
                }
            }
        }
    }
    if let Some(path) = &cli.out {
        let body = serde_json::to_string_pretty(&envelope).expect("serializable");
        if let Err(e) = std::fs::write(path, body + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
