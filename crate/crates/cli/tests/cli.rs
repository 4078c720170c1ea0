use std::process::{Command, Output};

fn gapord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapord"))
        .args(args)
        .env_remove("GAPORD_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn cmp_collapse_below_omega() {
    let o = gapord(&["cmp", "t(0)", "W"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("<", 0));
}

#[test]
fn check_linearity_small() {
    let o = gapord(&["check", "linearity", "--max-len", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("items=12"));
    assert!(stdout(&o).ends_with("pass"));
}

#[test]
fn gap_condition_blocks() {
    let o = gapord(&["tleq", "--n", "2", "1*[]", "0*[1*[]]"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("false", 0));
}

#[test]
fn label_out_of_range() {
    let o = gapord(&["tleq", "--n", "2", "2*[]", "0*[]"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("LabelOutOfRange"));
}

#[test]
fn parse_errors_exit_2() {
    let o = gapord(&["validate", "t(["]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains('^'));
    assert_eq!(code(&gapord(&["no-such-verb"])), 2);
}

#[test]
fn invalid_terms_exit_1() {
    let o = gapord(&["validate", "[0,W]"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&gapord(&["validate", "[W]"])), 1);
    assert_eq!(code(&gapord(&["veblen", "W", "0"])), 1);
}

#[test]
fn term_verbs() {
    let run = |args: &[&str]| stdout(&gapord(args));
    assert_eq!(run(&["validate", "3"]), "[0,0,0]");
    assert_eq!(run(&["--style", "sugar", "validate", "[[0],0]"]), "[1,0]");
    assert_eq!(run(&["--style", "sugar", "validate", "[[0]]"]), "w");
    assert_eq!(run(&["add", "1", "w"]), "[[0]]");
    assert_eq!(run(&["wmul", "1"]), "[[0]]");
    assert_eq!(run(&["Omul", "W"]), "[[W,W]]");
    assert_eq!(run(&["len", "t(t(0))"]), "2");
    assert_eq!(run(&["eparts", "[t(0),0]"]), "{t(0)}");
    assert_eq!(run(&["embed", "t(0)"]), "0*[1*[0*[]]]");
    assert_eq!(run(&["cset", "t(0)", "0", "0"]), "false");
}

#[test]
fn tree_verbs() {
    let run = |args: &[&str]| stdout(&gapord(args));
    assert_eq!(
        run(&["mleq", "--n", "2", "[0*[],1*[]]", "[1*[],0*[]]"]),
        "true"
    );
    assert_eq!(run(&["pi", "--n", "1", "0*[{0*[]}]"]), "1*[0*[]]");
    assert_eq!(run(&["kappa", "--n", "1", "[{0*[]}]"]), "0*[0*[]]");
    assert_eq!(run(&["ebar", "0*[1*[0*[]]]"]), "{0*[1*[0*[]]]}");
    assert_eq!(run(&["enum-trees", "2", "2"]).lines().count(), 6);
    assert_eq!(run(&["enum-terms", "2"]).lines().count(), 12);
    assert_eq!(run(&["bad-seq", "2", "1"]).lines().next(), Some("2"));
}

#[test]
fn payload_rank_is_a_domain_error() {
    assert_eq!(code(&gapord(&["pi", "--n", "1", "0*[{1*[]}]"])), 1);
}

#[test]
fn json_envelope() {
    let o = gapord(&["--json", "cmp", "W", "t(0)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verb"], "cmp");
    assert_eq!(v["inputs"]["a"], "W");
    assert_eq!(v["result"], ">");
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 0);
}

#[test]
fn budget_is_enforced() {
    let o = gapord(&["--budget", "10", "enum-terms", "4"]);
    assert_eq!(code(&o), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_gapord"))
        .args(["enum-terms", "4"])
        .env("GAPORD_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn out_file_holds_the_envelope() {
    let path = std::env::temp_dir().join(format!("gapord-out-{}.json", std::process::id()));
    let o = gapord(&[
        "--out",
        path.to_str().unwrap(),
        "check",
        "roundtrip",
        "--max-len",
        "2",
        "--max-size",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["result"]["pass"], true);
}
