use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normgraph")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_duality_on_repetition() {
    let o = run(&["check-duality", path(&corpus("rep3.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "C° = C⊥ verified, |C|=2, |C⊥|=4");
}

#[test]
fn minimize_padded_repetition() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("min.json");
    let o = run(&["minimize", path(&corpus("rep3_padded.json")), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("state orders after: [2, 2]"));
    let min = normgraph::format::parse_realization(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(min.state_orders(), vec![2, 2]);

    let again = run(&["minimize", path(&out)]);
    assert!(stdout(&again).contains("reductions: 0"));
}

#[test]
fn minimize_rejects_cycles() {
    let o = run(&["minimize", path(&corpus("tb_rep3.json"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("two-core"));
}

#[test]
fn validate_reports_bad_degree() {
    let o = run(&["validate", path(&corpus("bad_degree.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("state `s`"));
    let ok = run(&["validate", path(&corpus("rep3.json"))]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn other_commands_refuse_invalid_input() {
    let o = run(&["analyze", path(&corpus("bad_degree.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`s`"));
}

#[test]
fn io_and_parse_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["validate", path(&missing)]).status.code(), Some(4));
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{\"alphabets\": ").unwrap();
    assert_eq!(run(&["validate", path(&garbled)]).status.code(), Some(4));
    let priors = dir.path().join("priors.json");
    std::fs::write(&priors, r#"{"a0": [1]}"#).unwrap();
    let o = run(&["decode", path(&corpus("rep3.json")), "--priors", path(&priors), "--exact"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn dual_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("dual.json");
    let twice = dir.path().join("dual2.json");
    let src = corpus("z4_chain.json");
    assert_eq!(run(&["dual", path(&src), "-o", path(&once)]).status.code(), Some(0));
    assert_eq!(run(&["dual", path(&once), "-o", path(&twice)]).status.code(), Some(0));
    let read = |p: &Path| normgraph::format::parse_realization(&std::fs::read_to_string(p).unwrap()).unwrap();
    let code = |r| normgraph::realization::external_behavior(&r).unwrap();
    assert_eq!(code(read(&twice)), code(read(&src)));
    assert_eq!(run(&["check-duality", path(&once)]).status.code(), Some(0));
}

#[test]
fn exact_decode_on_repetition() {
    let o = run(&["decode", path(&corpus("rep3.json")), "--priors", path(&corpus("rep3_priors.json")), "--exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for s in ["a0", "a1", "a2"] {
        assert_eq!(v[s], serde_json::json!(["729/730", "1/730"]));
    }
}

#[test]
fn iterative_decode_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = run(&[
        "decode",
        path(&corpus("tb_rep3.json")),
        "--priors",
        path(&corpus("rep3_priors.json")),
        "--iters",
        "50",
        "--schedule",
        "serial",
        "--damping",
        "0.1",
        "-o",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("iterations:"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for s in ["a0", "a1", "a2"] {
        let p = v[s].as_array().unwrap();
        assert!(p[0].as_f64().unwrap() > 0.99);
        assert!((p[0].as_f64().unwrap() + p[1].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }
    let bad = run(&["decode", path(&corpus("tb_rep3.json")), "--priors", path(&corpus("rep3_priors.json")), "--damping", "1.5"]);
    assert_eq!(bad.status.code(), Some(4));
}

#[test]
fn exact_decode_needs_cycle_free() {
    let o = run(&["decode", path(&corpus("tb_rep3.json")), "--priors", path(&corpus("rep3_priors.json")), "--exact"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn two_core_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let core = dir.path().join("core.json");
    let dot = dir.path().join("g.dot");
    let o = run(&["two-core", path(&corpus("cubic_gf2_seed12.json")), "-o", path(&core), "--emit-graph", path(&dot)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("cyclomatic number: 3"));
    let r = normgraph::format::parse_realization(&std::fs::read_to_string(&core).unwrap()).unwrap();
    assert_eq!(normgraph::graphcore::cyclomatic_number(&r), 3);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph realization {"));
    let empty = run(&["two-core", path(&corpus("rep3.json")), "-o", path(&core)]);
    assert_eq!(empty.status.code(), Some(3));
}

#[test]
fn analyze_reports_and_fragments() {
    let o = run(&["analyze", path(&corpus("tb_rep3.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("internally controllable: no"));
    assert!(text.contains("state-trimness at non-cut edges:"));
    let f = run(&["analyze", path(&corpus("hamming74_trellis.json")), "--fragment", "s3"]);
    assert_eq!(f.status.code(), Some(0));
    assert_eq!(stdout(&f).matches("fragment ").count(), 2);
    let bad = run(&["analyze", path(&corpus("rep3.json")), "--fragment", "zz"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn behavior_prints_generators() {
    let o = run(&["behavior", path(&corpus("rep3.json")), "--external-only"]);
    assert_eq!(stdout(&o), "ambient [a0:GF(2)^1, a1:GF(2)^1, a2:GF(2)^1]\norder 2\n1 1 1\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", "tanner_hamming.json"],
        vec!["two-core", "cubic_gf2_seed11.json"],
        vec!["dual", "z2z4_mixed.json"],
    ] {
        let full: Vec<String> = args.iter().enumerate().map(|(i, a)| if i == 1 { path(&corpus(a)).to_string() } else { a.to_string() }).collect();
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let a = run(&refs);
        let b = run(&refs);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
