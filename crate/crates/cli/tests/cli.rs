use std::path::PathBuf;
use std::process::{Command, Output};

use ybgroup::census::canonical_form;
use ybgroup::format::{parse_solution, CensusManifest};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ybg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_n4_example() {
    let o = ybg(&["validate", &fixture("example-n4.sol")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid: non-degenerate, involutive, braided"));
}

#[test]
fn order_compare_klein() {
    let o = ybg(&["order", "compare", &fixture("klein.sol"), "2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "less");
    let o = ybg(&["order", "compare", &fixture("klein.sol"), "-1 2", ""]);
    assert_eq!(stdout(&o).trim(), "less");
    let o = ybg(&["order", "compare", &fixture("klein.sol"), "1 1", "2 2"]);
    assert_eq!(stdout(&o).trim(), "equal");
    let o = ybg(&[
        "order",
        "compare",
        &fixture("klein.sol"),
        "2",
        "1",
        "--lex-perm",
        "2 1",
    ]);
    assert_eq!(stdout(&o).trim(), "greater");
    let o = ybg(&[
        "order",
        "compare",
        &fixture("klein.sol"),
        "2",
        "1",
        "--lex-signs",
        "- +",
    ]);
    assert_eq!(stdout(&o).trim(), "greater");
}

#[test]
fn refusals_exit_one() {
    let o = ybg(&["witness", &fixture("trivial-n3.sol")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("trivial solution: bi-orderable, no generalized torsion"));
    let o = ybg(&["order", "compare", &fixture("example-n4.sol"), "1", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("non-retractable: order oracle not constructed"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sol");
    std::fs::write(&bad, r#"{"n": 2, "f": [[1, 1], [2, 1]]}"#).unwrap();
    let o = ybg(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = ybg(&["validate", "/nonexistent/file.sol"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ybg(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ybg(&["order", "compare", &fixture("klein.sol"), "1", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn axiom_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sol");
    std::fs::write(&bad, r#"{"n": 2, "f": [[1, 2], [1, 2]], "g": [[2, 1], [1, 2]]}"#).unwrap();
    let o = ybg(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not involutive"));
}

#[test]
fn present_and_quotient() {
    let o = ybg(&["present", &fixture("klein.sol")]);
    assert_eq!(stdout(&o), "x_1 x_1 = x_2 x_2\n");
    let o = ybg(&["quotient-w", &fixture("klein.sol")]);
    assert_eq!(stdout(&o).trim(), "m = 2, m^n = 4, verified order = 4");
    let o = ybg(&["quotient-w", &fixture("example-n4.sol"), "--cap", "100"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn witness_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = ybg(&["witness", &fixture("example-n4.sol"), "--out", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = ybg(&["witness-check", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("certificate accepted"));

    let mut json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    json["conjugators"].as_array_mut().unwrap().pop();
    std::fs::write(&cert, json.to_string()).unwrap();
    let o = ybg(&["witness-check", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn up_check_klein() {
    let o = ybg(&[
        "up-check",
        &fixture("klein.sol"),
        "--a",
        "1",
        "--a",
        "2",
        "--b",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("repeated: [1]*[1] has 2 factorizations"));
    assert!(out.contains("unique product: [1]*[2]"));
}

#[test]
fn order_test_is_deterministic() {
    let args = [
        "order",
        "test",
        &fixture("perm-n3.sol"),
        "--seed",
        "42",
        "--samples",
        "200",
    ];
    let a = ybg(&args);
    let b = ybg(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("PASS kernel convexity"));
    assert!(stdout(&a).contains("right invariance violated"));
}

#[test]
fn census_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = ybg(&["census", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n = 3: 5 solutions"));
    let manifest: CensusManifest = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest.total, 5);
    assert_eq!(manifest.entries.len(), 5);
    for entry in &manifest.entries {
        let path = dir.path().join(&entry.file);
        let s = parse_solution(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(canonical_form(&s).unwrap(), s);
        let o = ybg(&["validate", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let o = ybg(&["census", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_reports() {
    let o = ybg(&["classify", &fixture("trivial-n2.sol")]);
    let out = stdout(&o);
    assert!(out.contains("decomposable: {1} | {2}"));
    assert!(out.contains("retractable, level 1"));
    let o = ybg(&["frozen", &fixture("klein.sol")]);
    let out = stdout(&o);
    assert!(out.contains("theta_1 = x_2 x_1"));
    assert!(out.contains("4/4 pass"));
}
