use std::path::Path;
use std::process::{Command, Output};

fn oscalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscalc"))
        .args(args)
        .env_remove("OSCALC_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn snapshot(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/snapshots")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn catalog_commands() {
    let o = oscalc(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in [
        "wheel3",
        "yuz8",
        "nonfano",
        "x2",
        "k33graphic",
        "k33dual",
        "k33dual-trunc",
        "boolean:4",
        "uniform:3,5",
    ] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
    let show = oscalc(&["catalog", "show", "wheel3"]);
    assert!(stdout(&show).contains("lines: 1 2 3 / 1 5 6 / 3 4 5\n"));
    assert_eq!(
        oscalc(&["catalog", "show", "nothing"]).status.code(),
        Some(1)
    );
}

#[test]
fn analyze_snapshots() {
    let o = oscalc(&["analyze", "wheel3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), snapshot("wheel3.txt"));

    let o = oscalc(&["analyze", "yuz8", "--json"]);
    let json = stdout(&o);
    assert_eq!(json, snapshot("yuz8.json"));
    assert!(json.contains("\"phi3\": 16"));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["os"]["dims_a"][3], 14);
    assert_eq!(v["os"]["dims_abar"]["2"][3], 16);
    assert_eq!(v["os"]["line_closed"], true);
    assert_eq!(v["os"]["quadratic"], false);

    let o = oscalc(&["analyze", "x2", "--all-orders", "--r", "3"]);
    assert_eq!(stdout(&o), snapshot("x2.txt"));
}

#[test]
fn concurrent_targets_keep_their_order() {
    let targets = ["x2", "wheel3", "boolean:3", "yuz8", "nonfano"];
    let mut args = vec!["analyze", "--json"];
    args.extend(targets);
    let first = stdout(&oscalc(&args));
    assert_eq!(first, stdout(&oscalc(&args)));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, targets);
}

#[test]
fn orders_and_fields() {
    let o = oscalc(&["nbb", "wheel3", "--order", "2,1,3,4,5,6"]);
    assert_eq!(stdout(&o), "214\n215\n216\n234\n235\n236\n246\n");
    let o = oscalc(&["nbc", "wheel3"]);
    assert_eq!(stdout(&o), "124\n125\n126\n134\n135\n136\n146\n");
    let o = oscalc(&["analyze", "yuz8", "--field", "gf:32003", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"field\": \"GF(32003)\""));
    let o = oscalc(&[
        "analyze",
        "wheel3",
        "--order",
        "6,5,4,3,2,1",
        "--order",
        "1,2,3,4,5,6",
    ]);
    assert!(stdout(&o).contains("order 6,5,4,3,2,1:\n"));
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        &["analyze", "no-such-thing"][..],
        &["analyze", "wheel3", "--order", "1,2"],
        &["analyze", "wheel3", "--field", "gf:4"],
        &["nbc", "wheel3", "--order", "1,1,2,3,4,5"],
        &["formal", "wheel3"],
        &["frobnicate"],
    ] {
        let o = oscalc(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    std::fs::write(
        &path,
        "name: broken\nn: 5\npresentation: lines\n\nlines: 1 2 3 / 3 4 7\n",
    )
    .unwrap();
    let o = oscalc(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
}

#[test]
fn enumeration_guard() {
    let o = oscalc(&["nbc", "boolean:15"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("limit 14"));
    let o = Command::new(env!("CARGO_BIN_EXE_oscalc"))
        .args(["nbc", "boolean:15"])
        .env("OSCALC_MAX_N", "15")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1.2.3.4.5.6.7.8.9.10.11.12.13.14.15\n");
}

#[test]
fn files_and_formalization() {
    let dir = tempfile::tempdir().unwrap();
    let x2 = dir.path().join("x2.txt");
    std::fs::write(&x2, stdout(&oscalc(&["catalog", "show", "x2"]))).unwrap();
    let o = oscalc(&["formal", x2.to_str().unwrap()]);
    assert_eq!(stdout(&o), "dim K: 4\ndim F: 4\nformal: yes\n");

    let section = dir.path().join("section.txt");
    std::fs::write(
        &section,
        stdout(&oscalc(&["catalog", "show", "k33dual-trunc"])),
    )
    .unwrap();
    let out = dir.path().join("formalization.txt");
    let o = oscalc(&[
        "formal",
        section.to_str().unwrap(),
        "--emit-formalization",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("formal: no\n"));
    assert!(stdout(&o).contains("formalization rank: 4\n"));
    let o = oscalc(&["formal", out.to_str().unwrap()]);
    assert!(stdout(&o).contains("formal: yes\n"));
    let o = oscalc(&["analyze", out.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["name"], "k33dual-trunc-formalization");
    assert_eq!(v["os"]["rank"], 4);
}
