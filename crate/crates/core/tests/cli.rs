use std::fs;
use std::path::Path;

use proptest::prelude::*;
use qdom::cli::{read_records, run, ResultRecord};
use qdom::solver::feasible;
use qdom::text::{format_placement, read_placement, write_placement};
use qdom::{BoardGeometry, Placement, Variant};

fn qdom(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qdom").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn verify_center_queen() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("center3.txt");
    fs::write(&path, "N=3\n2,2\n").unwrap();
    let (code, out, _) = qdom(&["verify", "--placement", p(&path), "--variant", "connected"]);
    assert_eq!(code, 0);
    assert!(out.contains("dominating: yes, connected: yes"), "{out}");
}

#[test]
fn verify_rejects_non_dominating() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corner.txt");
    fs::write(&path, "N=4\n1,1\n").unwrap();
    let (code, out, _) = qdom(&["verify", "--placement", p(&path), "--variant", "simple"]);
    assert_eq!(code, 1);
    assert!(out.contains("dominating: no"));
}

#[test]
fn solve_writes_witness_and_record() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.txt");
    let cache = dir.path().join("ledger.jsonl");
    let args = [
        "solve",
        "--n",
        "4",
        "--variant",
        "simple",
        "--method",
        "exhaustive",
        "--out",
        p(&witness),
        "--cache",
        p(&cache),
    ];
    let (code, out, _) = qdom(&args);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("value=2"));
    let w = read_placement(&witness).unwrap();
    assert_eq!(w.n_q(), 2);
    assert!(feasible(&w, Variant::Simple));

    qdom(&args);
    let records = read_records(&cache).unwrap();
    assert_eq!(records.len(), 2);
    let r: &ResultRecord = &records[0];
    assert_eq!((r.n, r.value, r.lb, r.ub), (4, Some(2), 2, Some(4)));
    assert_eq!(r.method, "exhaustive");
    assert_eq!(r.placement.len(), 2);
}

#[test]
fn ledger_lines_are_standalone_json() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("scan.jsonl");
    let (code, _, _) = qdom(&[
        "scan",
        "--n-min",
        "2",
        "--n-max",
        "5",
        "--variant",
        "simple,connected,kcolored",
        "--k",
        "2",
        "--cache",
        p(&cache),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&cache).unwrap();
    assert!(text.ends_with('\n'));
    assert_eq!(text.lines().count(), 12);
    for line in text.lines() {
        let r: ResultRecord = serde_json::from_str(line).unwrap();
        let v = r.value.unwrap();
        assert!(r.lb <= v && v <= r.ub.unwrap(), "{line}");
    }
}

#[test]
fn scan_reports_infeasible_total() {
    let (code, out, _) = qdom(&["scan", "--n-min", "1", "--n-max", "2", "--variant", "total"]);
    assert_eq!(code, 1);
    assert!(out.contains("no placement"));
    assert!(out.contains("n=2 variant=total value=2"));
}

#[test]
fn solve_too_large_falls_back_to_bounds() {
    let (code, out, _) = qdom(&["solve", "--n", "12", "--variant", "connected"]);
    assert_eq!(code, 2);
    assert!(out.contains("bounds only"));
    assert!(out.contains("connected  n=12"));
}

#[test]
fn partial_solve_exits_one() {
    let (code, out, _) = qdom(&[
        "solve",
        "--n",
        "8",
        "--variant",
        "connected",
        "--node-limit",
        "10",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("\"proven_optimal\":false"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "N=5\n# comment\n1,1\n\n7,2\n").unwrap();
    let (code, _, err) = qdom(&["analyze", "--placement", p(&path)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5"), "{err}");

    fs::write(&path, "N=5\n1,x\n").unwrap();
    let (code, _, err) = qdom(&["verify", "--placement", p(&path), "--variant", "simple"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn analyze_degenerate_is_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("full.txt");
    // every column occupied
    fs::write(&path, "N=4\n1,1\n2,1\n3,4\n4,4\n").unwrap();
    let (code, out, _) = qdom(&["analyze", "--placement", p(&path)]);
    assert_eq!(code, 0);
    assert!(out.contains("not applicable"), "{out}");
    assert!(out.contains("1,1-2,1"), "{out}");
}

#[test]
fn analyze_reports_inequalities() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    assert_eq!(qdom(&["construct", "--n", "12", "--out", p(&path)]).0, 0);
    let (code, out, _) = qdom(&["analyze", "--placement", p(&path)]);
    assert_eq!(code, 0);
    for label in [
        "(  I)",
        "( II)",
        "(III)",
        "( IV)",
        "(  V)",
        "commonality:",
        "edges:",
    ] {
        assert!(out.contains(label), "missing {label}");
    }
    let json = out.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["inequalities"].as_array().unwrap().len(), 5);
}

fn placement_strategy() -> impl Strategy<Value = Placement> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::btree_set(0..n * n, 0..=n)
            .prop_map(move |idx| Placement::from_indices(BoardGeometry::new(n).unwrap(), idx))
    })
}

fn variant_strategy() -> impl Strategy<Value = Variant> {
    prop_oneof![
        Just(Variant::Simple),
        Just(Variant::Connected),
        Just(Variant::Total),
        (1usize..=3).prop_map(Variant::Kcolored),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn written_placements_read_back(pl in placement_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.txt");
        write_placement(&path, &pl).unwrap();
        prop_assert_eq!(read_placement(&path).unwrap(), pl);
    }

    #[test]
    fn verify_agrees_with_feasible(pl in placement_strategy(), v in variant_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.txt");
        fs::write(&path, format_placement(&pl)).unwrap();
        let k = v.k().map(|k| k.to_string());
        let mut args = vec!["verify", "--placement", p(&path), "--variant", v.name()];
        if let Some(k) = &k {
            args.extend(["--k", k.as_str()]);
        }
        let (code, _, _) = qdom(&args);
        prop_assert_eq!(code == 0, feasible(&pl, v));
    }
}
