use std::process::Command;

use holesat::cli::run_command;
use holesat::harness::find_executable;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("holesat").chain(args.iter().copied());
    let code = run_command(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn encode_reports_sizes_and_groups() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("p.cnf");
    let (code, text) = run(&["encode", "--n", "17", "--paper-faithful", "--hints", "-o", cnf.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("variables: 23392"), "{text}");
    assert!(text.contains("group 6 three-holes:"));
    assert!(text.contains("group 8 forbid: 742832"));
}

#[test]
fn encode_writes_dimacs_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("h.cnf");
    let (code, _) = run(&["encode", "--n", "8", "--mode", "forbid-hole", "--sizes", "5", "-o", cnf.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.lines().any(|l| l.starts_with("p cnf ")));
    assert!(holesat::encoder::sidecar_path(&cnf).is_file());
}

#[test]
fn witness_sets_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fig2.pts");
    assert_eq!(run(&["construct", "fig2-n16", "-o", f.to_str().unwrap()]).0, 0);
    let path = f.to_str().unwrap();
    let (code, text) = run(&["verify-witness", path, "--no-disjoint-holes", "5,5", "--has-hole", "5"]);
    assert_eq!(code, 0, "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2);

    // fig2 has 6-holes, so asking for none must fail with exit code 1
    let (code, text) = run(&["verify-witness", path, "--no-holes", "5"]);
    assert_eq!(code, 1, "{text}");
    assert!(text.starts_with("FAIL"));
}

#[test]
fn constructions_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("dc.pts");
    assert_eq!(run(&["construct", "double-circle", "--n", "10", "-o", f.to_str().unwrap()]).0, 0);
    let (code, text) = run(&["count-holes", f.to_str().unwrap(), "--disjoint", "2,4,4"]);
    assert_eq!(code, 0);
    assert!(text.trim_end().ends_with(": 0"), "{text}");
    let (_, text) = run(&["count-holes", f.to_str().unwrap(), "--disjoint", "4,4"]);
    assert!(!text.trim_end().ends_with(": 0"), "{text}");
    let (code, text) = run(&["count-holes", f.to_str().unwrap(), "--k", "3", "--list"]);
    assert_eq!(code, 0);
    let count: usize = text.lines().next().unwrap().trim_start_matches("3-holes: ").parse().unwrap();
    assert_eq!(text.lines().count(), count + 1);
    assert_eq!(run(&["construct", "double-circle"]).0, 2);
    assert_eq!(run(&["construct", "nonsense", "--n", "5"]).0, 2);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("x.cnf");
    let o = cnf.to_str().unwrap();
    assert_eq!(run(&["encode", "--n", "9", "--mode", "forbid-hole", "--sizes", "5,5", "-o", o]).0, 2);
    assert_eq!(run(&["encode", "--n", "9", "--mode", "no-such-mode", "-o", o]).0, 2);
    assert!(!cnf.exists());
    assert_eq!(run(&["count-holes", "/definitely/missing.pts", "--k", "4"]).0, 2);
    assert_eq!(run(&["recipe", "h55-full"]).0, 2);
    assert_eq!(run(&["recipe", "no-such-recipe"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn search_reports_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.pts");
    let (code, text) = run(&[
        "search", "--n", "8", "--objective", "gons:5", "--seed", "1", "--restarts", "2", "--workers", "1",
        "--budget", "20000", "-o", f.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{text}");
    let (code, _) = run(&["verify-witness", f.to_str().unwrap(), "--no-gons", "5"]);
    assert_eq!(code, 0);
}

#[test]
fn solve_with_expectation() {
    if find_executable("splr").is_none() || find_executable("rate").is_none() {
        eprintln!("skipping: splr/rate not installed");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let wd = dir.path().to_str().unwrap();
    let base = ["solve", "--mode", "forbid-hole", "--sizes", "5", "--workdir", wd, "--solver", "splr"];
    let with = |extra: &[&str]| {
        let mut v = base.to_vec();
        v.extend_from_slice(extra);
        run(&v)
    };
    let (code, text) = with(&["--n", "10", "--check", "--expect", "unsat"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("UNSAT"));
    assert_eq!(with(&["--n", "9", "--expect", "unsat"]).0, 1);
    let (code, text) = with(&["--n", "9", "--expect", "sat", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "SAT");
    assert_eq!(v["verification"], "passed");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_holesat");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["recipe", "list"]), Some(0));
    assert_eq!(status(&["encode", "--n", "2", "--mode", "forbid-hole", "--sizes", "5", "-o", "/tmp/never.cnf"]), Some(2));
    let out = Command::new(bin).args(["construct", "fig6-n14"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().filter(|l| !l.trim().is_empty()).count(), 14);
}
