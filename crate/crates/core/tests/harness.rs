mod common;

use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use common::random_sets;
use holesat::encoder::{build_instance, HoleProblem, Mode};
use holesat::geometry::canonicalize;
use holesat::harness::{
    abstract_holes, find_executable, run_batch, run_solver, solve_cnf_file, solve_problem, verify_model,
    CheckerConfig, Dialect, HarnessConfig, HarnessError, Job, SolveOptions, SolverConfig, Verdict, Verification,
};
use holesat::holes::{enumerate_gons, enumerate_holes, find_disjoint_tuple, DisjointMode};

fn script(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, format!("#!/bin/sh\n{body}\n")).unwrap();
    std::fs::set_permissions(&p, std::fs::Permissions::from_mode(0o755)).unwrap();
    p
}

fn fake(path: PathBuf, timeout: Duration) -> HarnessConfig {
    HarnessConfig {
        solver: Some(SolverConfig {
            path,
            args: vec!["{cnf}".into()],
            proof_args: vec!["{cnf}".into(), "{proof}".into()],
            dialect: Dialect::Competition,
            timeout,
        }),
        checker: None,
        workers: 1,
    }
}

fn splr_and_rate() -> Option<HarnessConfig> {
    let splr = find_executable("splr")?;
    let rate = find_executable("rate")?;
    Some(HarnessConfig { solver: Some(SolverConfig::preset(splr).unwrap()), checker: Some(CheckerConfig::new(rate)), workers: 2 })
}

fn glucose() -> Option<HarnessConfig> {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scripts/glucose_pysat.py");
    let ok = std::process::Command::new("python3").args(["-c", "import pysat"]).status().is_ok_and(|s| s.success());
    if !ok {
        return None;
    }
    let mut cfg = splr_and_rate()?;
    cfg.solver = Some(SolverConfig::preset(script.canonicalize().ok()?).unwrap());
    Some(cfg)
}

macro_rules! require {
    ($cfg:expr, $what:literal) => {
        match $cfg {
            Some(c) => c,
            None => {
                eprintln!("skipping: {} not installed", $what);
                return;
            }
        }
    };
}

const CHECK: SolveOptions = SolveOptions { proof: true, check: true };

#[test]
fn verdict_model_and_exit_code_must_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("x.cnf");
    std::fs::write(&cnf, "p cnf 2 1\n1 2 0\n").unwrap();
    let cases = [
        ("sat.sh", "echo 's SATISFIABLE'; echo 'v 1 -2 0'; exit 10", Ok(Verdict::Sat)),
        ("unsat.sh", "echo 's UNSATISFIABLE'; exit 20", Ok(Verdict::Unsat)),
        ("unknown.sh", "echo 's UNKNOWN'; exit 0", Ok(Verdict::Unknown)),
        ("liar.sh", "echo 's SATISFIABLE'; echo 'v 1 0'; exit 20", Err("unparsable")),
        ("garbage.sh", "echo hello; exit 0", Err("unparsable")),
        ("crash.sh", "echo boom >&2; exit 3", Err("crash")),
    ];
    for (name, body, want) in cases {
        let cfg = fake(script(dir.path(), name, body), Duration::from_secs(20));
        let got = run_solver(cfg.solver.as_ref().unwrap(), &cnf, None);
        match (got, want) {
            (Ok(run), Ok(v)) => assert_eq!(run.verdict, v, "{name}"),
            (Err(HarnessError::Unparsable(_)), Err("unparsable")) => {}
            (Err(HarnessError::Crash { output, .. }), Err("crash")) => assert!(output.contains("boom")),
            (got, want) => panic!("{name}: got {got:?}, wanted {want:?}"),
        }
    }
}

#[test]
fn timeouts_yield_unknown_and_missing_certificates_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("x.cnf");
    std::fs::write(&cnf, "p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let slow = fake(script(dir.path(), "slow.sh", "sleep 30"), Duration::from_millis(300));
    let run = run_solver(slow.solver.as_ref().unwrap(), &cnf, None).unwrap();
    assert!(run.timed_out);
    assert_eq!(run.verdict, Verdict::Unknown);

    let noproof = fake(script(dir.path(), "np.sh", "echo 's UNSATISFIABLE'; exit 20"), Duration::from_secs(20));
    let proof = dir.path().join("x.drat");
    assert!(matches!(
        run_solver(noproof.solver.as_ref().unwrap(), &cnf, Some(&proof)),
        Err(HarnessError::Crash { .. })
    ));

    let missing = HarnessConfig { solver: None, checker: None, workers: 1 };
    let p = HoleProblem::new(6, Mode::ForbidHole { k: 4 });
    assert!(matches!(
        solve_problem(&p, "m", dir.path(), &missing, SolveOptions::default()),
        Err(HarnessError::SolverMissing(_))
    ));
    let no_checker = fake(script(dir.path(), "u.sh", "exit 20"), Duration::from_secs(20));
    assert!(matches!(solve_problem(&p, "m", dir.path(), &no_checker, CHECK), Err(HarnessError::CheckerMissing(_))));
}

/// A solver that claims SAT with a model violating the clauses is caught
/// before anything is decoded.
#[test]
fn bogus_models_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let p = HoleProblem::new(7, Mode::ForbidHole { k: 4 });
    let n_vars = build_instance(&p).unwrap().num_vars();
    let all_false: Vec<String> = (1..=n_vars).map(|v| format!("-{v}")).collect();
    let body = format!("echo 's SATISFIABLE'; echo 'v {} 0'; exit 10", all_false.join(" "));
    let cfg = fake(script(dir.path(), "bogus.sh", &body), Duration::from_secs(20));
    let report = solve_problem(&p, "bogus", dir.path(), &cfg, SolveOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Sat);
    assert_eq!(report.verification, Verification::Failed);
}

/// The abstract checks on a chirotope agree with hole-analysis on the
/// coordinates that produced it.
#[test]
fn model_verification_agrees_with_hole_analysis() {
    let modes = [
        Mode::ForbidHole { k: 4 },
        Mode::ForbidHole { k: 5 },
        Mode::ForbidGon { k: 5 },
        Mode::CountHoles { k: 4, threshold: 5 },
        Mode::TwoDisjointHoles { k1: 2, k2: 4 },
        Mode::TwoDisjointHoles { k1: 3, k2: 4 },
        Mode::TwoInteriorDisjointHoles { k1: 3, k2: 4 },
        Mode::TwoInteriorDisjointHoles { k1: 4, k2: 4 },
    ];
    for s in random_sets(3, 40, 6..=10, 300) {
        let c = canonicalize(&s).unwrap();
        let sig = c.chirotope();
        let r = &c.relabeled;
        for k in 3..=5 {
            let geo: Vec<Vec<usize>> = enumerate_holes(r, k).into_iter().map(|h| h.indices.to_vec()).collect();
            assert_eq!(abstract_holes(&sig, k), geo);
        }
        for mode in modes {
            let occurs = match mode {
                Mode::ForbidHole { k } => !enumerate_holes(r, k).is_empty(),
                Mode::ForbidGon { k } => !enumerate_gons(r, k).is_empty(),
                Mode::CountHoles { k, threshold } => enumerate_holes(r, k).len() >= threshold,
                Mode::TwoDisjointHoles { k1, k2 } => {
                    find_disjoint_tuple(r, &[k1, k2], DisjointMode::Disjoint).unwrap().is_some()
                }
                Mode::TwoInteriorDisjointHoles { k1, k2 } => {
                    find_disjoint_tuple(r, &[k1, k2], DisjointMode::InteriorDisjoint).unwrap().is_some()
                }
            };
            let verdict = verify_model(&sig, &HoleProblem::new(s.len(), mode));
            assert_eq!(verdict.is_err(), occurs, "{mode:?} on {:?}: {verdict:?}", s.coords());
        }
    }
}

#[test]
fn splr_models_verify_and_rate_accepts_refutations() {
    let cfg = require!(splr_and_rate(), "splr/rate");
    let dir = tempfile::tempdir().unwrap();
    let sat = solve_problem(&HoleProblem::new(9, Mode::ForbidHole { k: 5 }), "h5-9", dir.path(), &cfg, CHECK).unwrap();
    assert_eq!((sat.verdict, sat.verification), (Verdict::Sat, Verification::Passed), "{}", sat.detail);
    let unsat = solve_problem(&HoleProblem::new(10, Mode::ForbidHole { k: 5 }), "h5-10", dir.path(), &cfg, CHECK).unwrap();
    assert_eq!((unsat.verdict, unsat.verification), (Verdict::Unsat, Verification::Passed), "{}", unsat.detail);
    assert!(unsat.certificate_path.as_ref().unwrap().is_file());

    // Re-solving the written file rebuilds the instance from its header.
    let again = solve_cnf_file(&dir.path().join("h5-9.cnf"), &cfg, SolveOptions::default()).unwrap();
    assert_eq!((again.verdict, again.verification), (Verdict::Sat, Verification::Passed));
}

#[test]
fn tampered_certificates_are_rejected() {
    let cfg = require!(splr_and_rate(), "splr/rate");
    let dir = tempfile::tempdir().unwrap();
    let inst = build_instance(&HoleProblem::new(10, Mode::ForbidHole { k: 5 })).unwrap();
    let cnf = dir.path().join("t.cnf");
    inst.write_files(&cnf).unwrap();
    let proof = dir.path().join("t.drat");
    // claims the empty clause straight away
    std::fs::write(&proof, "0\n").unwrap();
    let check = holesat::harness::run_proof_check(cfg.checker.as_ref().unwrap(), &cnf, &proof).unwrap();
    assert!(!check.passed, "{}", check.output);
}

#[test]
fn batches_keep_job_order() {
    let cfg = require!(splr_and_rate(), "splr/rate");
    let dir = tempfile::tempdir().unwrap();
    let jobs: Vec<Job> = [(5, 3, 3), (6, 3, 3), (4, 2, 4), (6, 2, 4)]
        .into_iter()
        .map(|(n, k1, k2)| Job {
            id: format!("d{k1}{k2}-{n}"),
            problem: HoleProblem::new(n, Mode::TwoDisjointHoles { k1, k2 }),
        })
        .collect();
    let out = run_batch(&jobs, dir.path(), &cfg, CHECK);
    let ids: Vec<&str> = out.iter().map(|(id, _)| id.as_str()).collect();
    assert_eq!(ids, ["d33-5", "d33-6", "d24-4", "d24-6"]);
    let verdicts: Vec<Verdict> = out.iter().map(|(_, r)| r.as_ref().unwrap().verdict).collect();
    assert_eq!(verdicts, [Verdict::Sat, Verdict::Unsat, Verdict::Sat, Verdict::Unsat]);
    assert!(out.iter().all(|(_, r)| r.as_ref().unwrap().verification == Verification::Passed));
}

/// Two unrelated solvers reach the same verdicts on the small boundary
/// instances.
#[test]
fn verdicts_are_stable_across_solver_families() {
    let splr = require!(splr_and_rate(), "splr/rate");
    let gluc = require!(glucose(), "python-sat");
    let dir = tempfile::tempdir().unwrap();
    let problems = [
        HoleProblem::new(9, Mode::ForbidHole { k: 5 }),
        HoleProblem::new(10, Mode::ForbidHole { k: 5 }),
        HoleProblem::new(8, Mode::ForbidGon { k: 5 }),
        HoleProblem::new(9, Mode::ForbidGon { k: 5 }),
        HoleProblem::new(6, Mode::TwoDisjointHoles { k1: 3, k2: 4 }),
        HoleProblem::new(7, Mode::TwoDisjointHoles { k1: 3, k2: 4 }),
        HoleProblem::new(6, Mode::TwoInteriorDisjointHoles { k1: 4, k2: 4 }),
        HoleProblem::new(7, Mode::TwoInteriorDisjointHoles { k1: 4, k2: 4 }),
    ];
    for (i, p) in problems.iter().enumerate() {
        let a = solve_problem(p, &format!("a{i}"), dir.path(), &splr, CHECK).unwrap();
        let b = solve_problem(p, &format!("b{i}"), dir.path(), &gluc, CHECK).unwrap();
        assert_eq!(a.verdict, b.verdict, "{p}");
        assert_eq!(a.verification, Verification::Passed, "{p}: {}", a.detail);
        assert_eq!(b.verification, Verification::Passed, "{p}: {}", b.detail);
    }
}
