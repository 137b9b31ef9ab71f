//! Acceptance suite. Runs every criterion and prints one PASS/FAIL line per
//! criterion; exits non-zero if any fails.
//!
//! The long solver runs (criterion 9) are opt-in: set `HOLESAT_LONG=1` or
//! pass `--include-ignored`.

mod common;

use std::collections::HashMap;
use std::path::Path;
use std::time::{Duration, Instant};

use common::{brute_hole, ccw_hull, closed_hulls_meet, convex_position, open_hulls_meet, random_sets, subsets};
use holesat::cli::{run_recipe, RecipeOptions};
use holesat::encoder::{
    build_instance, evaluate, full_assignment, ClauseGroup, CnfInstance, Encoding, HoleProblem, Mode,
};
use holesat::geometry::{canonicalize, PointSet};
use holesat::harness::{solve_problem, HarnessConfig, SolveOptions, Verdict, Verification};
use holesat::holes::{
    enumerate_holes, find_disjoint_tuple, generate_double_circle, generate_two_ring, witness, DisjointMode,
};
use holesat::search::{search, SearchObjective, SearchParams};

type Outcome = Result<String, String>;
type Criterion<'a> = (usize, &'static str, Box<dyn Fn() -> Outcome + 'a>);

const CHECKED: SolveOptions = SolveOptions { proof: true, check: true };

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, format!("{what} took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

fn solvers() -> Result<HarnessConfig, String> {
    let cfg = HarnessConfig::from_env().map_err(|e| e.to_string())?;
    cfg.require_solver().map_err(|e| e.to_string())?;
    cfg.require_checker().map_err(|e| e.to_string())?;
    Ok(cfg)
}

/// Solves and demands the expected verdict with a passed verification:
/// a verified model for SAT, an accepted certificate for UNSAT.
fn expect(p: &HoleProblem, want: Verdict, dir: &Path, cfg: &HarnessConfig) -> Result<f64, String> {
    let id = format!("{}-{}-n{}", p.mode.name(), p.mode.sizes().iter().map(|k| k.to_string()).collect::<String>(), p.n);
    let r = solve_problem(p, &id, dir, cfg, CHECKED).map_err(|e| format!("{p}: {e}"))?;
    ensure(r.verdict == want, format!("{p}: expected {want}, got {}", r.verdict))?;
    ensure(r.verification == Verification::Passed, format!("{p}: verification {:?}: {}", r.verification, r.detail))?;
    Ok(r.wall_time_secs)
}

/// SAT one below the value, UNSAT at it.
fn boundary(mode: Mode, value: usize, limit: Duration, dir: &Path, cfg: &HarnessConfig) -> Result<(), String> {
    let start = Instant::now();
    expect(&HoleProblem::new(value - 1, mode), Verdict::Sat, dir, cfg)?;
    expect(&HoleProblem::new(value, mode), Verdict::Unsat, dir, cfg)?;
    within(start, limit, &format!("{mode:?} at {value}"))
}

fn c1_instance_size() -> Outcome {
    let start = Instant::now();
    let p = HoleProblem::new(17, Mode::TwoDisjointHoles { k1: 5, k2: 5 })
        .with_encoding(Encoding::PaperFaithful)
        .with_hints(true);
    let inst = build_instance(&p).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(60), "build")?;
    ensure(inst.num_vars() == 23_392, format!("{} variables", inst.num_vars()))?;
    let gap = (inst.num_clauses() as f64 - 825_689.0) / 825_689.0;
    ensure(gap.abs() <= 0.15, format!("{} clauses ({:+.1}%)", inst.num_clauses(), gap * 100.0))?;
    Ok(format!(
        "23392 variables, {} clauses ({:+.1}% against 825689), built in {:.1}s",
        inst.num_clauses(),
        gap * 100.0,
        start.elapsed().as_secs_f64()
    ))
}

fn c2_harborth(dir: &Path) -> Outcome {
    let cfg = solvers()?;
    let minute = Duration::from_secs(60);
    let sat = expect(&HoleProblem::new(9, Mode::ForbidHole { k: 5 }), Verdict::Sat, dir, &cfg)?;
    let unsat = expect(&HoleProblem::new(10, Mode::ForbidHole { k: 5 }), Verdict::Unsat, dir, &cfg)?;
    ensure(sat < 60.0 && unsat < 60.0, format!("solve times {sat:.1}s / {unsat:.1}s exceed {minute:?}"))?;
    Ok(format!("n=9 SAT ({sat:.2}s), n=10 UNSAT with accepted certificate ({unsat:.2}s)"))
}

fn c3_disjoint_table(dir: &Path) -> Outcome {
    let cfg = solvers()?;
    let table = [(3, 3, 6), (2, 4, 6), (3, 4, 7), (4, 4, 9), (2, 5, 10), (3, 5, 10), (4, 5, 12)];
    for (k1, k2, h) in table {
        boundary(Mode::TwoDisjointHoles { k1, k2 }, h, Duration::from_secs(600), dir, &cfg)?;
    }
    Ok(format!("{} boundaries SAT at n-1 and UNSAT at n", table.len()))
}

fn c4_interior_table(dir: &Path) -> Outcome {
    let cfg = solvers()?;
    let table = [(3, 3, 4), (3, 4, 5), (4, 4, 7), (3, 5, 10), (4, 5, 10)];
    for (k1, k2, h) in table {
        boundary(Mode::TwoInteriorDisjointHoles { k1, k2 }, h, Duration::from_secs(600), dir, &cfg)?;
    }
    Ok(format!("{} boundaries SAT at n-1 and UNSAT at n", table.len()))
}

/// `k`-holes by brute force over coordinates.
fn brute_holes(s: &PointSet, k: usize) -> Vec<Vec<usize>> {
    let c = s.coords();
    subsets(s.len(), k).into_iter().filter(|x| brute_hole(&c, x)).collect()
}

fn c5_witnesses() -> Outcome {
    let start = Instant::now();
    let get = |name: &str| witness(name).map_err(|e| e.to_string());

    let fig2 = get("fig2-n16")?;
    let c = fig2.coords();
    let h = brute_holes(&fig2, 5);
    ensure(!h.is_empty(), "fig2 has no 5-hole")?;
    let pair = (0..h.len()).any(|i| (i + 1..h.len()).any(|j| !closed_hulls_meet(&c, &h[i], &h[j])));
    ensure(!pair, "fig2 has two disjoint 5-holes")?;
    ensure(find_disjoint_tuple(&fig2, &[5, 5], DisjointMode::Disjoint).unwrap().is_none(), "library disagrees on fig2")?;

    let fig4 = get("fig4-n21")?;
    let c = fig4.coords();
    let h = brute_holes(&fig4, 5);
    let apart: Vec<Vec<bool>> =
        h.iter().map(|x| h.iter().map(|y| !closed_hulls_meet(&c, x, y)).collect()).collect();
    let triple = (0..h.len()).any(|i| {
        (i + 1..h.len()).any(|j| apart[i][j] && (j + 1..h.len()).any(|k| apart[i][k] && apart[j][k]))
    });
    ensure(!triple, "fig4 has three pairwise disjoint 5-holes")?;
    ensure(
        find_disjoint_tuple(&fig4, &[5, 5, 5], DisjointMode::Disjoint).unwrap().is_none(),
        "library disagrees on fig4",
    )?;

    let fig6 = get("fig6-n14")?;
    let c = fig6.coords();
    let h = brute_holes(&fig6, 5);
    let pair = (0..h.len()).any(|i| (i + 1..h.len()).any(|j| !open_hulls_meet(&c, &h[i], &h[j])));
    ensure(!pair, "fig6 has two interior-disjoint 5-holes")?;
    ensure(
        find_disjoint_tuple(&fig6, &[5, 5], DisjointMode::InteriorDisjoint).unwrap().is_none(),
        "library disagrees on fig6",
    )?;

    let dc = generate_double_circle(10).map_err(|e| e.to_string())?;
    let c = dc.coords();
    let h4 = brute_holes(&dc, 4);
    let pairs: Vec<(usize, usize)> = (0..h4.len())
        .flat_map(|i| (i + 1..h4.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !closed_hulls_meet(&c, &h4[i], &h4[j]))
        .collect();
    ensure(!pairs.is_empty(), "double circle has no two disjoint 4-holes")?;
    let segs = subsets(10, 2);
    let with_segment = pairs.iter().any(|&(i, j)| {
        segs.iter().any(|s| !closed_hulls_meet(&c, s, &h4[i]) && !closed_hulls_meet(&c, s, &h4[j]))
    });
    ensure(!with_segment, "double circle has a disjoint (2,4,4) triple")?;
    ensure(
        find_disjoint_tuple(&dc, &[2, 4, 4], DisjointMode::Disjoint).unwrap().is_none()
            && find_disjoint_tuple(&dc, &[4, 4], DisjointMode::Disjoint).unwrap().is_some(),
        "library disagrees on the double circle",
    )?;

    let tr = generate_two_ring(18).map_err(|e| e.to_string())?;
    let c = tr.coords();
    let all: Vec<usize> = (0..tr.len()).collect();
    let extremal = ccw_hull(&c, &all);
    ensure(extremal.len() == 9, format!("two-ring has {} extremal points", extremal.len()))?;
    let empty_extremal =
        subsets(9, 3).iter().any(|t| brute_hole(&c, &[extremal[t[0]], extremal[t[1]], extremal[t[2]]]));
    ensure(!empty_extremal, "two-ring has a 3-hole on extremal points")?;
    let h5 = brute_holes(&tr, 5);
    let lib: Vec<Vec<usize>> = enumerate_holes(&tr, 5).into_iter().map(|h| h.indices.to_vec()).collect();
    ensure(lib == h5, "library 5-holes differ from brute force on the two-ring")?;
    let thin = h5.iter().find(|x| x.iter().filter(|i| !extremal.contains(i)).count() < 3);
    ensure(thin.is_none(), format!("two-ring 5-hole {thin:?} has fewer than 3 inner points"))?;

    within(start, Duration::from_secs(300), "witness checks")?;
    Ok(format!("fig2, fig4, fig6, double circle, two-ring verified in {:.1}s", start.elapsed().as_secs_f64()))
}

fn c6_gons(dir: &Path) -> Outcome {
    let start = Instant::now();
    let params = SearchParams { budget: 50_000, restarts: 4, ..Default::default() };
    let found = search(8, &SearchObjective::Gons(5), 1, &params).map_err(|e| e.to_string())?;
    let w = found.witness.ok_or("search found no 8-point set without a 5-gon")?;
    let c = w.coords();
    ensure(PointSet::from_coords(&c).is_ok(), "search witness is not in general position")?;
    ensure(subsets(8, 5).iter().all(|x| !convex_position(&c, x)), "search witness contains a 5-gon")?;
    let cfg = solvers()?;
    expect(&HoleProblem::new(8, Mode::ForbidGon { k: 5 }), Verdict::Sat, dir, &cfg)?;
    expect(&HoleProblem::new(9, Mode::ForbidGon { k: 5 }), Verdict::Unsat, dir, &cfg)?;
    within(start, Duration::from_secs(300), "gon boundary")?;
    Ok(format!("8-point witness from search (seed {}), n=8 SAT, n=9 UNSAT", found.seed))
}

fn c7_counting(dir: &Path) -> Outcome {
    let cfg = solvers()?;
    let t = expect(&HoleProblem::new(10, Mode::CountHoles { k: 5, threshold: 1 }), Verdict::Unsat, dir, &cfg)?;
    ensure(t < 60.0, format!("solve took {t:.1}s"))?;
    Ok(format!("n=10 threshold 1 UNSAT with accepted certificate ({t:.2}s)"))
}

/// Presence of what `mode` forbids, decided by the brute-force oracles.
fn forbidden_present(s: &PointSet, mode: Mode) -> bool {
    let c = s.coords();
    let some_pair = |h: &[Vec<usize>], meet: &dyn Fn(&[usize], &[usize]) -> bool| {
        (0..h.len()).any(|i| (i + 1..h.len()).any(|j| !meet(&h[i], &h[j])))
    };
    match mode {
        Mode::ForbidHole { k } => !brute_holes(s, k).is_empty(),
        Mode::ForbidGon { k } => subsets(s.len(), k).iter().any(|x| convex_position(&c, x)),
        Mode::CountHoles { k, threshold } => brute_holes(s, k).len() >= threshold,
        Mode::TwoDisjointHoles { k1, k2 } => {
            assert_eq!(k1, k2);
            some_pair(&brute_holes(s, k1), &|x, y| closed_hulls_meet(&c, x, y))
        }
        Mode::TwoInteriorDisjointHoles { k1, k2 } => {
            let (a, b) = (brute_holes(s, k1), brute_holes(s, k2));
            a.iter().any(|x| b.iter().any(|y| x != y && !open_hulls_meet(&c, x, y)))
        }
    }
}

fn c8_model_verification() -> Outcome {
    let start = Instant::now();
    let modes = [
        (Mode::TwoDisjointHoles { k1: 5, k2: 5 }, true),
        (Mode::TwoDisjointHoles { k1: 4, k2: 4 }, false),
        (Mode::TwoInteriorDisjointHoles { k1: 4, k2: 5 }, false),
        (Mode::ForbidHole { k: 5 }, false),
        (Mode::ForbidHole { k: 6 }, false),
        (Mode::ForbidGon { k: 5 }, false),
        (Mode::CountHoles { k: 5, threshold: 4 }, false),
    ];
    let mut cache: HashMap<(usize, usize), CnfInstance> = HashMap::new();
    let mut present = vec![0usize; modes.len()];
    let sets = random_sets(2024, 1000, 6..=12, 10_000);
    for s in &sets {
        let canon = canonicalize(s).map_err(|e| e.to_string())?;
        let sig = canon.chirotope();
        for (m, &(mode, hints)) in modes.iter().enumerate() {
            let inst = cache.entry((s.len(), m)).or_insert_with(|| {
                build_instance(&HoleProblem::new(s.len(), mode).with_hints(hints)).expect("valid problem")
            });
            let asg = full_assignment(inst, &sig).map_err(|e| e.to_string())?;
            let broken = evaluate(inst, &asg);
            if let Some(v) = broken.iter().find(|v| !matches!(v.group, ClauseGroup::Forbid | ClauseGroup::Cardinality)) {
                return Err(format!("{} falsifies group {} on {:?}", inst.problem, v.group, s.coords()));
            }
            let occurs = forbidden_present(&canon.relabeled, mode);
            ensure(
                broken.is_empty() != occurs,
                format!("{}: assignment satisfied={}, structure present={occurs} on {:?}", inst.problem, broken.is_empty(), s.coords()),
            )?;
            present[m] += occurs as usize;
        }
    }
    within(start, Duration::from_secs(900), "model verification")?;
    Ok(format!(
        "{} sets x {} modes agree (structure present in {:?}) in {:.0}s",
        sets.len(),
        modes.len(),
        present,
        start.elapsed().as_secs_f64()
    ))
}

fn c9_long(dir: &Path) -> Outcome {
    let cfg = solvers()?;
    let opts = RecipeOptions::default();
    let mut lines = Vec::new();
    for name in ["h55-full", "interior-55", "g6", "count-16"] {
        let r = run_recipe(name, &dir.join(name), &cfg, opts).ok_or(format!("unknown recipe {name}"))?;
        ensure(r.passed, format!("recipe {name} failed: {:?}", r.steps.iter().map(|s| &s.summary).collect::<Vec<_>>()))?;
        lines.push(name);
    }
    Ok(format!("{} passed", lines.join(", ")))
}

fn c10_relaxation(dir: &Path) -> Outcome {
    let start = Instant::now();
    let cfg = solvers()?;
    let mut verdicts = Vec::new();
    for n in 9..=12 {
        let mut seen = Vec::new();
        for (relaxed, hints) in [(false, false), (true, false), (false, true), (true, true)] {
            let p = HoleProblem::new(n, Mode::TwoDisjointHoles { k1: 5, k2: 5 })
                .with_relaxed_lr(relaxed)
                .with_hints(hints);
            let id = format!("relax-n{n}-{}{}", relaxed as u8, hints as u8);
            let r = solve_problem(&p, &id, dir, &cfg, CHECKED).map_err(|e| e.to_string())?;
            ensure(r.verification == Verification::Passed, format!("{p}: {}", r.detail))?;
            seen.push(r.verdict);
        }
        ensure(seen.iter().all(|v| *v == seen[0]), format!("n={n}: verdicts differ {seen:?}"))?;
        verdicts.push(format!("n={n} {}", seen[0]));
    }
    within(start, Duration::from_secs(1200), "relaxation")?;
    Ok(format!("identical across 4 variants: {}", verdicts.join(", ")))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let long = args.iter().any(|a| a == "--include-ignored" || a == "--ignored")
        || std::env::var("HOLESAT_LONG").is_ok_and(|v| v == "1");
    let tmp = tempfile::tempdir().expect("temp dir");
    let dir = tmp.path();

    let criteria: Vec<Criterion> = vec![
        (1, "instance size", Box::new(c1_instance_size)),
        (2, "h(5)=10 with certificate", Box::new(|| c2_harborth(dir))),
        (3, "two disjoint holes, small table", Box::new(|| c3_disjoint_table(dir))),
        (4, "two interior-disjoint holes, small table", Box::new(|| c4_interior_table(dir))),
        (5, "witness verification", Box::new(c5_witnesses)),
        (6, "g(5)=9", Box::new(|| c6_gons(dir))),
        (7, "counting n=10", Box::new(|| c7_counting(dir))),
        (8, "model verification property suite", Box::new(c8_model_verification)),
        (9, "long-running targets", Box::new(|| c9_long(dir))),
        (10, "relaxation equivalence", Box::new(|| c10_relaxation(dir))),
    ];

    let mut failed = 0;
    for (id, name, run) in &criteria {
        if *id == 9 && !long {
            println!("SKIP criterion {id} ({name}): opt-in, set HOLESAT_LONG=1 (hours of solver time)");
            continue;
        }
        let start = Instant::now();
        match run() {
            Ok(msg) => println!("PASS criterion {id} ({name}): {msg} [{:.1}s]", start.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {msg} [{:.1}s]", start.elapsed().as_secs_f64());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
