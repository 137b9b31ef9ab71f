//! Named end-to-end runs: batches of solves with expected verdicts, plus the
//! solver-free witness checks.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::encoder::{Encoding, HoleProblem, Mode};
use crate::harness::{run_batch, HarnessConfig, Job, SolveOptions, SolveReport, Verdict, Verification};
use crate::holes::{
    enumerate_holes, extremal_3holes, find_disjoint_tuple, generate_double_circle, generate_two_ring,
    max_extremal_in_holes, witness, DisjointMode,
};
use crate::search::{search, SearchObjective, SearchParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    Pass,
    /// The checked property does not hold (wrong verdict, bad model, rejected proof).
    Fail,
    /// Solver crash, timeout, missing binary.
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepResult {
    pub name: String,
    pub status: StepStatus,
    pub summary: String,
    pub report: Option<SolveReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecipeResult {
    pub recipe: String,
    pub steps: Vec<StepResult>,
    pub passed: bool,
}

impl RecipeResult {
    fn new(recipe: &str, steps: Vec<StepResult>) -> Self {
        let passed = !steps.is_empty() && steps.iter().all(|s| s.status == StepStatus::Pass);
        RecipeResult { recipe: recipe.to_string(), steps, passed }
    }

    /// 0 pass, 1 some property failed, 2 infrastructure trouble only.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else if self.steps.iter().any(|s| s.status == StepStatus::Fail) {
            1
        } else {
            2
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RecipeOptions {
    pub check_proofs: bool,
    pub encoding: Encoding,
}

impl Default for RecipeOptions {
    fn default() -> Self {
        RecipeOptions { check_proofs: true, encoding: Encoding::Compact }
    }
}

pub struct RecipeInfo {
    pub name: &'static str,
    pub long: bool,
    pub about: &'static str,
}

pub const RECIPES: &[RecipeInfo] = &[
    RecipeInfo { name: "harborth", long: false, about: "5-holes: SAT at n=9, UNSAT at n=10" },
    RecipeInfo { name: "h55-small-table", long: false, about: "two disjoint holes, all size pairs up to 5 except (5,5)" },
    RecipeInfo { name: "interior-small-table", long: false, about: "two interior-disjoint holes, pairs up to (4,5)" },
    RecipeInfo { name: "g5", long: false, about: "5-gons: searched witness at n=8, UNSAT at n=9" },
    RecipeInfo { name: "count-10", long: false, about: "every 10-point set has a 5-hole (counting encoding)" },
    RecipeInfo { name: "witnesses", long: false, about: "solver-free checks of the stored and constructed sets" },
    RecipeInfo { name: "relaxation", long: false, about: "relaxed L/R and hints leave (5,5) verdicts unchanged, n=9..12" },
    RecipeInfo { name: "h55-full", long: true, about: "two disjoint 5-holes: SAT at n=16, UNSAT at n=17" },
    RecipeInfo { name: "interior-55", long: true, about: "two interior-disjoint 5-holes: SAT at n=14, UNSAT at n=15" },
    RecipeInfo { name: "g6", long: true, about: "6-gons: SAT at n=16, UNSAT at n=17" },
    RecipeInfo { name: "count-16", long: true, about: "every 16-point set has at least 11 5-holes" },
];

pub fn recipe_info(name: &str) -> Option<&'static RecipeInfo> {
    RECIPES.iter().find(|r| r.name == name)
}

struct Expect {
    id: String,
    problem: HoleProblem,
    verdict: Verdict,
}

fn expect(id: impl Into<String>, problem: HoleProblem, verdict: Verdict) -> Expect {
    Expect { id: id.into(), problem, verdict }
}

fn judge(e: &Expect, check: bool, res: &Result<SolveReport, crate::harness::HarnessError>) -> StepResult {
    let name = format!("{} [{}]", e.id, e.problem);
    let step = |status, summary: String, report: Option<&SolveReport>| StepResult {
        name: name.clone(),
        status,
        summary,
        report: report.cloned(),
    };
    let r = match res {
        Err(err) => return step(StepStatus::Error, err.to_string(), None),
        Ok(r) => r,
    };
    let timing = format!("{} in {:.2}s", r.verdict, r.wall_time_secs);
    if r.verdict == Verdict::Unknown {
        return step(StepStatus::Error, format!("no verdict ({})", r.detail), Some(r));
    }
    if r.verdict != e.verdict {
        return step(StepStatus::Fail, format!("expected {}, got {timing}", e.verdict), Some(r));
    }
    let needs_verification = r.verdict == Verdict::Sat || check;
    match r.verification {
        Verification::Failed => step(StepStatus::Fail, format!("{timing}; verification failed: {}", r.detail), Some(r)),
        Verification::Skipped if needs_verification => {
            step(StepStatus::Error, format!("{timing}; nothing to verify: {}", r.detail), Some(r))
        }
        Verification::Passed => step(StepStatus::Pass, format!("{timing}, verified"), Some(r)),
        Verification::Skipped => step(StepStatus::Pass, timing, Some(r)),
    }
}

fn solve_all(expects: &[Expect], workdir: &Path, config: &HarnessConfig, opts: RecipeOptions) -> Vec<StepResult> {
    let jobs: Vec<Job> = expects.iter().map(|e| Job { id: e.id.clone(), problem: e.problem.clone() }).collect();
    let solve_opts = SolveOptions { proof: opts.check_proofs, check: opts.check_proofs };
    let results = run_batch(&jobs, workdir, config, solve_opts);
    expects.iter().zip(&results).map(|(e, (_, res))| judge(e, opts.check_proofs, res)).collect()
}

fn boundary_pair(
    id: &str,
    n: usize,
    make: impl Fn(usize) -> HoleProblem,
) -> [Expect; 2] {
    [
        expect(format!("{id}-n{}", n - 1), make(n - 1), Verdict::Sat),
        expect(format!("{id}-n{n}"), make(n), Verdict::Unsat),
    ]
}

/// Known values for two disjoint holes of sizes `(k1, k2)`.
pub const DISJOINT_TABLE: &[(usize, usize, usize)] =
    &[(2, 2, 4), (2, 3, 5), (3, 3, 6), (2, 4, 6), (3, 4, 7), (4, 4, 9), (2, 5, 10), (3, 5, 10), (4, 5, 12)];

/// Known values for two interior-disjoint holes.
pub const INTERIOR_TABLE: &[(usize, usize, usize)] = &[(3, 3, 4), (3, 4, 5), (4, 4, 7), (3, 5, 10), (4, 5, 10)];

fn solve_expectations(name: &str, opts: RecipeOptions) -> Vec<Expect> {
    let enc = |p: HoleProblem| p.with_encoding(opts.encoding);
    match name {
        "harborth" => boundary_pair("hole5", 10, |n| enc(HoleProblem::new(n, Mode::ForbidHole { k: 5 }))).into(),
        "h55-small-table" => DISJOINT_TABLE
            .iter()
            .flat_map(|&(k1, k2, h)| {
                boundary_pair(&format!("h{k1}{k2}"), h, move |n| {
                    enc(HoleProblem::new(n, Mode::TwoDisjointHoles { k1, k2 }))
                })
            })
            .collect(),
        "interior-small-table" => INTERIOR_TABLE
            .iter()
            .flat_map(|&(k1, k2, h)| {
                boundary_pair(&format!("i{k1}{k2}"), h, move |n| {
                    enc(HoleProblem::new(n, Mode::TwoInteriorDisjointHoles { k1, k2 }))
                })
            })
            .collect(),
        "g5" => boundary_pair("gon5", 9, |n| enc(HoleProblem::new(n, Mode::ForbidGon { k: 5 }))).into(),
        "count-10" => vec![expect(
            "count5-n10-t1",
            enc(HoleProblem::new(10, Mode::CountHoles { k: 5, threshold: 1 })),
            Verdict::Unsat,
        )],
        "h55-full" => boundary_pair("h55", 17, |n| {
            HoleProblem::new(n, Mode::TwoDisjointHoles { k1: 5, k2: 5 })
                .with_encoding(opts.encoding)
                .with_hints(n >= 10)
        })
        .into(),
        "interior-55" => boundary_pair("i55", 15, |n| {
            enc(HoleProblem::new(n, Mode::TwoInteriorDisjointHoles { k1: 5, k2: 5 })).with_hints(n >= 10)
        })
        .into(),
        "g6" => boundary_pair("gon6", 17, |n| enc(HoleProblem::new(n, Mode::ForbidGon { k: 6 }))).into(),
        "count-16" => vec![expect(
            "count5-n16-t11",
            enc(HoleProblem::new(16, Mode::CountHoles { k: 5, threshold: 11 })),
            Verdict::Unsat,
        )],
        _ => vec![],
    }
}

fn timed(name: &str, f: impl FnOnce() -> Result<String, String>) -> StepResult {
    let start = Instant::now();
    let (status, summary) = match f() {
        Ok(s) => (StepStatus::Pass, s),
        Err(s) => (StepStatus::Fail, s),
    };
    StepResult {
        name: name.to_string(),
        status,
        summary: format!("{summary} ({:.2}s)", start.elapsed().as_secs_f64()),
        report: None,
    }
}

/// Geometric checks that need no solver.
pub fn witness_steps() -> Vec<StepResult> {
    let load = |name: &str| witness(name).map_err(|e| e.to_string());
    let tuple = |s: &crate::geometry::PointSet, sizes: &[usize], mode| {
        find_disjoint_tuple(s, sizes, mode).map_err(|e| e.to_string())
    };
    vec![
        timed("fig2-n16 has a 5-hole", || {
            let n = enumerate_holes(&load("fig2-n16")?, 5).len();
            if n > 0 { Ok(format!("{n} 5-holes")) } else { Err("no 5-hole".into()) }
        }),
        timed("fig2-n16 has no two disjoint 5-holes", || match tuple(&load("fig2-n16")?, &[5, 5], DisjointMode::Disjoint)? {
            None => Ok("none".into()),
            Some(t) => Err(format!("found {} and {}", t[0], t[1])),
        }),
        timed("fig4-n21 has no three pairwise disjoint 5-holes", || {
            match tuple(&load("fig4-n21")?, &[5, 5, 5], DisjointMode::Disjoint)? {
                None => Ok("none".into()),
                Some(t) => Err(format!("found {}, {}, {}", t[0], t[1], t[2])),
            }
        }),
        timed("fig6-n14 has no two interior-disjoint 5-holes", || {
            match tuple(&load("fig6-n14")?, &[5, 5], DisjointMode::InteriorDisjoint)? {
                None => Ok("none".into()),
                Some(t) => Err(format!("found {} and {}", t[0], t[1])),
            }
        }),
        timed("double circle n=10 has two disjoint 4-holes", || {
            let s = generate_double_circle(10).map_err(|e| e.to_string())?;
            match tuple(&s, &[4, 4], DisjointMode::Disjoint)? {
                Some(t) => Ok(format!("{} and {}", t[0], t[1])),
                None => Err("none found".into()),
            }
        }),
        timed("double circle n=10 has no disjoint (2,4,4)", || {
            let s = generate_double_circle(10).map_err(|e| e.to_string())?;
            match tuple(&s, &[2, 4, 4], DisjointMode::Disjoint)? {
                None => Ok("none".into()),
                Some(t) => Err(format!("found {}, {}, {}", t[0], t[1], t[2])),
            }
        }),
        timed("two-ring n=18 has no 3-hole on extremal points", || {
            let s = generate_two_ring(18).map_err(|e| e.to_string())?;
            match extremal_3holes(&s, 9).first() {
                None => Ok("none".into()),
                Some(x) => Err(format!("extremal 3-hole {x:?}")),
            }
        }),
        timed("two-ring n=18: every 5-hole has at least 3 inner points", || {
            let s = generate_two_ring(18).map_err(|e| e.to_string())?;
            let worst = max_extremal_in_holes(&s, 9, 5);
            if worst <= 2 { Ok(format!("at most {worst} extremal points per 5-hole")) } else { Err(format!("a 5-hole with {worst} extremal points")) }
        }),
    ]
}

/// The independent witness for the 5-gon boundary: an 8-point set without
/// 5 points in convex position, found by local search.
pub fn gon5_search_step() -> StepResult {
    timed("search: 8 points without a convex 5-gon", || {
        let params = SearchParams { restarts: 4, ..SearchParams::default() };
        let out = search(8, &SearchObjective::Gons(5), 1, &params).map_err(|e| e.to_string())?;
        match out.witness {
            Some(s) => Ok(format!("seed {} after {} moves: {}", out.seed, out.moves, s.to_string().replace('\n', " "))),
            None => Err(format!("no witness, best count {}", out.best_value)),
        }
    })
}

fn relaxation(workdir: &Path, config: &HarnessConfig, opts: RecipeOptions) -> Vec<StepResult> {
    let variants = [(false, false), (true, false), (false, true), (true, true)];
    let mut jobs = Vec::new();
    for n in 9..=12 {
        for (relaxed, hints) in variants {
            let p = HoleProblem::new(n, Mode::TwoDisjointHoles { k1: 5, k2: 5 })
                .with_encoding(opts.encoding)
                .with_relaxed_lr(relaxed)
                .with_hints(hints);
            jobs.push(Job { id: format!("h55-n{n}-relaxed{}-hints{}", relaxed as u8, hints as u8), problem: p });
        }
    }
    let results = run_batch(&jobs, workdir, config, SolveOptions::default());
    results
        .chunks(variants.len())
        .zip(9..=12)
        .map(|(group, n)| {
            let name = format!("n={n}: (5,5) verdicts with/without relaxed L/R and hints");
            let mut verdicts = Vec::new();
            for (id, r) in group {
                match r {
                    Ok(r) if r.verdict != Verdict::Unknown => verdicts.push(format!("{id}={}", r.verdict)),
                    Ok(r) => {
                        return StepResult { name, status: StepStatus::Error, summary: format!("{id}: {}", r.detail), report: None }
                    }
                    Err(e) => {
                        return StepResult { name, status: StepStatus::Error, summary: format!("{id}: {e}"), report: None }
                    }
                }
            }
            let first = group[0].1.as_ref().map(|r| r.verdict).ok();
            let same = group.iter().all(|(_, r)| r.as_ref().map(|r| r.verdict).ok() == first);
            StepResult {
                name,
                status: if same { StepStatus::Pass } else { StepStatus::Fail },
                summary: verdicts.join(" "),
                report: None,
            }
        })
        .collect()
}

/// Runs a named recipe. Unknown names yield `None`.
pub fn run_recipe(
    name: &str,
    workdir: &Path,
    config: &HarnessConfig,
    opts: RecipeOptions,
) -> Option<RecipeResult> {
    recipe_info(name)?;
    let needs_solver = name != "witnesses";
    if needs_solver {
        let missing = config
            .require_solver()
            .err()
            .or_else(|| if opts.check_proofs { config.require_checker().err() } else { None });
        if let Some(e) = missing {
            let step = StepResult { name: "configuration".into(), status: StepStatus::Error, summary: e.to_string(), report: None };
            return Some(RecipeResult::new(name, vec![step]));
        }
    }
    let steps = match name {
        "witnesses" => witness_steps(),
        "relaxation" => relaxation(workdir, config, opts),
        "g5" => {
            let mut steps = vec![gon5_search_step()];
            steps.extend(solve_all(&solve_expectations(name, opts), workdir, config, opts));
            steps
        }
        _ => solve_all(&solve_expectations(name, opts), workdir, config, opts),
    };
    Some(RecipeResult::new(name, steps))
}
