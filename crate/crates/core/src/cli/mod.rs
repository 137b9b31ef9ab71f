//! Command-line front end.

mod recipes;

pub use recipes::{
    gon5_search_step, recipe_info, run_recipe, witness_steps, RecipeInfo, RecipeOptions, RecipeResult, StepResult,
    StepStatus, DISJOINT_TABLE, INTERIOR_TABLE, RECIPES,
};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::encoder::{build_instance, Encoding, HoleProblem, Mode};
use crate::geometry::PointSet;
use crate::harness::{
    find_executable, solve_cnf_file, solve_instance, CheckerConfig, HarnessConfig, SolveOptions, SolverConfig, Verdict,
    Verification,
};
use crate::holes::{
    enumerate_gons, enumerate_holes, find_disjoint_tuple, generate_double_circle, generate_two_ring, witness,
    DisjointMode, WITNESS_NAMES,
};
use crate::search::{search, SearchObjective, SearchParams};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "holesat", version, about = "SAT encodings and exact checks for disjoint holes in planar point sets")]
pub struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a DIMACS instance and its variable registry.
    Encode(EncodeArgs),
    /// Encode (or read) an instance, run the solver, verify the outcome.
    Solve(SolveArgs),
    /// Check properties of a point-set file.
    VerifyWitness(VerifyArgs),
    /// Count holes, gons, or disjoint tuples in a point-set file.
    CountHoles(CountArgs),
    /// Write a built-in or constructed point set.
    Construct(ConstructArgs),
    /// Simulated annealing for a point set avoiding a structure.
    Search(SearchArgs),
    /// Run a named end-to-end recipe (`recipe list` shows them).
    Recipe(RecipeArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    /// Number of points.
    #[arg(long)]
    pub n: Option<usize>,
    /// two-disjoint-holes | two-interior-disjoint-holes | forbid-hole | forbid-gon | count-holes
    #[arg(long, default_value = "two-disjoint-holes")]
    pub mode: String,
    /// Hole sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [5usize, 5])]
    pub sizes: Vec<usize>,
    /// Count mode: forbid this many or more holes.
    #[arg(long)]
    pub threshold: Option<usize>,
    /// Six orientation variables per triple, tied together by clauses.
    #[arg(long)]
    pub paper_faithful: bool,
    /// Symmetry-breaking hint clauses (two (5,5) modes only).
    #[arg(long)]
    pub hints: bool,
    /// One-directional L/R definitions.
    #[arg(long)]
    pub relaxed_lr: bool,
    /// Define holes through empty triangles only.
    #[arg(long)]
    pub simplified_holes: bool,
}

impl ProblemArgs {
    pub fn to_problem(&self) -> Result<HoleProblem, String> {
        let n = self.n.ok_or("--n is required")?;
        let mode = Mode::from_parts(&self.mode, &self.sizes, self.threshold).map_err(|e| e.to_string())?;
        let encoding = if self.paper_faithful { Encoding::PaperFaithful } else { Encoding::Compact };
        let p = HoleProblem::new(n, mode)
            .with_encoding(encoding)
            .with_hints(self.hints)
            .with_relaxed_lr(self.relaxed_lr)
            .with_simplified_holes(self.simplified_holes);
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct HarnessArgs {
    /// TOML file with [solver], [checker], [harness] tables.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Solver executable (name on PATH or path) with a built-in preset.
    #[arg(long)]
    pub solver: Option<String>,
    /// Proof checker executable.
    #[arg(long)]
    pub checker: Option<String>,
    /// Wall-clock limit per solver or checker run, in seconds.
    #[arg(long)]
    pub timeout: Option<u64>,
    /// Parallel solver runs.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Directory for instances and certificates.
    #[arg(long)]
    pub workdir: Option<PathBuf>,
}

impl HarnessArgs {
    pub fn to_config(&self) -> Result<HarnessConfig, String> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                HarnessConfig::from_toml(&text).map_err(|e| e.to_string())?
            }
            None => HarnessConfig::from_env().map_err(|e| e.to_string())?,
        };
        if let Some(name) = &self.solver {
            let path = find_executable(name).ok_or_else(|| format!("solver {name:?} not found"))?;
            cfg.solver = Some(SolverConfig::preset(path).map_err(|e| e.to_string())?);
        }
        if let Some(name) = &self.checker {
            let path = find_executable(name).ok_or_else(|| format!("checker {name:?} not found"))?;
            cfg.checker = Some(CheckerConfig::new(path));
        }
        if let Some(secs) = self.timeout {
            let t = Duration::from_secs(secs);
            if let Some(s) = cfg.solver.as_mut() {
                s.timeout = t;
            }
            if let Some(c) = cfg.checker.as_mut() {
                c.timeout = t;
            }
        }
        if let Some(w) = self.workers {
            cfg.workers = w.max(1);
        }
        Ok(cfg)
    }

    fn workdir(&self, default: &str) -> PathBuf {
        self.workdir.clone().unwrap_or_else(|| std::env::temp_dir().join(default))
    }
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Output DIMACS path; the registry goes to `<path>.vars`.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Solve an existing DIMACS file instead of encoding.
    #[arg(long, conflicts_with = "n")]
    pub cnf: Option<PathBuf>,
    /// Request an UNSAT certificate.
    #[arg(long)]
    pub proof: bool,
    /// Check the certificate (implies --proof).
    #[arg(long)]
    pub check: bool,
    /// Expected verdict; a different verdict exits with status 1.
    #[arg(long, value_parser = ["sat", "unsat"])]
    pub expect: Option<String>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub harness: HarnessArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Point-set file (`x y` per line).
    pub file: PathBuf,
    /// Require no k-hole.
    #[arg(long)]
    pub no_holes: Option<usize>,
    /// Require no k points in convex position.
    #[arg(long)]
    pub no_gons: Option<usize>,
    /// Require no pairwise disjoint holes of these sizes.
    #[arg(long, value_delimiter = ',')]
    pub no_disjoint_holes: Option<Vec<usize>>,
    /// Require no pairwise interior-disjoint holes of these sizes.
    #[arg(long, value_delimiter = ',')]
    pub no_interior_disjoint_holes: Option<Vec<usize>>,
    /// Require at least one k-hole.
    #[arg(long)]
    pub has_hole: Option<usize>,
    /// Require pairwise disjoint holes of these sizes.
    #[arg(long, value_delimiter = ',')]
    pub has_disjoint_holes: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    pub file: PathBuf,
    /// Hole size.
    #[arg(long, short)]
    pub k: Option<usize>,
    /// Count k-gons instead of k-holes.
    #[arg(long)]
    pub gons: bool,
    /// Count tuples of pairwise disjoint holes with these sizes.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["k", "interior_disjoint"])]
    pub disjoint: Option<Vec<usize>>,
    /// Count tuples of pairwise interior-disjoint holes.
    #[arg(long, value_delimiter = ',', conflicts_with = "k")]
    pub interior_disjoint: Option<Vec<usize>>,
    /// Print the holes themselves.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// double-circle | two-ring | fig2-n16 | fig4-n21 | fig6-n14
    pub name: String,
    /// Number of points (constructions only).
    #[arg(long)]
    pub n: Option<usize>,
    /// Output file (stdout if omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    /// holes:K | gons:K | disjoint:K1,K2,.. | interior-disjoint:K1,K2,..
    #[arg(long)]
    pub objective: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Proposed moves per restart.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub restarts: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub epoch_len: Option<u64>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub cooling: Option<f64>,
    #[arg(long)]
    pub step_max: Option<i64>,
    #[arg(long)]
    pub step_min: Option<i64>,
    /// Coordinate bound.
    #[arg(long)]
    pub bound: Option<i64>,
    /// Energy weight of the hole count for tuple objectives.
    #[arg(long)]
    pub hole_weight: Option<f64>,
    /// Witness output file (stdout if omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RecipeArgs {
    /// Recipe name, or `list`.
    pub name: String,
    /// Permit recipes that take hours.
    #[arg(long)]
    pub allow_long: bool,
    /// Skip certificate checking of UNSAT verdicts.
    #[arg(long)]
    pub no_check: bool,
    #[arg(long)]
    pub paper_faithful: bool,
    /// Write the recipe result as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub harness: HarnessArgs,
}

/// Outcome of a subcommand: exit code plus what to print.
struct Outcome {
    code: i32,
    text: String,
}

fn pass(text: String) -> Outcome {
    Outcome { code: EXIT_PASS, text }
}

fn fail(text: String) -> Outcome {
    Outcome { code: EXIT_FAIL, text }
}

fn read_points(path: &Path) -> Result<PointSet, String> {
    PointSet::read_file(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn encode(args: &EncodeArgs) -> Result<Outcome, String> {
    let problem = args.problem.to_problem()?;
    let start = std::time::Instant::now();
    let inst = build_instance(&problem).map_err(|e| e.to_string())?;
    inst.write_files(&args.output).map_err(|e| e.to_string())?;
    let mut text = format!(
        "{problem}\nvariables: {}\nclauses: {}\nbuild_time: {:.3}s\n",
        inst.num_vars(),
        inst.num_clauses(),
        start.elapsed().as_secs_f64()
    );
    for (g, range) in inst.groups() {
        text.push_str(&format!("group {} {}: {}\n", g.number(), g.name(), range.len()));
    }
    Ok(pass(text))
}

fn solve(args: &SolveArgs) -> Result<Outcome, String> {
    let cfg = args.harness.to_config()?;
    let opts = SolveOptions { proof: args.proof || args.check, check: args.check };
    let report = match &args.cnf {
        Some(cnf) => solve_cnf_file(cnf, &cfg, opts),
        None => {
            let problem = args.problem.to_problem()?;
            let inst = build_instance(&problem).map_err(|e| e.to_string())?;
            let id = format!("{}-n{}", problem.mode.name(), problem.n);
            solve_instance(&inst, &id, &args.harness.workdir("holesat-solve"), &cfg, opts)
        }
    }
    .map_err(|e| e.to_string())?;
    let text = if args.json {
        serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
    } else {
        report.to_text()
    };
    let expected = args.expect.as_deref().map(|e| if e == "sat" { Verdict::Sat } else { Verdict::Unsat });
    let code = if report.verdict == Verdict::Unknown {
        EXIT_ERROR
    } else if report.verification == Verification::Failed || expected.is_some_and(|v| v != report.verdict) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    };
    Ok(Outcome { code, text })
}

fn verify(args: &VerifyArgs) -> Result<Outcome, String> {
    let s = read_points(&args.file)?;
    let mut lines = Vec::new();
    let mut ok = true;
    let mut record = |name: String, good: bool, detail: String| {
        ok &= good;
        lines.push(format!("{} {name}: {detail}", if good { "PASS" } else { "FAIL" }));
    };
    let tuple = |sizes: &[usize], mode| find_disjoint_tuple(&s, sizes, mode).map_err(|e| e.to_string());
    let show = |t: &[crate::holes::Hole]| t.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ");
    if let Some(k) = args.no_holes {
        let found = enumerate_holes(&s, k);
        record(format!("no {k}-hole"), found.is_empty(), found.first().map_or("none".into(), |h| h.to_string()));
    }
    if let Some(k) = args.no_gons {
        let found = enumerate_gons(&s, k);
        record(format!("no {k}-gon"), found.is_empty(), found.first().map_or("none".into(), |h| h.to_string()));
    }
    if let Some(k) = args.has_hole {
        let found = enumerate_holes(&s, k);
        record(format!("has a {k}-hole"), !found.is_empty(), format!("{} found", found.len()));
    }
    let join = |v: &[usize]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
    if let Some(sizes) = &args.no_disjoint_holes {
        let t = tuple(sizes, DisjointMode::Disjoint)?;
        record(format!("no disjoint ({})", join(sizes)), t.is_none(), t.map_or("none".into(), |t| show(&t)));
    }
    if let Some(sizes) = &args.no_interior_disjoint_holes {
        let t = tuple(sizes, DisjointMode::InteriorDisjoint)?;
        record(format!("no interior-disjoint ({})", join(sizes)), t.is_none(), t.map_or("none".into(), |t| show(&t)));
    }
    if let Some(sizes) = &args.has_disjoint_holes {
        let t = tuple(sizes, DisjointMode::Disjoint)?;
        record(format!("has disjoint ({})", join(sizes)), t.is_some(), t.map_or("none".into(), |t| show(&t)));
    }
    if lines.is_empty() {
        return Err("no property requested; see --help".into());
    }
    let text = lines.join("\n") + "\n";
    Ok(if ok { pass(text) } else { fail(text) })
}

fn count(args: &CountArgs) -> Result<Outcome, String> {
    let s = read_points(&args.file)?;
    let (label, items): (String, Vec<String>) = match (&args.disjoint, &args.interior_disjoint, args.k) {
        (Some(sizes), _, _) | (_, Some(sizes), _) => {
            let mode = if args.disjoint.is_some() { DisjointMode::Disjoint } else { DisjointMode::InteriorDisjoint };
            let c = crate::holes::count_disjoint_tuples(&s, sizes, mode).map_err(|e| e.to_string())?;
            return Ok(pass(format!("{mode} {sizes:?}: {c}\n")));
        }
        (None, None, Some(k)) if args.gons => {
            (format!("{k}-gons"), enumerate_gons(&s, k).iter().map(|h| h.to_string()).collect())
        }
        (None, None, Some(k)) => (format!("{k}-holes"), enumerate_holes(&s, k).iter().map(|h| h.to_string()).collect()),
        (None, None, None) => return Err("give --k, --disjoint, or --interior-disjoint".into()),
    };
    let mut text = format!("{label}: {}\n", items.len());
    if args.list {
        for h in items {
            text.push_str(&h);
            text.push('\n');
        }
    }
    Ok(pass(text))
}

fn emit(s: &PointSet, output: Option<&Path>) -> Result<String, String> {
    match output {
        Some(path) => {
            s.write_file(path).map_err(|e| e.to_string())?;
            Ok(format!("wrote {} points to {}\n", s.len(), path.display()))
        }
        None => Ok(s.to_string()),
    }
}

fn construct(args: &ConstructArgs) -> Result<Outcome, String> {
    let need_n = || args.n.ok_or_else(|| format!("{} needs --n", args.name));
    let s = match args.name.as_str() {
        "double-circle" => generate_double_circle(need_n()?),
        "two-ring" => generate_two_ring(need_n()?),
        name if WITNESS_NAMES.contains(&name) => witness(name),
        other => {
            return Err(format!(
                "unknown set {other:?}; expected double-circle, two-ring, or one of {}",
                WITNESS_NAMES.join(", ")
            ))
        }
    }
    .map_err(|e| e.to_string())?;
    Ok(pass(emit(&s, args.output.as_deref())?))
}

fn run_search(args: &SearchArgs) -> Result<Outcome, String> {
    let obj: SearchObjective = args.objective.parse().map_err(|e: crate::holes::HoleError| e.to_string())?;
    let d = SearchParams::default();
    let params = SearchParams {
        budget: args.budget.unwrap_or(d.budget),
        epoch_len: args.epoch_len.unwrap_or(d.epoch_len),
        t0: args.t0.unwrap_or(d.t0),
        cooling: args.cooling.unwrap_or(d.cooling),
        step_max: args.step_max.unwrap_or(d.step_max),
        step_min: args.step_min.unwrap_or(d.step_min),
        bound: args.bound.unwrap_or(d.bound),
        hole_weight: args.hole_weight.unwrap_or(d.hole_weight),
        restarts: args.restarts.unwrap_or(d.restarts),
        workers: args.workers.unwrap_or(d.workers),
    };
    let out = search(args.n, &obj, args.seed, &params).map_err(|e| e.to_string())?;
    match out.witness {
        Some(s) => {
            let mut text = format!("witness found: objective {obj} is 0 (seed {}, {} moves)\n", out.seed, out.moves);
            text.push_str(&emit(&s, args.output.as_deref())?);
            Ok(pass(text))
        }
        None => Ok(fail(format!(
            "no witness within budget; best objective {} (seed {})\n",
            out.best_value, out.seed
        ))),
    }
}

fn recipe(args: &RecipeArgs) -> Result<Outcome, String> {
    if args.name == "list" {
        let text = RECIPES
            .iter()
            .map(|r| format!("{:<22}{}{}\n", r.name, r.about, if r.long { " [long]" } else { "" }))
            .collect();
        return Ok(pass(text));
    }
    let info = recipe_info(&args.name).ok_or_else(|| format!("unknown recipe {:?}; try `recipe list`", args.name))?;
    if info.long && !args.allow_long {
        return Err(format!("recipe {} takes hours of solver time; pass --allow-long", info.name));
    }
    let cfg = args.harness.to_config()?;
    let opts = RecipeOptions {
        check_proofs: !args.no_check,
        encoding: if args.paper_faithful { Encoding::PaperFaithful } else { Encoding::Compact },
    };
    let workdir = args.harness.workdir(&format!("holesat-{}", info.name));
    let result = run_recipe(info.name, &workdir, &cfg, opts).expect("known recipe");
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&result).map_err(|e| e.to_string())?;
        std::fs::write(path, json).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let mut text = String::new();
    for s in &result.steps {
        let tag = match s.status {
            StepStatus::Pass => "PASS",
            StepStatus::Fail => "FAIL",
            StepStatus::Error => "ERROR",
        };
        text.push_str(&format!("{tag} {}: {}\n", s.name, s.summary));
    }
    text.push_str(&format!("recipe {}: {}\n", result.recipe, if result.passed { "PASS" } else { "FAIL" }));
    Ok(Outcome { code: result.exit_code(), text })
}

/// Runs a parsed command, writing output to `out`. Returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Encode(a) => encode(a),
        Command::Solve(a) => solve(a),
        Command::VerifyWitness(a) => verify(a),
        Command::CountHoles(a) => count(a),
        Command::Construct(a) => construct(a),
        Command::Search(a) => run_search(a),
        Command::Recipe(a) => recipe(a),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}

/// Parses `argv` (including the program name) and runs it.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli, out),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let _ = e.print();
            code
        }
    }
}
