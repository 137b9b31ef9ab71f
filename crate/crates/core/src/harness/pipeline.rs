//! Encode, solve, decode, verify, and check certificates.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::encoder::{
    build_instance, decode_signotope, evaluate, read_problem_comment, Assignment, CnfInstance, HoleProblem,
};

use super::config::HarnessConfig;
use super::run::{run_proof_check, run_solver, Verdict};
use super::verify::verify_model;
use super::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verification {
    Passed,
    Failed,
    Skipped,
}

impl std::fmt::Display for Verification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verification::Passed => "passed",
            Verification::Failed => "failed",
            Verification::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub id: String,
    pub problem: Option<String>,
    pub verdict: Verdict,
    pub timed_out: bool,
    #[serde(skip)]
    pub model: Option<Vec<i32>>,
    pub certificate_path: Option<PathBuf>,
    pub wall_time_secs: f64,
    pub solver: String,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub verification: Verification,
    pub detail: String,
}

impl SolveReport {
    /// Line-oriented `key: value` form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "id: {}", self.id);
        let _ = writeln!(s, "problem: {}", self.problem.as_deref().unwrap_or("-"));
        let _ = writeln!(s, "variables: {}", self.num_vars);
        let _ = writeln!(s, "clauses: {}", self.num_clauses);
        let _ = writeln!(s, "solver: {}", self.solver);
        let _ = writeln!(s, "verdict: {}", self.verdict);
        let _ = writeln!(s, "timed_out: {}", self.timed_out);
        let _ = writeln!(s, "wall_time: {:.3}", self.wall_time_secs);
        let cert = self.certificate_path.as_ref().map(|p| p.display().to_string());
        let _ = writeln!(s, "certificate: {}", cert.as_deref().unwrap_or("-"));
        let _ = writeln!(s, "verification: {}", self.verification);
        if !self.detail.is_empty() {
            let _ = writeln!(s, "detail: {}", self.detail.replace('\n', " | "));
        }
        s
    }
}

/// Writes a JSON array of reports.
pub fn write_summary(reports: &[SolveReport], path: &Path) -> Result<(), HarnessError> {
    let json = serde_json::to_string_pretty(reports).map_err(|e| HarnessError::Io(e.to_string()))?;
    std::fs::write(path, json).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Ask the solver for an UNSAT certificate.
    pub proof: bool,
    /// Run the proof checker on the certificate (implies `proof`).
    pub check: bool,
}

/// Solves an already-written instance. `instance` is used to decode and
/// verify models; without it a SAT verdict is reported unverified.
fn solve_written(
    id: &str,
    cnf: &Path,
    instance: Option<&CnfInstance>,
    sizes: (usize, usize),
    config: &HarnessConfig,
    opts: SolveOptions,
) -> Result<SolveReport, HarnessError> {
    let solver = config.require_solver()?;
    let want_proof = opts.proof || opts.check;
    let checker = if opts.check { Some(config.require_checker()?) } else { None };
    let proof_path = want_proof.then(|| cnf.with_extension("drat"));
    let run = run_solver(solver, cnf, proof_path.as_deref())?;
    let mut report = SolveReport {
        id: id.to_string(),
        problem: instance.map(|i| i.problem.to_string()),
        verdict: run.verdict,
        timed_out: run.timed_out,
        model: run.model.clone(),
        certificate_path: run.certificate.clone(),
        wall_time_secs: run.wall_time.as_secs_f64(),
        solver: solver.identity(),
        num_vars: sizes.0,
        num_clauses: sizes.1,
        verification: Verification::Skipped,
        detail: String::new(),
    };
    match (run.verdict, instance) {
        (Verdict::Sat, Some(inst)) => {
            let model = run.model.as_deref().unwrap_or_default();
            let asg = Assignment::from_model(inst.num_vars(), model);
            let broken = evaluate(inst, &asg);
            if let Some(v) = broken.first() {
                report.verification = Verification::Failed;
                report.detail = format!("model falsifies {} clause(s) of group {}", v.count, v.group);
                return Ok(report);
            }
            let sig = decode_signotope(inst, &asg).map_err(|e| HarnessError::Decode(e.to_string()))?;
            match verify_model(&sig, &inst.problem) {
                Ok(()) => {
                    report.verification = Verification::Passed;
                    report.detail = format!("decoded signotope avoids the forbidden structure: {sig:?}");
                }
                Err(cex) => {
                    report.verification = Verification::Failed;
                    report.detail = cex.to_string();
                }
            }
        }
        (Verdict::Unsat, _) => {
            if let (Some(checker), Some(cert)) = (checker, run.certificate.as_deref()) {
                let check = run_proof_check(checker, cnf, cert)?;
                report.verification = if check.passed { Verification::Passed } else { Verification::Failed };
                let status = check.output.lines().rfind(|l| l.starts_with("s ")).unwrap_or("no status line");
                report.detail = format!("proof check of {}: {status}", check.checked_file.display());
            }
        }
        (Verdict::Unknown, _) if run.timed_out => report.detail = "solver timed out".into(),
        _ => {}
    }
    Ok(report)
}

/// Builds, writes (`<workdir>/<id>.cnf` plus sidecar), solves, and verifies.
pub fn solve_problem(
    problem: &HoleProblem,
    id: &str,
    workdir: &Path,
    config: &HarnessConfig,
    opts: SolveOptions,
) -> Result<SolveReport, HarnessError> {
    let instance = build_instance(problem).map_err(|e| HarnessError::Encode(e.to_string()))?;
    solve_instance(&instance, id, workdir, config, opts)
}

pub fn solve_instance(
    instance: &CnfInstance,
    id: &str,
    workdir: &Path,
    config: &HarnessConfig,
    opts: SolveOptions,
) -> Result<SolveReport, HarnessError> {
    std::fs::create_dir_all(workdir).map_err(|e| HarnessError::Io(format!("{}: {e}", workdir.display())))?;
    let cnf = workdir.join(format!("{id}.cnf"));
    instance.write_files(&cnf).map_err(|e| HarnessError::Io(e.to_string()))?;
    let sizes = (instance.num_vars(), instance.num_clauses());
    solve_written(id, &cnf, Some(instance), sizes, config, opts)
}

/// Solves a DIMACS file. If its header records a problem, the instance is
/// rebuilt to decode and verify the model.
pub fn solve_cnf_file(cnf: &Path, config: &HarnessConfig, opts: SolveOptions) -> Result<SolveReport, HarnessError> {
    let text = std::fs::read_to_string(cnf).map_err(|e| HarnessError::Io(format!("{}: {e}", cnf.display())))?;
    let id = cnf.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let instance = match read_problem_comment(&text) {
        Ok(problem) => Some(build_instance(&problem).map_err(|e| HarnessError::Encode(e.to_string()))?),
        Err(_) => None,
    };
    let sizes = text
        .lines()
        .find_map(|l| l.strip_prefix("p cnf"))
        .map(|rest| {
            let v: Vec<usize> = rest.split_whitespace().filter_map(|t| t.parse().ok()).collect();
            (v.first().copied().unwrap_or(0), v.get(1).copied().unwrap_or(0))
        })
        .unwrap_or((0, 0));
    if let Some(inst) = &instance {
        if (inst.num_vars(), inst.num_clauses()) != sizes {
            return Err(HarnessError::Decode(format!(
                "{} does not match the instance its header describes",
                cnf.display()
            )));
        }
    }
    solve_written(&id, cnf, instance.as_ref(), sizes, config, opts)
}

#[derive(Clone, Debug)]
pub struct Job {
    pub id: String,
    pub problem: HoleProblem,
}

/// Solves jobs concurrently on `config.workers` threads. Results come back
/// in job order.
pub fn run_batch(
    jobs: &[Job],
    workdir: &Path,
    config: &HarnessConfig,
    opts: SolveOptions,
) -> Vec<(String, Result<SolveReport, HarnessError>)> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.workers.max(1)).build();
    let work = || {
        jobs.par_iter()
            .map(|j| (j.id.clone(), solve_problem(&j.problem, &j.id, workdir, config, opts)))
            .collect::<Vec<_>>()
    };
    match pool {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}
