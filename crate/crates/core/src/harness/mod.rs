//! External solver and proof-checker driver, plus independent model checks.

mod config;
mod pipeline;
mod run;
mod verify;

pub use config::{find_executable, CheckerConfig, Dialect, HarnessConfig, SolverConfig, DEFAULT_TIMEOUT};
pub use pipeline::{
    run_batch, solve_cnf_file, solve_instance, solve_problem, write_summary, Job, SolveOptions, SolveReport,
    Verification,
};
pub use run::{normalize_proof, parse_solver_output, run_proof_check, run_solver, ProofCheck, SolverRun, Verdict};
pub use verify::{abstract_disjoint, abstract_holes, abstract_interior_disjoint, verify_model, Counterexample};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("solver not available: {0}")]
    SolverMissing(String),
    #[error("proof checker not available: {0}")]
    CheckerMissing(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("cannot start process: {0}")]
    Spawn(String),
    #[error("solver crashed ({status}):\n{output}")]
    Crash { status: String, output: String },
    #[error("unparsable solver output: {0}")]
    Unparsable(String),
    #[error("cannot decode model: {0}")]
    Decode(String),
    #[error("encoding failed: {0}")]
    Encode(String),
    #[error("{0}")]
    Io(String),
}
