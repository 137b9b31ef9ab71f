//! Compiles a [`HoleProblem`] into CNF over triple-orientation variables.

mod assignment;
mod cnf;
mod families;
mod problem;
mod registry;

pub use assignment::{decode_signotope, evaluate, full_assignment, Assignment, GroupViolation};
pub use cnf::{parse_dimacs, read_problem_comment, sidecar_path, ClauseGroup, CnfInstance};
pub use families::build_instance;
pub use problem::{Encoding, HoleProblem, Mode};
pub use registry::{VarRegistry, VarTag};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("registry: {0}")]
    Registry(String),
    #[error("DIMACS: {0}")]
    Dimacs(String),
    #[error("signotope has {got} points, problem expects {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("orientation variables of triple ({0}, {1}, {2}) disagree")]
    InconsistentOrientation(usize, usize, usize),
    #[error("{0}")]
    Io(String),
}
