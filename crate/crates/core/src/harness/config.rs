//! Solver and checker configuration: TOML file, environment, or PATH.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use super::HarnessError;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(600);

/// Output conventions of a solver family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dialect {
    /// `s ...` / `v ...` lines, exit codes 10/20.
    #[default]
    Competition,
    /// Same result lines, but RUP traces open with a `%RUPD` header line.
    PicosatRup,
}

impl std::str::FromStr for Dialect {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "competition" => Ok(Dialect::Competition),
            "picosat-rup" => Ok(Dialect::PicosatRup),
            other => Err(HarnessError::Config(format!("unknown dialect {other:?}"))),
        }
    }
}

/// External SAT solver. `args` and `proof_args` are full argument lists in
/// which `{cnf}` and `{proof}` are substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub path: PathBuf,
    pub args: Vec<String>,
    pub proof_args: Vec<String>,
    pub dialect: Dialect,
    pub timeout: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckerConfig {
    pub path: PathBuf,
    pub args: Vec<String>,
    pub timeout: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub solver: Option<SolverConfig>,
    pub checker: Option<CheckerConfig>,
    pub workers: usize,
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Argument presets for solvers we know by name.
fn solver_preset(name: &str) -> Option<(Vec<String>, Vec<String>, Dialect)> {
    let preset = match name {
        "splr" => (
            strings(&["-C", "-q", "-r", "/dev/stdout", "{cnf}"]),
            strings(&["-C", "-q", "-r", "/dev/stdout", "-c", "-p", "{proof}", "{cnf}"]),
            Dialect::Competition,
        ),
        "glucose" | "glucose-syrup" => (
            strings(&["-model", "{cnf}"]),
            strings(&["-model", "-certified", "-certified-output={proof}", "{cnf}"]),
            Dialect::Competition,
        ),
        "cadical" => (strings(&["{cnf}"]), strings(&["--no-binary", "{cnf}", "{proof}"]), Dialect::Competition),
        "kissat" => (strings(&["{cnf}"]), strings(&["--no-binary", "{cnf}", "{proof}"]), Dialect::Competition),
        "picosat" => (strings(&["-v", "{cnf}"]), strings(&["-v", "-R", "{proof}", "{cnf}"]), Dialect::PicosatRup),
        "glucose_pysat.py" | "glucose-pysat" => (
            strings(&["{cnf}"]),
            strings(&["--proof", "{proof}", "{cnf}"]),
            Dialect::Competition,
        ),
        _ => return None,
    };
    Some(preset)
}

const SOLVER_SEARCH: [&str; 5] = ["splr", "cadical", "kissat", "glucose", "picosat"];
const CHECKER_SEARCH: [&str; 2] = ["rate", "drat-trim"];

/// rate is run in drat-trim compatible mode: solvers such as Glucose delete
/// reason units, which strict DRAT semantics would reject.
fn checker_args(path: &Path) -> Vec<String> {
    match file_name(path).as_str() {
        "rate" => strings(&["-d", "{cnf}", "{proof}"]),
        _ => strings(&["{cnf}", "{proof}"]),
    }
}

/// First executable called `name` on `PATH` (or `name` itself if it is a path).
pub fn find_executable(name: &str) -> Option<PathBuf> {
    let p = Path::new(name);
    if p.components().count() > 1 {
        return p.is_file().then(|| p.to_path_buf());
    }
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path).map(|dir| dir.join(name)).find(|c| c.is_file())
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

impl SolverConfig {
    /// Preset for a known solver binary at `path`.
    pub fn preset(path: impl Into<PathBuf>) -> Result<Self, HarnessError> {
        let path = path.into();
        let name = file_name(&path);
        let (args, proof_args, dialect) = solver_preset(&name)
            .ok_or_else(|| HarnessError::Config(format!("no argument preset for solver {name:?}; set args explicitly")))?;
        Ok(SolverConfig { path, args, proof_args, dialect, timeout: DEFAULT_TIMEOUT })
    }

    pub fn identity(&self) -> String {
        format!("{} ({})", file_name(&self.path), self.path.display())
    }
}

impl CheckerConfig {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        CheckerConfig { args: checker_args(&path), path, timeout: DEFAULT_TIMEOUT }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSolver {
    path: PathBuf,
    args: Option<Vec<String>>,
    proof_args: Option<Vec<String>>,
    dialect: Option<Dialect>,
    timeout_secs: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileChecker {
    path: PathBuf,
    args: Option<Vec<String>>,
    timeout_secs: Option<u64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileHarness {
    workers: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    solver: Option<FileSolver>,
    checker: Option<FileChecker>,
    #[serde(default)]
    harness: FileHarness,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn split_args(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

impl HarnessConfig {
    /// Parses a TOML config (`[solver]`, `[checker]`, `[harness]` tables).
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        let solver = match file.solver {
            None => None,
            Some(s) => {
                let preset = solver_preset(&file_name(&s.path));
                let (args, proof_args) = match (s.args, s.proof_args, preset.as_ref()) {
                    (Some(a), p, _) => (a, p.unwrap_or_default()),
                    (None, p, Some((a, pa, _))) => (a.clone(), p.unwrap_or_else(|| pa.clone())),
                    (None, _, None) => {
                        return Err(HarnessError::Config(format!(
                            "solver {} has no preset; give `args`",
                            s.path.display()
                        )))
                    }
                };
                let dialect = s.dialect.or(preset.map(|p| p.2)).unwrap_or_default();
                Some(SolverConfig {
                    path: s.path,
                    args,
                    proof_args,
                    dialect,
                    timeout: s.timeout_secs.map(Duration::from_secs).unwrap_or(DEFAULT_TIMEOUT),
                })
            }
        };
        let checker = file.checker.map(|c| CheckerConfig {
            args: c.args.unwrap_or_else(|| checker_args(&c.path)),
            path: c.path,
            timeout: c.timeout_secs.map(Duration::from_secs).unwrap_or(DEFAULT_TIMEOUT),
        });
        Ok(HarnessConfig { solver, checker, workers: file.harness.workers.unwrap_or_else(default_workers) })
    }

    /// `HOLESAT_CONFIG` file if set, then `HOLESAT_*` overrides, then PATH
    /// discovery for anything still missing.
    pub fn from_env() -> Result<Self, HarnessError> {
        let mut cfg = match std::env::var("HOLESAT_CONFIG") {
            Ok(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| HarnessError::Config(format!("{path}: {e}")))?;
                Self::from_toml(&text)?
            }
            Err(_) => HarnessConfig { solver: None, checker: None, workers: default_workers() },
        };
        let var = |k: &str| std::env::var(k).ok().filter(|v| !v.is_empty());

        if let Some(name) = var("HOLESAT_SOLVER") {
            let path = find_executable(&name)
                .ok_or_else(|| HarnessError::SolverMissing(format!("HOLESAT_SOLVER={name} not found")))?;
            let mut s = match (var("HOLESAT_SOLVER_ARGS"), SolverConfig::preset(&path)) {
                (Some(args), preset) => {
                    let mut s = preset.unwrap_or(SolverConfig {
                        path: path.clone(),
                        args: vec![],
                        proof_args: vec![],
                        dialect: Dialect::Competition,
                        timeout: DEFAULT_TIMEOUT,
                    });
                    s.args = split_args(&args);
                    s
                }
                (None, preset) => preset?,
            };
            if let Some(pa) = var("HOLESAT_SOLVER_PROOF_ARGS") {
                s.proof_args = split_args(&pa);
            }
            if let Some(d) = var("HOLESAT_SOLVER_DIALECT") {
                s.dialect = d.parse()?;
            }
            cfg.solver = Some(s);
        }
        if cfg.solver.is_none() {
            cfg.solver = SOLVER_SEARCH.iter().find_map(|n| find_executable(n)).and_then(|p| SolverConfig::preset(p).ok());
        }

        if let Some(name) = var("HOLESAT_CHECKER") {
            let path = find_executable(&name)
                .ok_or_else(|| HarnessError::CheckerMissing(format!("HOLESAT_CHECKER={name} not found")))?;
            cfg.checker = Some(CheckerConfig::new(path));
        }
        if cfg.checker.is_none() {
            cfg.checker = CHECKER_SEARCH.iter().find_map(|n| find_executable(n)).map(CheckerConfig::new);
        }
        if let (Some(c), Some(args)) = (cfg.checker.as_mut(), var("HOLESAT_CHECKER_ARGS")) {
            c.args = split_args(&args);
        }

        if let Some(t) = var("HOLESAT_TIMEOUT") {
            let secs: u64 = t.parse().map_err(|_| HarnessError::Config(format!("HOLESAT_TIMEOUT={t:?}")))?;
            if let Some(s) = cfg.solver.as_mut() {
                s.timeout = Duration::from_secs(secs);
            }
            if let Some(c) = cfg.checker.as_mut() {
                c.timeout = Duration::from_secs(secs);
            }
        }
        if let Some(w) = var("HOLESAT_WORKERS") {
            cfg.workers = w.parse().map_err(|_| HarnessError::Config(format!("HOLESAT_WORKERS={w:?}")))?;
        }
        cfg.workers = cfg.workers.max(1);
        Ok(cfg)
    }

    pub fn require_solver(&self) -> Result<&SolverConfig, HarnessError> {
        self.solver.as_ref().ok_or_else(|| {
            HarnessError::SolverMissing(
                "no SAT solver configured; set HOLESAT_SOLVER, HOLESAT_CONFIG, or put one of splr/cadical/kissat/glucose/picosat on PATH".into(),
            )
        })
    }

    pub fn require_checker(&self) -> Result<&CheckerConfig, HarnessError> {
        self.checker.as_ref().ok_or_else(|| {
            HarnessError::CheckerMissing(
                "no proof checker configured; set HOLESAT_CHECKER or put rate/drat-trim on PATH".into(),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_with_preset_and_overrides() {
        let cfg = HarnessConfig::from_toml(
            r#"
            [solver]
            path = "/opt/bin/splr"
            timeout_secs = 30

            [checker]
            path = "/opt/bin/rate"

            [harness]
            workers = 3
            "#,
        )
        .unwrap();
        let s = cfg.solver.unwrap();
        assert_eq!(s.timeout, Duration::from_secs(30));
        assert!(s.proof_args.contains(&"{proof}".to_string()));
        assert_eq!(cfg.checker.unwrap().args, vec!["-d", "{cnf}", "{proof}"]);
        assert_eq!(cfg.workers, 3);
    }

    #[test]
    fn unknown_solver_needs_args() {
        assert!(HarnessConfig::from_toml("[solver]\npath = \"/x/mysolver\"\n").is_err());
        let cfg = HarnessConfig::from_toml(
            "[solver]\npath = \"/x/mysolver\"\nargs = [\"{cnf}\"]\ndialect = \"picosat-rup\"\n",
        )
        .unwrap();
        assert_eq!(cfg.solver.unwrap().dialect, Dialect::PicosatRup);
        assert!(HarnessConfig::from_toml("[solver]\npath = \"/x\"\nbogus = 1\n").is_err());
    }
}
