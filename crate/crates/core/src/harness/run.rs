//! Child-process plumbing for solvers and proof checkers.

use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitStatus, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::Serialize;
use wait_timeout::ChildExt;

use super::config::{CheckerConfig, SolverConfig};
use super::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolverRun {
    pub verdict: Verdict,
    /// Literals from `v` lines (SAT only).
    pub model: Option<Vec<i32>>,
    pub wall_time: Duration,
    pub timed_out: bool,
    pub certificate: Option<PathBuf>,
}

struct Finished {
    status: Option<ExitStatus>,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

fn tail(s: &str, lines: usize) -> String {
    let v: Vec<&str> = s.lines().collect();
    v[v.len().saturating_sub(lines)..].join("\n")
}

/// Runs a command with a wall-clock limit; `status` is `None` on timeout.
fn run_limited(path: &Path, args: &[String], timeout: Duration) -> Result<Finished, HarnessError> {
    let start = Instant::now();
    let mut child = Command::new(path)
        .args(args)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| HarnessError::Spawn(format!("{}: {e}", path.display())))?;
    let mut out = child.stdout.take().expect("piped stdout");
    let mut err = child.stderr.take().expect("piped stderr");
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = out.read_to_string(&mut s);
        s
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = err.read_to_string(&mut s);
        s
    });
    let status = child.wait_timeout(timeout).map_err(|e| HarnessError::Spawn(e.to_string()))?;
    if status.is_none() {
        let _ = child.kill();
        let _ = child.wait();
    }
    Ok(Finished {
        status,
        stdout: out_reader.join().unwrap_or_default(),
        stderr: err_reader.join().unwrap_or_default(),
        elapsed: start.elapsed(),
    })
}

fn substitute(template: &[String], cnf: &Path, proof: Option<&Path>) -> Vec<String> {
    template
        .iter()
        .map(|a| {
            let a = a.replace("{cnf}", &cnf.to_string_lossy());
            match proof {
                Some(p) => a.replace("{proof}", &p.to_string_lossy()),
                None => a,
            }
        })
        .collect()
}

/// Drops ANSI CSI sequences (`ESC [ ... letter`), which some solvers emit
/// for progress display even when writing to a pipe.
fn strip_ansi(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\u{1b}' {
            if chars.peek() == Some(&'[') {
                chars.next();
                for d in chars.by_ref() {
                    if d.is_ascii_alphabetic() {
                        break;
                    }
                }
            }
        } else if c != '\r' {
            out.push(c);
        }
    }
    out
}

/// Verdict and model from solver output. Accepts `s SATISFIABLE` as well as
/// decorated forms like `s SATISFIABLE: file.cnf`.
pub fn parse_solver_output(stdout: &str) -> Result<(Verdict, Option<Vec<i32>>), HarnessError> {
    let mut verdict = None;
    let mut model = Vec::new();
    let mut model_done = false;
    for raw in stdout.lines() {
        let cleaned = strip_ansi(raw);
        let line = cleaned.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            if verdict.is_some() {
                continue;
            }
            let word = rest.split(|c: char| c == ':' || c.is_whitespace()).next().unwrap_or("");
            verdict = Some(match word {
                "SATISFIABLE" => Verdict::Sat,
                "UNSATISFIABLE" => Verdict::Unsat,
                "UNKNOWN" | "INDETERMINATE" => Verdict::Unknown,
                other => return Err(HarnessError::Unparsable(format!("unknown status {other:?}"))),
            });
        } else if let Some(rest) = line.strip_prefix("v ").or_else(|| (line == "v").then_some("")) {
            for tok in rest.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| HarnessError::Unparsable(format!("bad model literal {tok:?}")))?;
                if l == 0 {
                    model_done = true;
                } else if !model_done {
                    model.push(l);
                }
            }
        }
    }
    match verdict {
        None => Err(HarnessError::Unparsable(format!("no status line in output:\n{}", tail(stdout, 10)))),
        Some(Verdict::Sat) if model.is_empty() => {
            Err(HarnessError::Unparsable("SATISFIABLE without a model".into()))
        }
        Some(Verdict::Sat) => Ok((Verdict::Sat, Some(model))),
        Some(v) => Ok((v, None)),
    }
}

/// Runs the solver on a DIMACS file; with `proof`, asks for a certificate
/// at that path.
pub fn run_solver(config: &SolverConfig, cnf: &Path, proof: Option<&Path>) -> Result<SolverRun, HarnessError> {
    let template = match proof {
        Some(_) if config.proof_args.is_empty() => {
            return Err(HarnessError::Config(format!("{} has no proof argument template", config.identity())))
        }
        Some(_) => &config.proof_args,
        None => &config.args,
    };
    let args = substitute(template, cnf, proof);
    log::debug!("running {} {}", config.path.display(), args.join(" "));
    let done = run_limited(&config.path, &args, config.timeout)?;
    let Some(status) = done.status else {
        return Ok(SolverRun {
            verdict: Verdict::Unknown,
            model: None,
            wall_time: done.elapsed,
            timed_out: true,
            certificate: None,
        });
    };
    let code = status.code();
    if code.is_none() || !matches!(code, Some(0 | 10 | 20)) {
        return Err(HarnessError::Crash {
            status: code.map_or_else(|| "killed by signal".to_string(), |c| format!("exit code {c}")),
            output: tail(&format!("{}\n{}", done.stdout, done.stderr), 20),
        });
    }
    let (verdict, model) = parse_solver_output(&done.stdout)?;
    match (verdict, code) {
        (Verdict::Sat, Some(20)) | (Verdict::Unsat, Some(10)) => {
            return Err(HarnessError::Unparsable(format!("status line {verdict} contradicts exit code {code:?}")))
        }
        _ => {}
    }
    let certificate = match (verdict, proof) {
        (Verdict::Unsat, Some(p)) if p.is_file() => Some(p.to_path_buf()),
        (Verdict::Unsat, Some(p)) => {
            return Err(HarnessError::Crash {
                status: "exit code 20".into(),
                output: format!("certificate {} was not written", p.display()),
            })
        }
        _ => None,
    };
    Ok(SolverRun { verdict, model, wall_time: done.elapsed, timed_out: false, certificate })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofCheck {
    pub passed: bool,
    /// The file handed to the checker (may be a normalized copy).
    pub checked_file: PathBuf,
    pub output: String,
}

/// Copies `proof` to a `.drat` file without a leading `%...` header line
/// (as written by picosat's RUP traces) when needed; returns the path to hand to the checker.
pub fn normalize_proof(proof: &Path) -> Result<PathBuf, HarnessError> {
    let io = |e: std::io::Error| HarnessError::Io(format!("{}: {e}", proof.display()));
    let mut reader = BufReader::new(std::fs::File::open(proof).map_err(io)?);
    let mut first = String::new();
    reader.read_line(&mut first).map_err(io)?;
    let strip = first.starts_with('%');
    let is_drat = proof.extension().is_some_and(|e| e == "drat");
    if !strip && is_drat {
        return Ok(proof.to_path_buf());
    }
    let mut target = proof.with_extension("");
    target.as_mut_os_string().push(".normalized.drat");
    let mut out = std::io::BufWriter::new(std::fs::File::create(&target).map_err(io)?);
    if !strip {
        std::io::Write::write_all(&mut out, first.as_bytes()).map_err(io)?;
    }
    std::io::copy(&mut reader, &mut out).map_err(io)?;
    Ok(target)
}

/// Checks an UNSAT certificate. Passes iff the checker exits 0 and prints
/// `s VERIFIED`.
pub fn run_proof_check(
    config: &CheckerConfig,
    cnf: &Path,
    proof: &Path,
) -> Result<ProofCheck, HarnessError> {
    let checked = normalize_proof(proof)?;
    let args = substitute(&config.args, cnf, Some(&checked));
    let done = run_limited(&config.path, &args, config.timeout)?;
    let verified = done.stdout.lines().any(|l| l.trim() == "s VERIFIED");
    let passed = done.status.is_some_and(|s| s.success()) && verified;
    let mut output = tail(&done.stdout, 15);
    if done.status.is_none() {
        output.push_str("\n(checker timed out)");
    }
    Ok(ProofCheck { passed, checked_file: checked, output })
}
