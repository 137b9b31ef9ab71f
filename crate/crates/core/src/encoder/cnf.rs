use std::fmt;
use std::io::{self, Write};
use std::ops::Range;
use std::path::Path;

use super::problem::HoleProblem;
use super::registry::VarRegistry;
use super::EncodeError;

/// Constraint family a clause belongs to, numbered as in the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseGroup {
    Alternating,
    Signotope,
    SortedAroundFirst,
    BoundingSegments,
    GonsAndContainment,
    ThreeHoles,
    KHoles,
    /// Disjointness (L/R) in pair modes; plain prohibitions in forbid modes.
    Forbid,
    Hints,
    Cardinality,
}

impl ClauseGroup {
    pub const ALL: [ClauseGroup; 10] = [
        ClauseGroup::Alternating,
        ClauseGroup::Signotope,
        ClauseGroup::SortedAroundFirst,
        ClauseGroup::BoundingSegments,
        ClauseGroup::GonsAndContainment,
        ClauseGroup::ThreeHoles,
        ClauseGroup::KHoles,
        ClauseGroup::Forbid,
        ClauseGroup::Hints,
        ClauseGroup::Cardinality,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            ClauseGroup::Alternating => "alternating",
            ClauseGroup::Signotope => "signotope",
            ClauseGroup::SortedAroundFirst => "sorted-around-first",
            ClauseGroup::BoundingSegments => "bounding-segments",
            ClauseGroup::GonsAndContainment => "gons-and-containment",
            ClauseGroup::ThreeHoles => "three-holes",
            ClauseGroup::KHoles => "k-holes",
            ClauseGroup::Forbid => "forbid",
            ClauseGroup::Hints => "hints",
            ClauseGroup::Cardinality => "cardinality",
        }
    }
}

impl fmt::Display for ClauseGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.number(), self.name())
    }
}

/// Variables plus clauses, with the clause range of every group.
#[derive(Clone, Debug)]
pub struct CnfInstance {
    pub problem: HoleProblem,
    pub registry: VarRegistry,
    lits: Vec<i32>,
    /// End offset of every clause in `lits`.
    ends: Vec<usize>,
    groups: Vec<(ClauseGroup, Range<usize>)>,
}

impl CnfInstance {
    pub(crate) fn new(problem: HoleProblem, registry: VarRegistry) -> Self {
        CnfInstance { problem, registry, lits: Vec::new(), ends: Vec::new(), groups: Vec::new() }
    }

    pub(crate) fn begin_group(&mut self, group: ClauseGroup) {
        let at = self.ends.len();
        self.groups.push((group, at..at));
    }

    pub(crate) fn add(&mut self, clause: &[i32]) {
        debug_assert!(!clause.is_empty(), "empty clause");
        debug_assert!(clause.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= self.registry.len()));
        self.lits.extend_from_slice(clause);
        self.ends.push(self.lits.len());
        if let Some((_, r)) = self.groups.last_mut() {
            r.end = self.ends.len();
        }
    }

    /// `a == b`.
    pub(crate) fn add_equal(&mut self, a: i32, b: i32) {
        self.add(&[-a, b]);
        self.add(&[a, -b]);
    }

    /// `a != b`.
    pub(crate) fn add_unequal(&mut self, a: i32, b: i32) {
        self.add(&[a, b]);
        self.add(&[-a, -b]);
    }

    /// `v == AND(conj)` as one binary clause per conjunct plus one long clause.
    pub(crate) fn add_and(&mut self, v: i32, conj: &[i32]) {
        for &c in conj {
            self.add(&[-v, c]);
        }
        let mut long: Vec<i32> = conj.iter().map(|&c| -c).collect();
        long.push(v);
        self.add(&long);
    }

    pub fn num_vars(&self) -> usize {
        self.registry.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.ends.len()
    }

    pub fn clause(&self, i: usize) -> &[i32] {
        let start = if i == 0 { 0 } else { self.ends[i - 1] };
        &self.lits[start..self.ends[i]]
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[i32]> {
        (0..self.ends.len()).map(move |i| self.clause(i))
    }

    /// Clause ranges per group, in emission order (empty groups omitted).
    pub fn groups(&self) -> impl Iterator<Item = (ClauseGroup, Range<usize>)> + '_ {
        self.groups.iter().filter(|(_, r)| !r.is_empty()).cloned()
    }

    pub fn group_count(&self, group: ClauseGroup) -> usize {
        self.groups.iter().filter(|(g, _)| *g == group).map(|(_, r)| r.len()).sum()
    }

    pub fn group_of(&self, clause: usize) -> Option<ClauseGroup> {
        self.groups.iter().find(|(_, r)| r.contains(&clause)).map(|(g, _)| *g)
    }

    pub fn write_dimacs(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "c problem: {}", self.problem)?;
        for (group, range) in self.groups() {
            writeln!(w, "c group {} {}: {} clauses", group.number(), group.name(), range.len())?;
        }
        for (family, count) in self.registry.family_counts() {
            writeln!(w, "c vars {family}: {count}")?;
        }
        writeln!(w, "c layout: variable tags are listed in the registry sidecar")?;
        writeln!(w, "p cnf {} {}", self.num_vars(), self.num_clauses())?;
        let mut line = String::new();
        for clause in self.clauses() {
            line.clear();
            for l in clause {
                line.push_str(&l.to_string());
                line.push(' ');
            }
            line.push_str("0\n");
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn to_dimacs(&self) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Writes `<path>` and the registry sidecar `<path>.vars`.
    pub fn write_files(&self, path: &Path) -> Result<(), EncodeError> {
        let file = std::fs::File::create(path).map_err(|e| EncodeError::Io(format!("{}: {e}", path.display())))?;
        self.write_dimacs(io::BufWriter::new(file))
            .map_err(|e| EncodeError::Io(format!("{}: {e}", path.display())))?;
        let side = sidecar_path(path);
        std::fs::write(&side, self.registry.to_text())
            .map_err(|e| EncodeError::Io(format!("{}: {e}", side.display())))?;
        Ok(())
    }
}

/// Registry sidecar next to a DIMACS file.
pub fn sidecar_path(cnf: &Path) -> std::path::PathBuf {
    let mut s = cnf.as_os_str().to_owned();
    s.push(".vars");
    s.into()
}

/// The `HoleProblem` recorded in a DIMACS header comment.
pub fn read_problem_comment(dimacs: &str) -> Result<HoleProblem, EncodeError> {
    for line in dimacs.lines() {
        if let Some(rest) = line.strip_prefix("c problem:") {
            return rest.trim().parse();
        }
        if line.starts_with('p') {
            break;
        }
    }
    Err(EncodeError::InvalidProblem("no `c problem:` comment before the header".into()))
}

/// Bare clause list and variable count from DIMACS text.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>), EncodeError> {
    let mut vars = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let nums: Vec<usize> = rest.split_whitespace().filter_map(|t| t.parse().ok()).collect();
            if nums.len() != 2 {
                return Err(EncodeError::Dimacs(format!("line {}: bad header", lineno + 1)));
            }
            vars = Some(nums[0]);
            continue;
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| EncodeError::Dimacs(format!("line {}: bad literal {tok:?}", lineno + 1)))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let vars = vars.ok_or_else(|| EncodeError::Dimacs("missing `p cnf` header".into()))?;
    Ok((vars, clauses))
}
