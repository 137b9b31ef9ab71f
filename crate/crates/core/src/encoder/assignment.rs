//! Assignments derived from a signotope, and clause evaluation.

use crate::combin::subsets;
use crate::geometry::Signotope;

use super::cnf::{ClauseGroup, CnfInstance};
use super::families::{counted_literals, literal_tables, SideRule};
use super::problem::Mode;
use super::registry::VarTag;
use super::EncodeError;

/// Truth values indexed by variable id (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(num_vars: usize) -> Self {
        Assignment { values: vec![false; num_vars + 1] }
    }

    /// From solver model literals; unmentioned variables stay false.
    pub fn from_model(num_vars: usize, model: &[i32]) -> Self {
        let mut a = Self::new(num_vars);
        for &l in model {
            let v = l.unsigned_abs() as usize;
            if v <= num_vars {
                a.values[v] = l > 0;
            }
        }
        a
    }

    pub fn num_vars(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn var(&self, id: u32) -> bool {
        self.values[id as usize]
    }

    #[inline]
    pub fn lit(&self, lit: i32) -> bool {
        self.values[lit.unsigned_abs() as usize] == (lit > 0)
    }

    pub fn set(&mut self, id: u32, value: bool) {
        self.values[id as usize] = value;
    }

    pub fn satisfies(&self, clause: &[i32]) -> bool {
        clause.iter().any(|&l| self.lit(l))
    }
}

/// Unsatisfied clauses of one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupViolation {
    pub group: ClauseGroup,
    pub count: usize,
    pub first: Vec<i32>,
}

/// Every group with at least one clause falsified by `assignment`.
pub fn evaluate(instance: &CnfInstance, assignment: &Assignment) -> Vec<GroupViolation> {
    let mut out: Vec<GroupViolation> = Vec::new();
    for (group, range) in instance.groups() {
        for i in range {
            let clause = instance.clause(i);
            if !assignment.satisfies(clause) {
                match out.iter_mut().find(|v| v.group == group) {
                    Some(v) => v.count += 1,
                    None => out.push(GroupViolation { group, count: 1, first: clause.to_vec() }),
                }
            }
        }
    }
    out
}

/// Sets orientation variables from `sig` and every auxiliary variable to the
/// value its defining formula takes.
pub fn full_assignment(instance: &CnfInstance, sig: &Signotope) -> Result<Assignment, EncodeError> {
    let problem = &instance.problem;
    if sig.n() != problem.n {
        return Err(EncodeError::SizeMismatch { expected: problem.n, got: sig.n() });
    }
    let (_, lits) = literal_tables(problem)?;
    let reg = &instance.registry;
    let mut asg = Assignment::new(reg.len());
    let rule = SideRule::of(problem);

    for (v, tag) in reg.iter() {
        let value = match tag {
            VarTag::O(a, b, c) => sig.is_positive(*a, *b, *c),
            VarTag::E(a, b, c, d) => asg.lit(lits.o(*a, *b, *c)) == asg.lit(lits.o(*a, *b, *d)),
            VarTag::G4(x) => asg.lit(lits.e(x[0], x[1], x[2], x[3])) && asg.lit(lits.e(x[2], x[3], x[0], x[1])),
            VarTag::I(i, [p, q, r]) => {
                let mut t = [*i, *p, *q, *r];
                t.sort_unstable();
                let e1 = asg.lit(lits.e(t[0], t[1], t[2], t[3]));
                let e2 = asg.lit(lits.e(t[2], t[3], t[0], t[1]));
                if *i == t[1] {
                    !e1 && e2
                } else {
                    e1 && !e2
                }
            }
            VarTag::H3([a, b, c]) => (a + 1..*c).filter(|i| i != b).all(|i| !asg.lit(lits.inside(i, *a, *b, *c))),
            VarTag::Hole(x) => {
                let k = x.len();
                let gons = problem.simplified_holes
                    || subsets(k, 4).all(|y| asg.lit(lits.g4(&y.iter().map(|&i| x[i]).collect::<Vec<_>>())));
                gons && subsets(k, 3).all(|y| asg.lit(lits.h3(&y.iter().map(|&i| x[i]).collect::<Vec<_>>())))
            }
            VarTag::Gon(x) => {
                subsets(x.len(), 4).all(|y| asg.lit(lits.g4(&y.iter().map(|&i| x[i]).collect::<Vec<_>>())))
            }
            VarTag::L(k, a, b) => subsets(problem.n, *k).any(|x| {
                rule.left_points(&x, *a, *b).is_some_and(|pts| {
                    lits.hole(&x).is_none_or(|h| asg.lit(h)) && pts.iter().all(|&c| asg.lit(lits.o(*a, *b, c)))
                })
            }),
            VarTag::R(k, a, b) => subsets(problem.n, *k).any(|x| {
                rule.right_points(&x, *a, *b).is_some_and(|pts| {
                    lits.hole(&x).is_none_or(|h| asg.lit(h)) && pts.iter().all(|&c| !asg.lit(lits.o(*a, *b, c)))
                })
            }),
            // Registers are filled below, once all counted literals are known.
            VarTag::C(..) => false,
        };
        asg.set(v, value);
    }

    if let Mode::CountHoles { .. } = problem.mode {
        let xs = counted_literals(problem, &lits);
        let mut count = 0usize;
        for (i, &x) in xs.iter().enumerate() {
            count += asg.lit(x) as usize;
            let mut j = 0;
            while let Some(v) = reg.id(&VarTag::C(i, j)) {
                asg.set(v, count > j);
                j += 1;
            }
        }
    }
    Ok(asg)
}

/// Orientation map read back from a model's orientation variables.
///
/// With six variables per triple, all six must agree.
pub fn decode_signotope(instance: &CnfInstance, assignment: &Assignment) -> Result<Signotope, EncodeError> {
    let problem = &instance.problem;
    let (_, lits) = literal_tables(problem)?;
    let n = problem.n;
    for t in subsets(n, 3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let base = assignment.lit(lits.o(a, b, c));
        let perms = [(b, c, a, true), (c, a, b, true), (b, a, c, false), (a, c, b, false), (c, b, a, false)];
        for (x, y, z, same) in perms {
            if assignment.lit(lits.o(x, y, z)) != (base == same) {
                return Err(EncodeError::InconsistentOrientation(a + 1, b + 1, c + 1));
            }
        }
    }
    Ok(Signotope::from_fn(n, |a, b, c| assignment.lit(lits.o(a, b, c))))
}
