//! Variable allocation and clause emission for every constraint family.

use std::collections::HashMap;

use crate::combin::{binomial, subsets};

use super::cnf::{ClauseGroup, CnfInstance};
use super::problem::{Encoding, HoleProblem, Mode};
use super::registry::{VarRegistry, VarTag};
use super::EncodeError;

/// Which points a side witness must keep strictly on its side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SideRule {
    /// `a ∈ X`, `b ∉ X`; test `X \ {a}` (mirrored for R).
    Strict,
    /// `b ∉ X`; test `X \ {a}` (mirrored for R).
    Relaxed,
    /// Any `X`; test `X \ {a, b}`.
    Interior,
}

impl SideRule {
    pub(crate) fn of(problem: &HoleProblem) -> SideRule {
        match problem.mode {
            Mode::TwoInteriorDisjointHoles { .. } => SideRule::Interior,
            _ if problem.relaxed_lr => SideRule::Relaxed,
            _ => SideRule::Strict,
        }
    }

    /// Points of `x` whose side is tested for a left witness at `(a, b)`,
    /// or `None` if `x` is not eligible.
    pub(crate) fn left_points(self, x: &[usize], a: usize, b: usize) -> Option<Vec<usize>> {
        match self {
            SideRule::Strict if !x.contains(&a) || x.contains(&b) => None,
            SideRule::Relaxed if x.contains(&b) => None,
            SideRule::Interior => Some(x.iter().copied().filter(|&c| c != a && c != b).collect()),
            _ => Some(x.iter().copied().filter(|&c| c != a).collect()),
        }
    }

    /// Same for a right witness: the roles of `a` and `b` swap.
    pub(crate) fn right_points(self, x: &[usize], a: usize, b: usize) -> Option<Vec<usize>> {
        self.left_points(x, b, a)
    }
}

/// Dense lookup tables from tuples to literals, filled during allocation.
pub(crate) struct Lits {
    n: usize,
    o: Vec<i32>,
    e: Vec<i32>,
    g4: Vec<i32>,
    i: Vec<i32>,
    h3: Vec<i32>,
    holes: HashMap<Vec<usize>, i32>,
    gons: HashMap<Vec<usize>, i32>,
    /// `(k, a, b) -> (L, R)`.
    lr: HashMap<(usize, usize, usize), (i32, i32)>,
    /// Counter registers, `counter[i][j]`.
    counter: Vec<Vec<i32>>,
}

impl Lits {
    #[inline]
    fn i3(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    #[inline]
    fn i4(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    /// Literal for "`(a, b, c)` positively oriented", any index order.
    #[inline]
    pub(crate) fn o(&self, a: usize, b: usize, c: usize) -> i32 {
        self.o[self.i3(a, b, c)]
    }

    pub(crate) fn e(&self, a: usize, b: usize, c: usize, d: usize) -> i32 {
        self.e[self.i4(a, b, c, d)]
    }

    pub(crate) fn g4(&self, x: &[usize]) -> i32 {
        self.g4[self.i4(x[0], x[1], x[2], x[3])]
    }

    /// `I(i; a, b, c)` for `a < i < c`, `i != b`.
    pub(crate) fn inside(&self, i: usize, a: usize, b: usize, c: usize) -> i32 {
        self.i[self.i4(i, a, b, c)]
    }

    pub(crate) fn h3(&self, x: &[usize]) -> i32 {
        self.h3[self.i3(x[0], x[1], x[2])]
    }

    /// Hole literal for a sorted subset; `None` for pairs (always holes).
    pub(crate) fn hole(&self, x: &[usize]) -> Option<i32> {
        match x.len() {
            0..=2 => None,
            3 => Some(self.h3(x)),
            _ => Some(self.holes[x]),
        }
    }

    pub(crate) fn gon(&self, x: &[usize]) -> i32 {
        match x.len() {
            4 => self.g4(x),
            _ => self.gons[x],
        }
    }

    pub(crate) fn lr(&self, k: usize, a: usize, b: usize) -> (i32, i32) {
        self.lr[&(k, a, b)]
    }
}

fn alloc_all(problem: &HoleProblem) -> (VarRegistry, Lits) {
    let n = problem.n;
    let mut reg = VarRegistry::new();
    let mut lits = Lits {
        n,
        o: vec![0; n * n * n],
        e: vec![],
        g4: vec![],
        i: vec![],
        h3: vec![],
        holes: HashMap::new(),
        gons: HashMap::new(),
        lr: HashMap::new(),
        counter: vec![],
    };
    let gon_mode = problem.is_gon_mode();
    let hole_mode = !gon_mode;
    let needs_g4 = gon_mode || !problem.simplified_holes && problem.mode.sizes().iter().any(|&k| k >= 4);

    for t in subsets(n, 3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let even = [(a, b, c), (b, c, a), (c, a, b)];
        let odd = [(b, a, c), (a, c, b), (c, b, a)];
        match problem.encoding {
            Encoding::PaperFaithful => {
                for (x, y, z) in even.into_iter().chain(odd) {
                    let v = reg.alloc(VarTag::O(x, y, z));
                    let at = lits.i3(x, y, z);
                    lits.o[at] = v;
                }
            }
            Encoding::Compact => {
                let v = reg.alloc(VarTag::O(a, b, c));
                for (x, y, z) in even {
                    let at = lits.i3(x, y, z);
                    lits.o[at] = v;
                }
                for (x, y, z) in odd {
                    let at = lits.i3(x, y, z);
                    lits.o[at] = -v;
                }
            }
        }
    }

    let n4 = n * n * n * n;
    lits.e = vec![0; n4];
    for t in subsets(n, 4) {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let v1 = reg.alloc(VarTag::E(a, b, c, d));
        let v2 = reg.alloc(VarTag::E(c, d, a, b));
        let (i1, i2) = (lits.i4(a, b, c, d), lits.i4(c, d, a, b));
        lits.e[i1] = v1;
        lits.e[i2] = v2;
    }
    if needs_g4 {
        lits.g4 = vec![0; n4];
        for t in subsets(n, 4) {
            let v = reg.alloc(VarTag::G4([t[0], t[1], t[2], t[3]]));
            let at = lits.i4(t[0], t[1], t[2], t[3]);
            lits.g4[at] = v;
        }
    }
    if hole_mode {
        lits.i = vec![0; n4];
        for t in subsets(n, 4) {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            let vb = reg.alloc(VarTag::I(b, [a, c, d]));
            let vc = reg.alloc(VarTag::I(c, [a, b, d]));
            let (ib, ic) = (lits.i4(b, a, c, d), lits.i4(c, a, b, d));
            lits.i[ib] = vb;
            lits.i[ic] = vc;
        }
        lits.h3 = vec![0; n * n * n];
        for t in subsets(n, 3) {
            let v = reg.alloc(VarTag::H3([t[0], t[1], t[2]]));
            let at = lits.i3(t[0], t[1], t[2]);
            lits.h3[at] = v;
        }
    }
    for k in problem.distinct_sizes() {
        if hole_mode && k >= 4 {
            for x in subsets(n, k) {
                let v = reg.alloc(VarTag::Hole(x.clone()));
                lits.holes.insert(x, v);
            }
        }
        if gon_mode && k >= 5 {
            for x in subsets(n, k) {
                let v = reg.alloc(VarTag::Gon(x.clone()));
                lits.gons.insert(x, v);
            }
        }
    }
    if problem.is_disjoint_mode() {
        for k in problem.distinct_sizes() {
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        let l = reg.alloc(VarTag::L(k, a, b));
                        let r = reg.alloc(VarTag::R(k, a, b));
                        lits.lr.insert((k, a, b), (l, r));
                    }
                }
            }
        }
    }
    if let Mode::CountHoles { k, threshold } = problem.mode {
        let m = binomial(n, k) as usize;
        let bound = threshold - 1;
        if bound > 0 && m > bound {
            lits.counter = (0..m - 1)
                .map(|i| (0..bound).map(|j| reg.alloc(VarTag::C(i, j))).collect())
                .collect();
        }
    }
    (reg, lits)
}

/// Literals counted in count mode, in lexicographic subset order.
pub(crate) fn counted_literals(problem: &HoleProblem, lits: &Lits) -> Vec<i32> {
    match problem.mode {
        Mode::CountHoles { k, .. } => subsets(problem.n, k).map(|x| lits.hole(&x).expect("k >= 3")).collect(),
        _ => vec![],
    }
}

/// Compiles a problem into CNF. Deterministic: equal problems give
/// byte-identical DIMACS.
pub fn build_instance(problem: &HoleProblem) -> Result<CnfInstance, EncodeError> {
    problem.validate()?;
    let (reg, lits) = alloc_all(problem);
    let mut cnf = CnfInstance::new(problem.clone(), reg);
    emit_orientation_axioms(problem, &lits, &mut cnf);
    emit_hole_definitions(problem, &lits, &mut cnf);
    emit_forbidden(problem, &lits, &mut cnf);
    emit_hints(problem, &lits, &mut cnf)?;
    emit_cardinality(problem, &lits, &mut cnf);
    Ok(cnf)
}

/// Rebuilds the literal tables for an existing problem (used when decoding
/// and evaluating assignments).
pub(crate) fn literal_tables(problem: &HoleProblem) -> Result<(VarRegistry, Lits), EncodeError> {
    problem.validate()?;
    Ok(alloc_all(problem))
}

fn emit_orientation_axioms(problem: &HoleProblem, lits: &Lits, cnf: &mut CnfInstance) {
    let n = problem.n;
    if problem.encoding == Encoding::PaperFaithful {
        cnf.begin_group(ClauseGroup::Alternating);
        for t in subsets(n, 3) {
            let (a, b, c) = (t[0], t[1], t[2]);
            let v = [
                lits.o(a, b, c),
                lits.o(b, c, a),
                lits.o(c, a, b),
                lits.o(b, a, c),
                lits.o(a, c, b),
                lits.o(c, b, a),
            ];
            cnf.add_equal(v[0], v[1]);
            cnf.add_equal(v[1], v[2]);
            cnf.add_unequal(v[2], v[3]);
            cnf.add_equal(v[3], v[4]);
            cnf.add_equal(v[4], v[5]);
        }
    }
    cnf.begin_group(ClauseGroup::Signotope);
    for t in subsets(n, 4) {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let seq = [lits.o(a, b, c), lits.o(a, b, d), lits.o(a, c, d), lits.o(b, c, d)];
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            cnf.add(&[seq[i], -seq[j], seq[k]]);
            cnf.add(&[-seq[i], seq[j], -seq[k]]);
        }
    }
    cnf.begin_group(ClauseGroup::SortedAroundFirst);
    for a in 1..n {
        for b in a + 1..n {
            cnf.add(&[lits.o(0, a, b)]);
        }
    }
}

fn emit_hole_definitions(problem: &HoleProblem, lits: &Lits, cnf: &mut CnfInstance) {
    let n = problem.n;
    let gon_mode = problem.is_gon_mode();

    cnf.begin_group(ClauseGroup::BoundingSegments);
    for t in subsets(n, 4) {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        for (p, q, r, s) in [(a, b, c, d), (c, d, a, b)] {
            let e = lits.e(p, q, r, s);
            let (x, y) = (lits.o(p, q, r), lits.o(p, q, s));
            cnf.add(&[-e, x, -y]);
            cnf.add(&[-e, -x, y]);
            cnf.add(&[e, x, y]);
            cnf.add(&[e, -x, -y]);
        }
    }

    cnf.begin_group(ClauseGroup::GonsAndContainment);
    for t in subsets(n, 4) {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let (e1, e2) = (lits.e(a, b, c, d), lits.e(c, d, a, b));
        if !lits.g4.is_empty() {
            cnf.add_and(lits.g4(&t), &[e1, e2]);
        }
        if !gon_mode {
            cnf.add_and(lits.inside(b, a, c, d), &[-e1, e2]);
            cnf.add_and(lits.inside(c, a, b, d), &[e1, -e2]);
        }
    }

    if !gon_mode {
        cnf.begin_group(ClauseGroup::ThreeHoles);
        for t in subsets(n, 3) {
            let (a, b, c) = (t[0], t[1], t[2]);
            let outside: Vec<i32> = (a + 1..c).filter(|&i| i != b).map(|i| -lits.inside(i, a, b, c)).collect();
            cnf.add_and(lits.h3(&t), &outside);
        }
    }

    cnf.begin_group(ClauseGroup::KHoles);
    for k in problem.distinct_sizes() {
        if gon_mode && k >= 5 {
            for x in subsets(n, k) {
                let conj: Vec<i32> = subsets(k, 4).map(|y| lits.g4(&pick(&x, &y))).collect();
                cnf.add_and(lits.gon(&x), &conj);
            }
        } else if !gon_mode && k >= 4 {
            for x in subsets(n, k) {
                let mut conj = Vec::new();
                if !problem.simplified_holes {
                    conj.extend(subsets(k, 4).map(|y| lits.g4(&pick(&x, &y))));
                }
                conj.extend(subsets(k, 3).map(|y| lits.h3(&pick(&x, &y))));
                cnf.add_and(lits.hole(&x).expect("k >= 4"), &conj);
            }
        }
    }
}

fn pick(x: &[usize], idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|&i| x[i]).collect()
}

fn emit_forbidden(problem: &HoleProblem, lits: &Lits, cnf: &mut CnfInstance) {
    let n = problem.n;
    cnf.begin_group(ClauseGroup::Forbid);
    match problem.mode {
        Mode::ForbidHole { k } => {
            for x in subsets(n, k) {
                cnf.add(&[-lits.hole(&x).expect("k >= 3")]);
            }
        }
        Mode::ForbidGon { k } => {
            for x in subsets(n, k) {
                cnf.add(&[-lits.gon(&x)]);
            }
        }
        Mode::TwoDisjointHoles { k1, k2 } | Mode::TwoInteriorDisjointHoles { k1, k2 } => {
            let rule = SideRule::of(problem);
            let sizes = problem.distinct_sizes();
            let by_size: Vec<(usize, Vec<Vec<usize>>)> = sizes.iter().map(|&k| (k, subsets(n, k).collect())).collect();
            let mut clause = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    for (k, xs) in &by_size {
                        let (l, r) = lits.lr(*k, a, b);
                        for x in xs {
                            if let Some(pts) = rule.left_points(x, a, b) {
                                clause.clear();
                                clause.push(l);
                                clause.extend(lits.hole(x).map(|h| -h));
                                clause.extend(pts.iter().map(|&c| -lits.o(a, b, c)));
                                cnf.add(&clause);
                            }
                        }
                        for x in xs {
                            if let Some(pts) = rule.right_points(x, a, b) {
                                clause.clear();
                                clause.push(r);
                                clause.extend(lits.hole(x).map(|h| -h));
                                clause.extend(pts.iter().map(|&c| lits.o(a, b, c)));
                                cnf.add(&clause);
                            }
                        }
                    }
                    let (l1, _) = lits.lr(k1, a, b);
                    let (_, r2) = lits.lr(k2, a, b);
                    cnf.add(&[-l1, -r2]);
                    if k1 != k2 {
                        let (l2, _) = lits.lr(k2, a, b);
                        let (_, r1) = lits.lr(k1, a, b);
                        cnf.add(&[-l2, -r1]);
                    }
                }
            }
        }
        Mode::CountHoles { .. } => {}
    }
}

/// Harborth windows (and, for disjoint pairs, the prefix/suffix exclusions
/// they imply).
fn emit_hints(problem: &HoleProblem, lits: &Lits, cnf: &mut CnfInstance) -> Result<(), EncodeError> {
    if !problem.hints {
        return Ok(());
    }
    let n = problem.n;
    cnf.begin_group(ClauseGroup::Hints);
    if n >= 10 {
        for start in 0..=n - 10 {
            let window: Vec<usize> = (start..start + 10).collect();
            let clause: Vec<i32> = subsets(10, 5).map(|y| lits.hole(&pick(&window, &y)).expect("k = 5")).collect();
            cnf.add(&clause);
        }
    }
    // A 5-hole left of the last ten points (or right of the first ten) is
    // disjoint from the 5-hole those ten points must contain.
    if matches!(problem.mode, Mode::TwoDisjointHoles { .. }) && n >= 15 {
        let prefix: Vec<usize> = (0..n - 10).collect();
        let suffix: Vec<usize> = (10..n).collect();
        for part in [prefix, suffix] {
            for y in subsets(part.len(), 5) {
                cnf.add(&[-lits.hole(&pick(&part, &y)).expect("k = 5")]);
            }
        }
    }
    Ok(())
}

/// Sequential counter: at most `threshold - 1` of the counted literals.
fn emit_cardinality(problem: &HoleProblem, lits: &Lits, cnf: &mut CnfInstance) {
    let Mode::CountHoles { threshold, .. } = problem.mode else { return };
    let xs = counted_literals(problem, lits);
    let bound = threshold - 1;
    cnf.begin_group(ClauseGroup::Cardinality);
    if bound == 0 {
        for &x in &xs {
            cnf.add(&[-x]);
        }
        return;
    }
    if lits.counter.is_empty() {
        return;
    }
    let m = xs.len();
    let s = &lits.counter;
    cnf.add(&[-xs[0], s[0][0]]);
    for &sj in &s[0][1..bound] {
        cnf.add(&[-sj]);
    }
    for i in 1..m - 1 {
        cnf.add(&[-xs[i], s[i][0]]);
        cnf.add(&[-s[i - 1][0], s[i][0]]);
        for j in 1..bound {
            cnf.add(&[-xs[i], -s[i - 1][j - 1], s[i][j]]);
            cnf.add(&[-s[i - 1][j], s[i][j]]);
        }
        cnf.add(&[-xs[i], -s[i - 1][bound - 1]]);
    }
    cnf.add(&[-xs[m - 1], -s[m - 2][bound - 1]]);
}
