//! Semantic check of a decoded model, from triple orientations alone.
//!
//! Nothing here reuses the clause structure: holes are sets all of whose
//! triangles are empty, and (interior-)disjointness is the existence of a
//! separating pair.

use std::fmt;

use serde::Serialize;

use crate::combin::subsets;
use crate::encoder::{HoleProblem, Mode};
use crate::geometry::{check_signotope, Signotope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Counterexample {
    /// 1-based 4-tuple breaking the signotope axioms.
    Axiom([usize; 4]),
    /// A triple `(1, a, b)` that is not positive.
    NotSorted(usize, usize),
    Hole(Vec<usize>),
    Gon(Vec<usize>),
    Pair(Vec<usize>, Vec<usize>),
    /// Number of `k`-holes found, at or above the threshold.
    HoleCount(usize),
}

fn labels(x: &[usize]) -> String {
    let v: Vec<String> = x.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Axiom(t) => write!(f, "signotope axiom violated on {}", labels(t)),
            Counterexample::NotSorted(a, b) => write!(f, "triple (1,{a},{b}) is not positive"),
            Counterexample::Hole(x) => write!(f, "forbidden hole {}", labels(x)),
            Counterexample::Gon(x) => write!(f, "forbidden gon {}", labels(x)),
            Counterexample::Pair(x, y) => write!(f, "forbidden pair {} and {}", labels(x), labels(y)),
            Counterexample::HoleCount(c) => write!(f, "{c} holes reach the threshold"),
        }
    }
}

fn one_based(x: &[usize]) -> Vec<usize> {
    x.iter().map(|i| i + 1).collect()
}

/// Point `i` strictly inside triangle `abc`.
fn inside(sig: &Signotope, i: usize, a: usize, b: usize, c: usize) -> bool {
    let s = sig.sign(a, b, c);
    sig.sign(a, b, i) == s && sig.sign(b, c, i) == s && sig.sign(c, a, i) == s
}

fn triangle_empty(sig: &Signotope, a: usize, b: usize, c: usize) -> bool {
    (0..sig.n()).all(|i| i == a || i == b || i == c || !inside(sig, i, a, b, c))
}

fn is_abstract_hole(sig: &Signotope, empty: &[bool], x: &[usize]) -> bool {
    let n = sig.n();
    subsets(x.len(), 3).all(|t| empty[(x[t[0]] * n + x[t[1]]) * n + x[t[2]]])
}

fn is_abstract_gon(sig: &Signotope, x: &[usize]) -> bool {
    x.iter().all(|&p| {
        let rest: Vec<usize> = x.iter().copied().filter(|&q| q != p).collect();
        subsets(rest.len(), 3).all(|t| !inside(sig, p, rest[t[0]], rest[t[1]], rest[t[2]]))
    })
}

/// All abstract `k`-holes (every pair for `k = 2`).
pub fn abstract_holes(sig: &Signotope, k: usize) -> Vec<Vec<usize>> {
    let n = sig.n();
    let mut empty = vec![false; n * n * n];
    for t in subsets(n, 3) {
        empty[(t[0] * n + t[1]) * n + t[2]] = triangle_empty(sig, t[0], t[1], t[2]);
    }
    subsets(n, k).filter(|x| is_abstract_hole(sig, &empty, x)).collect()
}

/// Some `a ∈ x1`, `b ∈ x2` with `x1 \ a` strictly on one side of `ab` and
/// `x2 \ b` strictly on the other.
pub fn abstract_disjoint(sig: &Signotope, x1: &[usize], x2: &[usize]) -> bool {
    x1.iter().any(|&a| {
        x2.iter().any(|&b| {
            [1i8, -1].into_iter().any(|s| {
                x1.iter().all(|&x| x == a || sig.sign(a, b, x) == s)
                    && x2.iter().all(|&y| y == b || sig.sign(a, b, y) == -s)
            })
        })
    })
}

/// Some ordered pair `(a, b)` of points with `x1 \ {a,b}` strictly left and
/// `x2 \ {a,b}` strictly right of `a -> b`.
pub fn abstract_interior_disjoint(sig: &Signotope, x1: &[usize], x2: &[usize]) -> bool {
    let n = sig.n();
    (0..n).any(|a| {
        (0..n).any(|b| {
            a != b
                && x1.iter().all(|&x| x == a || x == b || sig.sign(a, b, x) > 0)
                && x2.iter().all(|&y| y == a || y == b || sig.sign(a, b, y) < 0)
        })
    })
}

/// `Ok(())` if `sig` is a signotope sorted around its first point that
/// avoids the structure `problem` forbids; otherwise the offending tuple
/// (1-based).
pub fn verify_model(sig: &Signotope, problem: &HoleProblem) -> Result<(), Counterexample> {
    if let Some(t) = check_signotope(sig).first() {
        return Err(Counterexample::Axiom([t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1]));
    }
    let n = sig.n();
    for a in 1..n {
        for b in a + 1..n {
            if !sig.is_positive(0, a, b) {
                return Err(Counterexample::NotSorted(a + 1, b + 1));
            }
        }
    }
    match problem.mode {
        Mode::ForbidHole { k } => match abstract_holes(sig, k).first() {
            Some(x) => Err(Counterexample::Hole(one_based(x))),
            None => Ok(()),
        },
        Mode::ForbidGon { k } => match subsets(n, k).find(|x| is_abstract_gon(sig, x)) {
            Some(x) => Err(Counterexample::Gon(one_based(&x))),
            None => Ok(()),
        },
        Mode::CountHoles { k, threshold } => {
            let c = abstract_holes(sig, k).len();
            if c >= threshold {
                Err(Counterexample::HoleCount(c))
            } else {
                Ok(())
            }
        }
        Mode::TwoDisjointHoles { k1, k2 } | Mode::TwoInteriorDisjointHoles { k1, k2 } => {
            let interior = matches!(problem.mode, Mode::TwoInteriorDisjointHoles { .. });
            let h1 = abstract_holes(sig, k1);
            let h2 = if k2 == k1 { h1.clone() } else { abstract_holes(sig, k2) };
            for x in &h1 {
                for y in &h2 {
                    let separated =
                        if interior { abstract_interior_disjoint(sig, x, y) } else { abstract_disjoint(sig, x, y) };
                    if separated {
                        return Err(Counterexample::Pair(one_based(x), one_based(y)));
                    }
                }
            }
            Ok(())
        }
    }
}
