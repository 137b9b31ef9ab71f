//! Test-side oracles. Nothing here calls the crate's hole or disjointness
//! code; everything is brute force on coordinates.
#![allow(dead_code)]

use holesat::geometry::{PointSet, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type P = (i64, i64);

pub fn cross(o: P, a: P, b: P) -> i128 {
    (a.0 as i128 - o.0 as i128) * (b.1 as i128 - o.1 as i128) - (a.1 as i128 - o.1 as i128) * (b.0 as i128 - o.0 as i128)
}

pub fn strictly_in_triangle(p: P, a: P, b: P, c: P) -> bool {
    let (d1, d2, d3) = (cross(a, b, p), cross(b, c, p), cross(c, a, p));
    (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0)
}

pub fn segments_cross(a: P, b: P, c: P, d: P) -> bool {
    let s = |x: i128| x.signum();
    s(cross(a, b, c)) * s(cross(a, b, d)) < 0 && s(cross(c, d, a)) * s(cross(c, d, b)) < 0
}

/// Random general-position integer sets, deterministic in `seed`.
pub fn random_sets(seed: u64, count: usize, n_range: std::ops::RangeInclusive<usize>, span: i64) -> Vec<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(n_range.clone());
        let coords: Vec<P> = (0..n).map(|_| (rng.random_range(-span..=span), rng.random_range(-span..=span))).collect();
        if let Ok(s) = PointSet::from_coords(&coords) {
            out.push(s);
        }
    }
    out
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// No point of `x` lies in a triangle spanned by three others.
pub fn convex_position(c: &[P], x: &[usize]) -> bool {
    x.iter().all(|&p| {
        subsets(x.len(), 3).iter().all(|t| {
            let (a, b, d) = (x[t[0]], x[t[1]], x[t[2]]);
            p == a || p == b || p == d || !strictly_in_triangle(c[p], c[a], c[b], c[d])
        })
    })
}

/// Convex position and no other point of the set in the hull, tested by
/// fanning the hull from its first vertex (general position keeps points
/// off the diagonals).
pub fn brute_hole(c: &[P], x: &[usize]) -> bool {
    if x.len() < 3 {
        return true;
    }
    if !convex_position(c, x) {
        return false;
    }
    let hull = ccw_hull(c, x);
    (0..c.len()).filter(|i| !x.contains(i)).all(|q| {
        (1..hull.len() - 1).all(|j| !strictly_in_triangle(c[q], c[hull[0]], c[hull[j]], c[hull[j + 1]]))
    })
}

/// Counterclockwise hull (gift wrapping) of a subset in general position.
pub fn ccw_hull(c: &[P], x: &[usize]) -> Vec<usize> {
    let start = *x.iter().min_by_key(|&&i| c[i]).unwrap();
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut next = *x.iter().find(|&&i| i != cur).unwrap();
        for &i in x {
            if i != cur && cross(c[cur], c[next], c[i]) < 0 {
                next = i;
            }
        }
        if next == start {
            break;
        }
        hull.push(next);
        cur = next;
    }
    hull
}

/// Closed hulls meet iff a shared point, a crossing pair of segments, or a
/// point in a triangle of the other set exists (at most four points are
/// ever needed in the plane).
pub fn closed_hulls_meet(c: &[P], x1: &[usize], x2: &[usize]) -> bool {
    if x1.iter().any(|i| x2.contains(i)) {
        return true;
    }
    let pairs = |x: &[usize]| -> Vec<(usize, usize)> { subsets(x.len(), 2).iter().map(|s| (x[s[0]], x[s[1]])).collect() };
    let tris = |x: &[usize]| -> Vec<[usize; 3]> { subsets(x.len(), 3).iter().map(|s| [x[s[0]], x[s[1]], x[s[2]]]).collect() };
    for (a, b) in pairs(x1) {
        for (d, e) in pairs(x2) {
            if segments_cross(c[a], c[b], c[d], c[e]) {
                return true;
            }
        }
    }
    let inside = |xs: &[usize], ys: &[usize]| {
        xs.iter().any(|&p| tris(ys).iter().any(|t| strictly_in_triangle(c[p], c[t[0]], c[t[1]], c[t[2]])))
    };
    inside(x1, x2) || inside(x2, x1)
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

type RP = (Rational, Rational);

fn rcross(o: &RP, a: &RP, b: &RP) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Sutherland–Hodgman clip of a convex polygon by a convex CCW polygon.
fn clip(subject: Vec<RP>, clipper: &[RP]) -> Vec<RP> {
    let mut out = subject;
    for i in 0..clipper.len() {
        let (a, b) = (&clipper[i], &clipper[(i + 1) % clipper.len()]);
        let input = std::mem::take(&mut out);
        if input.is_empty() {
            break;
        }
        for j in 0..input.len() {
            let (p, q) = (&input[j], &input[(j + 1) % input.len()]);
            let (sp, sq) = (rcross(a, b, p), rcross(a, b, q));
            let p_in = !sp.is_negative();
            let q_in = !sq.is_negative();
            if p_in {
                out.push(p.clone());
            }
            if p_in != q_in {
                let t = &sp / (&sp - &sq);
                out.push((&p.0 + &t * (&q.0 - &p.0), &p.1 + &t * (&q.1 - &p.1)));
            }
        }
    }
    out
}

fn area2(poly: &[RP]) -> Rational {
    let mut a = Rational::zero();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        a += &p.0 * &q.1 - &q.0 * &p.1;
    }
    a
}

/// Open hulls meet iff the exact clipped intersection has positive area.
pub fn open_hulls_meet(c: &[P], x1: &[usize], x2: &[usize]) -> bool {
    let poly = |x: &[usize]| -> Vec<RP> { ccw_hull(c, x).iter().map(|&i| (rat(c[i].0), rat(c[i].1))).collect() };
    let inter = clip(poly(x1), &poly(x2));
    inter.len() >= 3 && area2(&inter).is_positive()
}
