//! Disjointness of convex hulls of index subsets.

use crate::geometry::{Coord, Orientation, PointSet};

use super::predicates::{hull_vertices, in_convex_polygon};

/// A line through `a` (from the first subset) and `b` (from the second)
/// with the rest of the first subset strictly on `first_side` of `a -> b`
/// and the rest of the second subset strictly on the other side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separator {
    pub a: usize,
    pub b: usize,
    pub first_side: Orientation,
}

/// Searches all `a ∈ x1`, `b ∈ x2` for a separating line through both.
pub fn find_separator<T: Coord>(s: &PointSet<T>, x1: &[usize], x2: &[usize]) -> Option<Separator> {
    if x1.iter().any(|i| x2.contains(i)) {
        return None;
    }
    for &a in x1 {
        for &b in x2 {
            for side in [Orientation::Positive, Orientation::Negative] {
                let ok1 = x1.iter().filter(|&&x| x != a).all(|&x| s.orient(a, b, x) == side);
                let ok2 = ok1 && x2.iter().filter(|&&y| y != b).all(|&y| s.orient(a, b, y) == side.reversed());
                if ok2 {
                    return Some(Separator { a, b, first_side: side });
                }
            }
        }
    }
    None
}

/// `conv(x1) ∩ conv(x2) = ∅`, decided by the separator search.
pub fn hulls_disjoint<T: Coord>(s: &PointSet<T>, x1: &[usize], x2: &[usize]) -> bool {
    find_separator(s, x1, x2).is_some()
}

#[inline]
fn segments_cross<T: Coord>(s: &PointSet<T>, p: usize, q: usize, r: usize, t: usize) -> bool {
    // Endpoints pairwise distinct; under general position no touching cases remain.
    s.orient(p, q, r) != s.orient(p, q, t) && s.orient(r, t, p) != s.orient(r, t, q)
}

fn edges(ccw: &[usize]) -> Vec<(usize, usize)> {
    match ccw.len() {
        0 | 1 => vec![],
        2 => vec![(ccw[0], ccw[1])],
        k => (0..k).map(|i| (ccw[i], ccw[(i + 1) % k])).collect(),
    }
}

fn any_proper_crossing<T: Coord>(s: &PointSet<T>, e1: &[(usize, usize)], e2: &[(usize, usize)]) -> bool {
    e1.iter().any(|&(p, q)| {
        e2.iter().any(|&(r, t)| {
            p != r && p != t && q != r && q != t && segments_cross(s, p, q, r, t)
        })
    })
}

/// Exact closed-hull intersection via edge crossings and vertex containment.
/// Independent of [`find_separator`]; used to cross-check it.
pub fn hulls_intersect<T: Coord>(s: &PointSet<T>, x1: &[usize], x2: &[usize]) -> bool {
    if x1.iter().any(|i| x2.contains(i)) {
        return true;
    }
    let p1 = hull_vertices(s, x1);
    let p2 = hull_vertices(s, x2);
    any_proper_crossing(s, &edges(&p1), &edges(&p2))
        || p1.iter().any(|&v| in_convex_polygon(s, v, &p2))
        || p2.iter().any(|&v| in_convex_polygon(s, v, &p1))
}

/// Open interiors of `conv(x1)` and `conv(x2)` are disjoint. Shared
/// vertices and edges are allowed.
///
/// Two convex polygons with disjoint interiors are separated by a line
/// through an edge of one of them or through one vertex of each, so it is
/// enough to try lines through two points of `x1 ∪ x2`.
pub fn hulls_interior_disjoint<T: Coord>(s: &PointSet<T>, x1: &[usize], x2: &[usize]) -> bool {
    if x1.len() < 3 || x2.len() < 3 {
        return true;
    }
    // at most two shared points fit on a separating line
    if x1.iter().filter(|i| x2.contains(i)).count() > 2 {
        return false;
    }
    let mut pts: Vec<usize> = x1.iter().chain(x2).copied().collect();
    pts.sort_unstable();
    pts.dedup();
    pts.iter().any(|&a| {
        pts.iter().any(|&b| {
            a != b
                && x1.iter().all(|&x| x == a || x == b || s.orient(a, b, x) == Orientation::Positive)
                && x2.iter().all(|&y| y == a || y == b || s.orient(a, b, y) == Orientation::Negative)
        })
    })
}
