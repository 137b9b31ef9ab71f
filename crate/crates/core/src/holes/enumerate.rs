use crate::combin::subsets;
use crate::geometry::{Coord, PointSet};

use super::predicates::{gon_unchecked, hole_unchecked, in_triangle};
use super::{Hole, HoleKind};

/// All `k`-holes of `s` in lexicographic order of their index sets.
pub fn enumerate_holes<T: Coord>(s: &PointSet<T>, k: usize) -> Vec<Hole> {
    subsets(s.len(), k)
        .filter(|x| hole_unchecked(s, x))
        .map(|indices| Hole { indices, kind: HoleKind::Hole })
        .collect()
}

/// All `k`-gons of `s` in lexicographic order.
pub fn enumerate_gons<T: Coord>(s: &PointSet<T>, k: usize) -> Vec<Hole> {
    subsets(s.len(), k)
        .filter(|x| gon_unchecked(s, x))
        .map(|indices| Hole { indices, kind: HoleKind::Gon })
        .collect()
}

/// Per-triangle count of points strictly inside, for every sorted triple.
///
/// A subset of size at least 3 is a hole exactly when all of its triangles
/// are empty, which gives a second counting route independent of the
/// polygon-based [`enumerate_holes`].
#[derive(Clone, Debug)]
pub struct EmptyTriangles {
    n: usize,
    inside: Vec<u16>,
}

impl EmptyTriangles {
    pub fn new<T: Coord>(s: &PointSet<T>) -> Self {
        let n = s.len();
        let mut inside = vec![0u16; n * n * n];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let count = (0..n)
                        .filter(|&i| i != a && i != b && i != c && in_triangle(s, i, a, b, c))
                        .count() as u16;
                    inside[(a * n + b) * n + c] = count;
                }
            }
        }
        EmptyTriangles { n, inside }
    }

    /// Points strictly inside triangle `a < b < c`.
    #[inline]
    pub fn count(&self, a: usize, b: usize, c: usize) -> u16 {
        self.inside[(a * self.n + b) * self.n + c]
    }

    #[inline]
    pub fn is_empty(&self, a: usize, b: usize, c: usize) -> bool {
        self.count(a, b, c) == 0
    }

    /// `x` sorted ascending.
    pub fn is_hole(&self, x: &[usize]) -> bool {
        let k = x.len();
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    if !self.is_empty(x[i], x[j], x[l]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn holes(&self, k: usize) -> Vec<Hole> {
        subsets(self.n, k)
            .filter(|x| self.is_hole(x))
            .map(|indices| Hole { indices, kind: HoleKind::Hole })
            .collect()
    }
}

/// Same result as [`enumerate_holes`], computed from the empty-triangle table.
pub fn enumerate_holes_by_triangles<T: Coord>(s: &PointSet<T>, k: usize) -> Vec<Hole> {
    EmptyTriangles::new(s).holes(k)
}
