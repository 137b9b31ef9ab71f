use std::cmp::Ordering;

use crate::geometry::{Coord, GeometryError, Orientation, PointSet};

fn validate<T: Coord>(s: &PointSet<T>, x: &[usize]) -> Result<(), GeometryError> {
    for (pos, &i) in x.iter().enumerate() {
        s.check_index(i)?;
        if x[..pos].contains(&i) {
            return Err(GeometryError::DuplicateIndex(i));
        }
    }
    Ok(())
}

/// Strictly inside triangle `abc` (either orientation).
#[inline]
pub(crate) fn in_triangle<T: Coord>(s: &PointSet<T>, i: usize, a: usize, b: usize, c: usize) -> bool {
    let o = s.orient(a, b, c);
    o != Orientation::Zero && s.orient(a, b, i) == o && s.orient(b, c, i) == o && s.orient(c, a, i) == o
}

/// True iff every point of `x` is a vertex of `conv(x)`.
pub fn is_gon<T: Coord>(s: &PointSet<T>, x: &[usize]) -> Result<bool, GeometryError> {
    validate(s, x)?;
    Ok(gon_unchecked(s, x))
}

pub(crate) fn gon_unchecked<T: Coord>(s: &PointSet<T>, x: &[usize]) -> bool {
    let k = x.len();
    if k <= 3 {
        return true;
    }
    for (pi, &p) in x.iter().enumerate() {
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    if i == pi || j == pi || l == pi {
                        continue;
                    }
                    if in_triangle(s, p, x[i], x[j], x[l]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Vertices of `conv(x)` in counterclockwise order, starting from the
/// lexicographically smallest one.
pub fn hull_vertices<T: Coord>(s: &PointSet<T>, x: &[usize]) -> Vec<usize> {
    let k = x.len();
    let mut verts: Vec<usize> = x
        .iter()
        .copied()
        .filter(|&p| {
            !(0..k).any(|i| {
                (i + 1..k).any(|j| {
                    (j + 1..k).any(|l| {
                        let (a, b, c) = (x[i], x[j], x[l]);
                        a != p && b != p && c != p && in_triangle(s, p, a, b, c)
                    })
                })
            })
        })
        .collect();
    if verts.len() <= 2 {
        verts.sort_unstable();
        return verts;
    }
    let pts = s.points();
    let start = *verts
        .iter()
        .min_by(|&&i, &&j| {
            pts[i]
                .x
                .partial_cmp(&pts[j].x)
                .unwrap()
                .then_with(|| pts[i].y.partial_cmp(&pts[j].y).unwrap())
        })
        .unwrap();
    verts.retain(|&v| v != start);
    verts.sort_by(|&a, &b| match s.orient(start, a, b) {
        Orientation::Positive => Ordering::Less,
        Orientation::Negative => Ordering::Greater,
        Orientation::Zero => Ordering::Equal,
    });
    verts.insert(0, start);
    verts
}

/// `q` strictly inside the convex polygon given by counterclockwise vertices.
pub(crate) fn in_convex_polygon<T: Coord>(s: &PointSet<T>, q: usize, ccw: &[usize]) -> bool {
    let k = ccw.len();
    k >= 3 && (0..k).all(|i| s.orient(ccw[i], ccw[(i + 1) % k], q) == Orientation::Positive)
}

/// True iff `x` is a gon and no other point of `s` lies inside `conv(x)`.
/// Subsets of size at most 2 are always holes.
pub fn is_hole<T: Coord>(s: &PointSet<T>, x: &[usize]) -> Result<bool, GeometryError> {
    validate(s, x)?;
    Ok(hole_unchecked(s, x))
}

pub(crate) fn hole_unchecked<T: Coord>(s: &PointSet<T>, x: &[usize]) -> bool {
    if x.len() <= 2 {
        return true;
    }
    if !gon_unchecked(s, x) {
        return false;
    }
    let ccw = hull_vertices(s, x);
    (0..s.len()).filter(|i| !x.contains(i)).all(|q| !in_convex_polygon(s, q, &ccw))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_gon() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4)]).unwrap();
        assert!(is_gon(&s, &[0, 1, 2, 3]).unwrap());
        assert!(is_hole(&s, &[0, 1, 2, 3]).unwrap());
        assert_eq!(hull_vertices(&s, &[2, 0, 3, 1]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn triangle_with_interior_point_is_not_gon() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (0, 4), (1, 1)]).unwrap();
        assert!(!is_gon(&s, &[0, 1, 2, 3]).unwrap());
        assert!(is_gon(&s, &[0, 1, 2]).unwrap());
        assert!(!is_hole(&s, &[0, 1, 2]).unwrap());
        assert!(is_hole(&s, &[0, 1, 3]).unwrap());
        assert_eq!(hull_vertices(&s, &[0, 1, 2, 3]), vec![0, 1, 2]);
    }

    #[test]
    fn pairs_are_always_holes() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (0, 4), (1, 1)]).unwrap();
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(is_hole(&s, &[a, b]).unwrap());
            }
        }
    }

    #[test]
    fn index_errors() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        assert!(matches!(is_gon(&s, &[0, 1, 5]), Err(GeometryError::IndexOutOfRange { index: 5, .. })));
        assert!(is_hole(&s, &[0, 0, 1]).is_err());
    }
}
