//! Canonical labelling: first point extremal, the rest sorted around it,
//! and (after a projective map) strictly increasing x-coordinates.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::point::{Coord, Orientation, Point, Rational};
use super::pointset::PointSet;
use super::signotope::{orientation_map, Signotope};
use super::GeometryError;

/// Result of [`canonicalize`].
#[derive(Clone, Debug)]
pub struct Canonical<T = i64> {
    /// `order[i]` is the input label placed at canonical position `i`.
    pub order: Vec<usize>,
    /// The input coordinates listed in canonical order. Same order type as
    /// `normalized`, but x is not necessarily increasing.
    pub relabeled: PointSet<T>,
    /// Rational coordinates with strictly increasing x.
    pub normalized: PointSet<Rational>,
}

impl<T: Coord> Canonical<T> {
    /// Orientation map of the canonical labelling.
    pub fn chirotope(&self) -> Signotope {
        orientation_map(&self.relabeled)
    }
}

/// Relabels `s` so the lexicographically smallest point comes first and the
/// others follow counterclockwise around it, then applies
/// [`project_normalize`] unless x is already increasing.
pub fn canonicalize<T: Coord>(s: &PointSet<T>) -> Result<Canonical<T>, GeometryError> {
    // PointSet guarantees general position; re-check cheaply for n <= 3
    // paths where callers built the set unchecked.
    let n = s.len();
    if n == 0 {
        return Ok(Canonical {
            order: vec![],
            relabeled: s.clone(),
            normalized: PointSet::new_unchecked(vec![]),
        });
    }
    let pts = s.points();
    let first = (0..n)
        .min_by(|&i, &j| {
            pts[i]
                .x
                .partial_cmp(&pts[j].x)
                .unwrap()
                .then_with(|| pts[i].y.partial_cmp(&pts[j].y).unwrap())
        })
        .unwrap();
    let mut rest: Vec<usize> = (0..n).filter(|&i| i != first).collect();
    let mut degenerate = false;
    rest.sort_by(|&a, &b| match s.orient(first, a, b) {
        Orientation::Positive => Ordering::Less,
        Orientation::Negative => Ordering::Greater,
        Orientation::Zero => {
            degenerate = degenerate || a != b;
            Ordering::Equal
        }
    });
    if degenerate {
        return Err(GeometryError::NotGeneralPosition);
    }
    let mut order = vec![first];
    order.extend(rest);
    let relabeled = s.relabel(&order);
    debug_assert!(relabeled.is_sorted_around_first());

    let normalized = if relabeled.has_increasing_x() {
        PointSet::new_unchecked(
            relabeled
                .points()
                .iter()
                .map(|p| Point::new(p.x.to_rational(), p.y.to_rational()))
                .collect(),
        )
    } else {
        project_normalize(&relabeled)?
    };
    Ok(Canonical { order, relabeled, normalized })
}

/// Given point 1 extremal and points 2..n sorted counterclockwise around
/// it, returns a rational point set with the same triple orientations and
/// strictly increasing x-coordinates.
///
/// Steps: translate point 1 to the origin, apply an orientation-preserving
/// linear map taking every other point into the open positive quadrant,
/// nudge point 1 to `(eps, 0)`, then map `(x, y) -> (y/x, 1/x)`. Scaling
/// column `i` of the orientation determinant by `x_i > 0` shows the last
/// map preserves every orientation.
pub fn project_normalize<T: Coord>(s: &PointSet<T>) -> Result<PointSet<Rational>, GeometryError> {
    let n = s.len();
    if !s.is_sorted_around_first() {
        return Err(GeometryError::NotCanonical("points 2..n are not sorted around point 1"));
    }
    let pts: Vec<Point<Rational>> = s
        .points()
        .iter()
        .map(|p| Point::new(p.x.to_rational(), p.y.to_rational()))
        .collect();
    if n <= 2 {
        let out: Vec<_> = (0..n)
            .map(|i| Point::new(Rational::from_integer(i.into()), Rational::zero()))
            .collect();
        return Ok(PointSet::new_unchecked(out));
    }

    let origin = pts[0].clone();
    let rel: Vec<Point<Rational>> = pts
        .iter()
        .map(|p| Point::new(&p.x - &origin.x, &p.y - &origin.y))
        .collect();
    let first = &rel[1];
    let last = &rel[n - 1];
    // h_l(v) = cross(first, v) and h_r(v) = cross(v, last) are >= 0 on the
    // cone spanned by points 2..n, and never both 0. Rows f = h_r + h_l and
    // g = h_r + 2 h_l give determinant cross(first, last) > 0.
    let h_l = |v: &Point<Rational>| &first.x * &v.y - &first.y * &v.x;
    let h_r = |v: &Point<Rational>| &v.x * &last.y - &v.y * &last.x;
    let mapped: Vec<Point<Rational>> = rel[1..]
        .iter()
        .map(|v| {
            let (l, r) = (h_l(v), h_r(v));
            Point::new(&r + &l, &r + &l + &l)
        })
        .collect();
    debug_assert!(mapped.iter().all(|p| p.x > Rational::zero() && p.y > Rational::zero()));

    let project = |p: &Point<Rational>| Point::new(&p.y / &p.x, Rational::one() / &p.x);
    let tail: Vec<Point<Rational>> = mapped.iter().map(project).collect();
    let reference = orientation_map(s);

    let two = Rational::from_integer(2.into());
    let mut eps = Rational::one();
    for _ in 0..256 {
        let mut out = Vec::with_capacity(n);
        out.push(project(&Point::new(eps.clone(), Rational::zero())));
        out.extend(tail.iter().cloned());
        let candidate = PointSet::new_unchecked(out);
        if orientation_map(&candidate) == reference {
            if !candidate.has_increasing_x() {
                return Err(GeometryError::NotCanonical("projective image is not x-sorted"));
            }
            return Ok(candidate);
        }
        eps /= &two;
    }
    Err(GeometryError::NotGeneralPosition)
}
