//! Double circle and two-ring constructions.
//!
//! Both are built in floating point, rounded to integers on a circle of
//! radius `RADIUS`, and then re-verified exactly. Shrink factors and the
//! inner-ring rotation are tried from a fixed list until the structural
//! checks pass, so the output is deterministic.

use std::f64::consts::PI;

use crate::combin::subsets;
use crate::geometry::{Coord, PointSet};

use super::enumerate::EmptyTriangles;
use super::predicates::hull_vertices;
use super::HoleError;

const RADIUS: f64 = 1_000_000.0;
const SHRINK: [f64; 8] = [0.05, 0.02, 0.01, 0.005, 0.002, 0.001, 0.0005, 0.0002];
/// Inner-ring rotation as a fraction of the half angular step.
const TWIST: [f64; 3] = [0.2, 0.1, 0.05];

fn polar(r: f64, theta: f64) -> (i64, i64) {
    ((r * theta.cos()).round() as i64, (r * theta.sin()).round() as i64)
}

fn hull_is_prefix<T: Coord>(s: &PointSet<T>, m: usize) -> bool {
    let all: Vec<usize> = (0..s.len()).collect();
    let mut hull = hull_vertices(s, &all);
    hull.sort_unstable();
    hull == (0..m).collect::<Vec<_>>()
}

/// Double circle on `n` points: indices `0..n/2` are the regular outer
/// polygon (counterclockwise, starting at the top), index `n/2 + i` sits
/// just inside the midpoint of edge `(i, i+1)`.
pub fn generate_double_circle(n: usize) -> Result<PointSet, HoleError> {
    if n < 6 || n % 2 == 1 {
        return Err(HoleError::Construction(format!("double circle needs an even n >= 6, got {n}")));
    }
    let m = n / 2;
    let step = 2.0 * PI / m as f64;
    let outer: Vec<(i64, i64)> = (0..m).map(|i| polar(RADIUS, PI / 2.0 + i as f64 * step)).collect();
    for delta in SHRINK {
        let mut coords = outer.clone();
        for i in 0..m {
            let (a, b) = (outer[i], outer[(i + 1) % m]);
            let mx = (a.0 + b.0) as f64 / 2.0 * (1.0 - delta);
            let my = (a.1 + b.1) as f64 / 2.0 * (1.0 - delta);
            coords.push((mx.round() as i64, my.round() as i64));
        }
        let Ok(s) = PointSet::from_coords(&coords) else { continue };
        if hull_is_prefix(&s, m) && consecutive_extremal_in_4hole(&s, m).is_none() {
            log::debug!("double circle n={n}: shrink {delta}");
            return Ok(s);
        }
    }
    Err(HoleError::Construction(format!("no shrink factor gives a valid double circle for n={n}")))
}

/// Two concentric regular `n/2`-gons: index `i < n/2` is an outer vertex
/// and `n/2 + i` its inner partner, rotated slightly when `n/2` is even.
pub fn generate_two_ring(n: usize) -> Result<PointSet, HoleError> {
    if n < 10 || n % 2 == 1 {
        return Err(HoleError::Construction(format!("two-ring needs an even n >= 10, got {n}")));
    }
    let m = n / 2;
    let step = 2.0 * PI / m as f64;
    let twists: &[f64] = if m.is_multiple_of(2) { &TWIST } else { &[0.0] };
    for &twist in twists {
        for delta in SHRINK {
            let mut coords: Vec<(i64, i64)> = (0..m).map(|i| polar(RADIUS, PI / 2.0 + i as f64 * step)).collect();
            let rot = twist * step / 2.0;
            coords.extend((0..m).map(|i| polar(RADIUS * (1.0 - delta), PI / 2.0 + i as f64 * step + rot)));
            let Ok(s) = PointSet::from_coords(&coords) else { continue };
            if hull_is_prefix(&s, m) && extremal_3holes(&s, m).is_empty() && max_extremal_in_holes(&s, m, 5) <= 2 {
                log::debug!("two-ring n={n}: shrink {delta}, twist {twist}");
                return Ok(s);
            }
        }
    }
    Err(HoleError::Construction(format!("no parameters give a valid two-ring for n={n}")))
}

/// A 4-hole containing two cyclically consecutive hull vertices, where the
/// hull is `0..m` in counterclockwise order.
pub fn consecutive_extremal_in_4hole<T: Coord>(s: &PointSet<T>, m: usize) -> Option<Vec<usize>> {
    let table = EmptyTriangles::new(s);
    table.holes(4).into_iter().map(|h| h.indices).find(|x| {
        (0..m).any(|i| {
            let j = (i + 1) % m;
            x.contains(&i) && x.contains(&j)
        })
    })
}

/// Triples of the extremal points `0..m` that are 3-holes.
pub fn extremal_3holes<T: Coord>(s: &PointSet<T>, m: usize) -> Vec<Vec<usize>> {
    let table = EmptyTriangles::new(s);
    subsets(m, 3).filter(|x| table.is_empty(x[0], x[1], x[2])).collect()
}

/// Largest number of points from `0..m` in any `k`-hole (0 if none).
pub fn max_extremal_in_holes<T: Coord>(s: &PointSet<T>, m: usize, k: usize) -> usize {
    let table = EmptyTriangles::new(s);
    table
        .holes(k)
        .iter()
        .map(|h| h.indices.iter().filter(|&&i| i < m).count())
        .max()
        .unwrap_or(0)
}
