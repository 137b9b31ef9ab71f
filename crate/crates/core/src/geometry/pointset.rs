use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::point::{orient, Coord, Orientation, Point, MAX_COORD};
use super::GeometryError;

/// Finite labelled point set in general position.
///
/// Labels are the 0-based positions in `points`; everything user-facing
/// (files, DIMACS tags) shifts them to 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<T = i64> {
    points: Vec<Point<T>>,
}

impl<T: Coord> PointSet<T> {
    /// Rejects any collinear triple.
    pub fn new(points: Vec<Point<T>>) -> Result<Self, GeometryError> {
        if let Some((a, b, c)) = first_collinear(&points) {
            return Err(GeometryError::Collinear(a + 1, b + 1, c + 1));
        }
        Ok(PointSet { points })
    }

    /// Caller guarantees general position.
    pub(crate) fn new_unchecked(points: Vec<Point<T>>) -> Self {
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point<T> {
        &self.points[i]
    }

    pub fn into_points(self) -> Vec<Point<T>> {
        self.points
    }

    #[inline]
    pub fn orient(&self, a: usize, b: usize, c: usize) -> Orientation {
        orient(&self.points[a], &self.points[b], &self.points[c])
    }

    /// Points listed in the given label order.
    pub fn relabel(&self, order: &[usize]) -> PointSet<T> {
        PointSet {
            points: order.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn has_increasing_x(&self) -> bool {
        self.points.windows(2).all(|w| w[0].x < w[1].x)
    }

    /// Point 1 extremal with 2..n sorted counterclockwise around it, i.e.
    /// every triple `(1, a, b)` with `a < b` is positively oriented.
    pub fn is_sorted_around_first(&self) -> bool {
        let n = self.len();
        (1..n).all(|a| (a + 1..n).all(|b| self.orient(0, a, b).is_positive()))
    }

    /// Strictly increasing x, point 1 extremal, and 2..n sorted around it.
    pub fn is_canonical(&self) -> bool {
        self.has_increasing_x() && self.is_sorted_around_first()
    }

    pub fn check_index(&self, i: usize) -> Result<(), GeometryError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(GeometryError::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    /// True if moving point `i` to `p` keeps the set in general position.
    pub fn can_move(&self, i: usize, p: &Point<T>) -> bool {
        let n = self.len();
        for a in 0..n {
            if a == i {
                continue;
            }
            if self.points[a] == *p {
                return false;
            }
            for b in a + 1..n {
                if b == i {
                    continue;
                }
                if orient(&self.points[a], &self.points[b], p) == Orientation::Zero {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn set_point_unchecked(&mut self, i: usize, p: Point<T>) {
        self.points[i] = p;
    }
}

fn first_collinear<T: Coord>(points: &[Point<T>]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    for a in 0..n {
        for b in a + 1..n {
            if n == 2 && points[a] == points[b] {
                return Some((a, b, b));
            }
            for c in b + 1..n {
                if orient(&points[a], &points[b], &points[c]) == Orientation::Zero {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

impl PointSet<i64> {
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        for &(x, y) in coords {
            if x.abs() > MAX_COORD || y.abs() > MAX_COORD {
                return Err(GeometryError::CoordinateTooLarge(x, y));
            }
        }
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn coords(&self) -> Vec<(i64, i64)> {
        self.points.iter().map(|p| (p.x, p.y)).collect()
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self, GeometryError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| GeometryError::Io(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<(), GeometryError> {
        let path = path.as_ref();
        fs::write(path, self.to_string())
            .map_err(|e| GeometryError::Io(format!("{}: {e}", path.display())))
    }
}

impl PointSet<super::Rational> {
    pub fn from_integer_set(s: &PointSet<i64>) -> Self {
        PointSet {
            points: s
                .points()
                .iter()
                .map(|p| Point::new(p.x.to_rational(), p.y.to_rational()))
                .collect(),
        }
    }
}

/// Point-set file format: one `x y` integer pair per line, `#` comments,
/// blank lines ignored.
impl FromStr for PointSet<i64> {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coords = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let parse = |f: Option<&str>| -> Result<i64, GeometryError> {
                f.and_then(|v| v.parse().ok())
                    .ok_or_else(|| GeometryError::Parse { line: lineno + 1, text: raw.to_string() })
            };
            let x = parse(fields.next())?;
            let y = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(GeometryError::Parse { line: lineno + 1, text: raw.to_string() });
            }
            coords.push((x, y));
        }
        Self::from_coords(&coords)
    }
}

impl<T: Coord> fmt::Display for PointSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.points {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_collinear_triples() {
        let err = PointSet::from_coords(&[(0, 0), (5, 1), (1, 0), (2, 0)]).unwrap_err();
        assert_eq!(err, GeometryError::Collinear(1, 3, 4));
    }

    #[test]
    fn rejects_duplicate_points() {
        assert!(PointSet::from_coords(&[(1, 1), (1, 1)]).is_err());
        assert!(PointSet::from_coords(&[(1, 1), (1, 1), (4, 9)]).is_err());
    }

    #[test]
    fn parses_file_format() {
        let text = "# a triangle\n\n  0 0\n10   0\n# apex\n5 7\n";
        let s: PointSet = text.parse().unwrap();
        assert_eq!(s.coords(), vec![(0, 0), (10, 0), (5, 7)]);
        let again: PointSet = s.to_string().parse().unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "0 0\n1 x\n".parse::<PointSet>().unwrap_err();
        assert!(matches!(err, GeometryError::Parse { line: 2, .. }));
        assert!("0 0 3\n".parse::<PointSet>().is_err());
    }

    #[test]
    fn canonical_flags() {
        let s = PointSet::from_coords(&[(0, 0), (3, -1), (5, 1), (6, 9)]).unwrap();
        assert!(s.is_canonical());
        let t = PointSet::from_coords(&[(0, 0), (5, 1), (3, -1), (6, 9)]).unwrap();
        assert!(!t.has_increasing_x());
        assert!(!t.is_sorted_around_first());
    }

    #[test]
    fn can_move_detects_collinearity() {
        let s = PointSet::from_coords(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        assert!(!s.can_move(2, &Point::new(8, 0)));
        assert!(!s.can_move(2, &Point::new(4, 0)));
        assert!(s.can_move(2, &Point::new(1, 3)));
    }
}
