use std::fmt;

use super::point::{Coord, Orientation};
use super::pointset::PointSet;
use super::GeometryError;

/// Orientation map on index triples of an `n`-point (abstract) point set.
///
/// Stored densely over all ordered triples so lookups in any index order
/// are a single load; repeated indices map to 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Signotope {
    n: usize,
    table: Vec<i8>,
}

impl Signotope {
    /// Builds the map from its values on sorted triples `a < b < c`
    /// (0-based); `true` means positively oriented.
    pub fn from_fn(n: usize, mut positive: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut table = vec![0i8; n * n * n];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s: i8 = if positive(a, b, c) { 1 } else { -1 };
                    for (i, j, k, sign) in [
                        (a, b, c, s),
                        (b, c, a, s),
                        (c, a, b, s),
                        (b, a, c, -s),
                        (a, c, b, -s),
                        (c, b, a, -s),
                    ] {
                        table[(i * n + j) * n + k] = sign;
                    }
                }
            }
        }
        Signotope { n, table }
    }

    /// Sorted-triple signs in lexicographic order.
    pub fn from_sorted_signs(n: usize, signs: &[bool]) -> Result<Self, GeometryError> {
        let expected = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        if signs.len() != expected {
            return Err(GeometryError::SignCount { expected, got: signs.len() });
        }
        let mut it = signs.iter();
        Ok(Self::from_fn(n, |_, _, _| *it.next().unwrap()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `+1`, `-1`, or `0` when two indices coincide. Any index order.
    #[inline]
    pub fn sign(&self, a: usize, b: usize, c: usize) -> i8 {
        self.table[(a * self.n + b) * self.n + c]
    }

    #[inline]
    pub fn is_positive(&self, a: usize, b: usize, c: usize) -> bool {
        self.sign(a, b, c) > 0
    }

    pub fn orientation(&self, a: usize, b: usize, c: usize) -> Orientation {
        match self.sign(a, b, c) {
            1 => Orientation::Positive,
            -1 => Orientation::Negative,
            _ => Orientation::Zero,
        }
    }

    /// Flips one triple (and its permutations).
    pub fn flip(&mut self, a: usize, b: usize, c: usize) {
        let n = self.n;
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b), (b, a, c), (a, c, b), (c, b, a)] {
            self.table[(i * n + j) * n + k] *= -1;
        }
    }

    pub fn sorted_signs(&self) -> Vec<bool> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    out.push(self.is_positive(a, b, c));
                }
            }
        }
        out
    }

    /// True if every triple `(1, a, b)` with `a < b` is positive.
    pub fn is_sorted_around_first(&self) -> bool {
        (1..self.n).all(|a| (a + 1..self.n).all(|b| self.is_positive(0, a, b)))
    }
}

impl fmt::Debug for Signotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signotope(n={}, ", self.n)?;
        for s in self.sorted_signs() {
            f.write_str(if s { "+" } else { "-" })?;
        }
        f.write_str(")")
    }
}

/// Triple orientations of an x-sorted point set.
pub fn chirotope<T: Coord>(s: &PointSet<T>) -> Result<Signotope, GeometryError> {
    if !s.has_increasing_x() {
        return Err(GeometryError::NotCanonical("x-coordinates are not strictly increasing"));
    }
    Ok(orientation_map(s))
}

/// Triple orientations in the given labelling, whatever the coordinates.
/// The signotope axioms only hold if the labelling is x-sorted (or order
/// equivalent to an x-sorted set).
pub fn orientation_map<T: Coord>(s: &PointSet<T>) -> Signotope {
    Signotope::from_fn(s.len(), |a, b, c| s.orient(a, b, c).is_positive())
}

/// All 4-tuples `a<b<c<d` (0-based) whose sequence
/// `abc, abd, acd, bcd` changes sign more than once.
pub fn check_signotope(sig: &Signotope) -> Vec<[usize; 4]> {
    let n = sig.n();
    let mut bad = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let seq = [
                        sig.sign(a, b, c),
                        sig.sign(a, b, d),
                        sig.sign(a, c, d),
                        sig.sign(b, c, d),
                    ];
                    let changes = seq.windows(2).filter(|w| w[0] != w[1]).count();
                    if changes > 1 {
                        bad.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    bad
}
