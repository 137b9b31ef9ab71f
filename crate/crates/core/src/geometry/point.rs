//! Points and the exact orientation predicate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational coordinate.
pub type Rational = BigRational;

/// Largest absolute integer coordinate accepted. Differences then fit in 62
/// bits and the determinant products in 124 bits, so `i128` never overflows.
pub const MAX_COORD: i64 = 1 << 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
    Zero,
}

impl Orientation {
    fn from_sign<T: PartialOrd + Zero>(det: &T) -> Self {
        let zero = T::zero();
        if *det > zero {
            Orientation::Positive
        } else if *det < zero {
            Orientation::Negative
        } else {
            Orientation::Zero
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
            Orientation::Zero => Orientation::Zero,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Orientation::Positive
    }

    /// `+1`, `-1` or `0`.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
            Orientation::Zero => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T = i64> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// Coordinate types with an exact orientation test.
pub trait Coord: Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync {
    fn orient(p: &Point<Self>, q: &Point<Self>, r: &Point<Self>) -> Orientation;
    fn to_rational(&self) -> Rational;
}

impl Coord for i64 {
    #[inline]
    fn orient(p: &Point<i64>, q: &Point<i64>, r: &Point<i64>) -> Orientation {
        let (px, py) = (p.x as i128, p.y as i128);
        let det = (q.x as i128 - px) * (r.y as i128 - py) - (q.y as i128 - py) * (r.x as i128 - px);
        Orientation::from_sign(&det)
    }

    fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(*self))
    }
}

impl Coord for Rational {
    fn orient(p: &Point<Rational>, q: &Point<Rational>, r: &Point<Rational>) -> Orientation {
        let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
        if det.is_zero() {
            Orientation::Zero
        } else if det.is_positive() {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Sign of `det [[1,1,1],[px,qx,rx],[py,qy,ry]]`: positive iff `r` lies to
/// the left of the directed line `p -> q`.
#[inline]
pub fn orient<T: Coord>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> Orientation {
    T::orient(p, q, r)
}
