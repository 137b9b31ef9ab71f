//! Exact planar primitives: orientation, point sets, signotopes, and the
//! canonical labelling used by the SAT model.

mod canonical;
mod point;
mod pointset;
mod signotope;

pub use canonical::{canonicalize, project_normalize, Canonical};
pub use point::{orient, Coord, Orientation, Point, Rational, MAX_COORD};
pub use pointset::PointSet;
pub use signotope::{check_signotope, chirotope, orientation_map, Signotope};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("points {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("point set is not in general position")]
    NotGeneralPosition,
    #[error("coordinate ({0}, {1}) exceeds the supported range")]
    CoordinateTooLarge(i64, i64),
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index {0} repeated in subset")]
    DuplicateIndex(usize),
    #[error("not canonical: {0}")]
    NotCanonical(&'static str),
    #[error("expected {expected} triple signs, got {got}")]
    SignCount { expected: usize, got: usize },
    #[error("line {line}: cannot parse {text:?}")]
    Parse { line: usize, text: String },
    #[error("{0}")]
    Io(String),
}
