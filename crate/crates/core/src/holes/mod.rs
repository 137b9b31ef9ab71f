//! Gons, holes, and (interior-)disjointness on concrete point sets.

mod constructions;
mod disjoint;
mod enumerate;
mod predicates;
mod tuples;
mod witnesses;

pub use constructions::{
    consecutive_extremal_in_4hole, extremal_3holes, generate_double_circle, generate_two_ring, max_extremal_in_holes,
};
pub use disjoint::{find_separator, hulls_disjoint, hulls_interior_disjoint, hulls_intersect, Separator};
pub use enumerate::{enumerate_gons, enumerate_holes, enumerate_holes_by_triangles, EmptyTriangles};
pub use predicates::{hull_vertices, is_gon, is_hole};
pub use tuples::{count_disjoint_tuples, find_disjoint_tuple, DisjointMode};
pub use witnesses::{witness, WITNESS_NAMES};

use std::fmt;

use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum HoleKind {
    Gon,
    #[default]
    Hole,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Hole {
    /// Sorted point indices (0-based).
    pub indices: Vec<usize>,
    pub kind: HoleKind,
}

impl Hole {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for Hole {
    /// 1-based labels, matching the point-file line numbers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoleError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid hole sizes: {0}")]
    InvalidSizes(String),
    #[error("unknown witness {0:?}")]
    UnknownWitness(String),
    #[error("construction failed: {0}")]
    Construction(String),
}
