//! Search for pairwise (interior-)disjoint holes of prescribed sizes.
//!
//! Holes are nodes of a compatibility graph whose edges join disjoint pairs;
//! a tuple is a clique that uses one node of each requested size.

use std::fmt;
use std::str::FromStr;

use crate::geometry::{Coord, PointSet};

use super::disjoint::{hulls_disjoint, hulls_interior_disjoint};
use super::enumerate::EmptyTriangles;
use super::{Hole, HoleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DisjointMode {
    Disjoint,
    InteriorDisjoint,
}

impl fmt::Display for DisjointMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DisjointMode::Disjoint => "disjoint",
            DisjointMode::InteriorDisjoint => "interior-disjoint",
        })
    }
}

impl FromStr for DisjointMode {
    type Err = HoleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "disjoint" => Ok(DisjointMode::Disjoint),
            "interior-disjoint" => Ok(DisjointMode::InteriorDisjoint),
            other => Err(HoleError::InvalidSizes(format!("unknown mode {other:?}"))),
        }
    }
}

pub(crate) fn validate_sizes(sizes: &[usize], mode: DisjointMode) -> Result<(), HoleError> {
    let min = match mode {
        DisjointMode::Disjoint => 2,
        DisjointMode::InteriorDisjoint => 3,
    };
    if sizes.is_empty() {
        return Err(HoleError::InvalidSizes("no hole sizes given".into()));
    }
    if let Some(&k) = sizes.iter().find(|&&k| k < min) {
        return Err(HoleError::InvalidSizes(format!("{mode} holes need size >= {min}, got {k}")));
    }
    Ok(())
}

struct Graph {
    holes: Vec<Hole>,
    /// Node ranges per requested slot (slots sorted by size).
    slot_nodes: Vec<std::ops::Range<usize>>,
    adjacency: Vec<Vec<u64>>,
}

impl Graph {
    fn build<T: Coord>(s: &PointSet<T>, sizes: &[usize], mode: DisjointMode) -> (Graph, Vec<usize>) {
        let mut slots: Vec<usize> = (0..sizes.len()).collect();
        slots.sort_by_key(|&i| sizes[i]);
        let table = EmptyTriangles::new(s);
        let mut holes = Vec::new();
        let mut ranges_by_size: Vec<(usize, std::ops::Range<usize>)> = Vec::new();
        for &slot in &slots {
            let k = sizes[slot];
            if ranges_by_size.iter().all(|(size, _)| *size != k) {
                let start = holes.len();
                holes.extend(table.holes(k));
                ranges_by_size.push((k, start..holes.len()));
            }
        }
        let slot_nodes = slots
            .iter()
            .map(|&slot| ranges_by_size.iter().find(|(k, _)| *k == sizes[slot]).unwrap().1.clone())
            .collect();
        let m = holes.len();
        let words = m.div_ceil(64);
        let mut adjacency = vec![vec![0u64; words]; m];
        for i in 0..m {
            for j in i + 1..m {
                let (x1, x2) = (&holes[i].indices, &holes[j].indices);
                let ok = match mode {
                    DisjointMode::Disjoint => hulls_disjoint(s, x1, x2),
                    DisjointMode::InteriorDisjoint => hulls_interior_disjoint(s, x1, x2),
                };
                if ok {
                    adjacency[i][j / 64] |= 1 << (j % 64);
                    adjacency[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        (Graph { holes, slot_nodes, adjacency }, slots)
    }

    #[inline]
    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j / 64] >> (j % 64) & 1 == 1
    }

    /// Visits cliques picking one node per slot; equal-size slots take
    /// increasing node ids so each unordered tuple is seen once. The
    /// visitor returns `false` to stop.
    fn for_each_clique(&self, mut visit: impl FnMut(&[usize]) -> bool) {
        let mut chosen = Vec::with_capacity(self.slot_nodes.len());
        self.extend(&mut chosen, &mut visit);
    }

    fn extend(&self, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let depth = chosen.len();
        if depth == self.slot_nodes.len() {
            return visit(chosen);
        }
        let range = self.slot_nodes[depth].clone();
        let start = match depth {
            0 => range.start,
            _ if self.slot_nodes[depth - 1] == range => chosen[depth - 1] + 1,
            _ => range.start,
        };
        for node in start..range.end {
            if chosen.iter().all(|&c| self.adjacent(c, node)) {
                chosen.push(node);
                let keep_going = self.extend(chosen, visit);
                chosen.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

/// Pairwise (interior-)disjoint holes with the requested sizes, in the order
/// of `sizes`, or `None` if no such tuple exists.
pub fn find_disjoint_tuple<T: Coord>(
    s: &PointSet<T>,
    sizes: &[usize],
    mode: DisjointMode,
) -> Result<Option<Vec<Hole>>, HoleError> {
    validate_sizes(sizes, mode)?;
    let (graph, slots) = Graph::build(s, sizes, mode);
    let mut found = None;
    graph.for_each_clique(|nodes| {
        let mut out = vec![Hole::default(); sizes.len()];
        for (pos, &node) in nodes.iter().enumerate() {
            out[slots[pos]] = graph.holes[node].clone();
        }
        found = Some(out);
        false
    });
    Ok(found)
}

/// Number of unordered tuples of pairwise (interior-)disjoint holes with
/// the requested size signature.
pub fn count_disjoint_tuples<T: Coord>(
    s: &PointSet<T>,
    sizes: &[usize],
    mode: DisjointMode,
) -> Result<u64, HoleError> {
    validate_sizes(sizes, mode)?;
    let (graph, _) = Graph::build(s, sizes, mode);
    let mut count = 0u64;
    graph.for_each_clique(|_| {
        count += 1;
        true
    });
    Ok(count)
}
