//! Known lower-bound witness sets, embedded as integer coordinates.

use crate::geometry::PointSet;

use super::HoleError;

pub const WITNESS_NAMES: [&str; 3] = ["fig2-n16", "fig4-n21", "fig6-n14"];

/// 16 points without two disjoint 5-holes.
const FIG2_N16: [(i64, i64); 16] = [
    (0, 0),
    (0, 270),
    (280, 0),
    (280, 270),
    (18, 127),
    (18, 143),
    (262, 127),
    (262, 143),
    (68, 117),
    (68, 153),
    (212, 117),
    (212, 153),
    (118, 85),
    (118, 185),
    (162, 85),
    (162, 185),
];

/// 21 points without three pairwise disjoint 5-holes.
const FIG4_N21: [(i64, i64); 21] = [
    (0, 161014),
    (437034, 595949),
    (326347, 343801),
    (284425, 294548),
    (368806, 311583),
    (359850, 306967),
    (303825, 276373),
    (295136, 271265),
    (384946, 285229),
    (410465, 282863),
    (385025, 275150),
    (280383, 244110),
    (288858, 238662),
    (432159, 221931),
    (383508, 211334),
    (343366, 205440),
    (352134, 200469),
    (273710, 191231),
    (383027, 201270),
    (337326, 179552),
    (595182, 0),
];

/// 14 points without two interior-disjoint 5-holes.
const FIG6_N14: [(i64, i64); 14] = [
    (142, 0),
    (0, 100),
    (29, 105),
    (65, 73),
    (63, 81),
    (49, 111),
    (88, 58),
    (80, 79),
    (98, 58),
    (107, 65),
    (105, 72),
    (134, 35),
    (131, 54),
    (128, 142),
];

pub fn witness(name: &str) -> Result<PointSet, HoleError> {
    let coords: &[(i64, i64)] = match name {
        "fig2-n16" => &FIG2_N16,
        "fig4-n21" => &FIG4_N21,
        "fig6-n14" => &FIG6_N14,
        other => return Err(HoleError::UnknownWitness(other.to_string())),
    };
    Ok(PointSet::from_coords(coords)?)
}
