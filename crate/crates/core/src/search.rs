//! Simulated annealing over integer point sets, driving a count of
//! forbidden structures to zero.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{Point, PointSet};
use crate::holes::{count_disjoint_tuples, enumerate_gons, DisjointMode, EmptyTriangles, HoleError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchObjective {
    /// Number of `k`-holes.
    Holes(usize),
    /// Number of `k`-gons (points in convex position).
    Gons(usize),
    /// Number of tuples of pairwise disjoint holes with these sizes.
    DisjointHoles(Vec<usize>),
    /// Same, with interior-disjoint hulls.
    InteriorDisjointHoles(Vec<usize>),
}

impl SearchObjective {
    pub fn validate(&self) -> Result<(), HoleError> {
        match self {
            SearchObjective::Holes(k) | SearchObjective::Gons(k) if *k < 3 => {
                Err(HoleError::InvalidSizes(format!("hole size {k} must be at least 3")))
            }
            SearchObjective::Holes(_) | SearchObjective::Gons(_) => Ok(()),
            SearchObjective::DisjointHoles(sizes) => {
                count_disjoint_tuples(&PointSet::<i64>::new_unchecked(vec![]), sizes, DisjointMode::Disjoint).map(|_| ())
            }
            SearchObjective::InteriorDisjointHoles(sizes) => {
                count_disjoint_tuples(&PointSet::<i64>::new_unchecked(vec![]), sizes, DisjointMode::InteriorDisjoint)
                    .map(|_| ())
            }
        }
    }

    /// Largest structure size involved.
    pub fn max_size(&self) -> usize {
        match self {
            SearchObjective::Holes(k) | SearchObjective::Gons(k) => *k,
            SearchObjective::DisjointHoles(s) | SearchObjective::InteriorDisjointHoles(s) => {
                s.iter().copied().max().unwrap_or(0)
            }
        }
    }
}

fn join(sizes: &[usize]) -> String {
    sizes.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SearchObjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchObjective::Holes(k) => write!(f, "holes:{k}"),
            SearchObjective::Gons(k) => write!(f, "gons:{k}"),
            SearchObjective::DisjointHoles(s) => write!(f, "disjoint:{}", join(s)),
            SearchObjective::InteriorDisjointHoles(s) => write!(f, "interior-disjoint:{}", join(s)),
        }
    }
}

/// Parses `holes:5`, `gons:6`, `disjoint:5,5,5`, `interior-disjoint:5,5`.
impl FromStr for SearchObjective {
    type Err = HoleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HoleError::InvalidSizes(format!("cannot parse objective {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let sizes: Vec<usize> =
            rest.split(',').map(|t| t.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let one = || if sizes.len() == 1 { Ok(sizes[0]) } else { Err(bad()) };
        let obj = match kind.trim() {
            "holes" => SearchObjective::Holes(one()?),
            "gons" => SearchObjective::Gons(one()?),
            "disjoint" => SearchObjective::DisjointHoles(sizes.clone()),
            "interior-disjoint" => SearchObjective::InteriorDisjointHoles(sizes.clone()),
            _ => return Err(bad()),
        };
        obj.validate()?;
        Ok(obj)
    }
}

/// Exact number of forbidden structures in `s`.
pub fn objective_count(s: &PointSet, obj: &SearchObjective) -> Result<u64, HoleError> {
    Ok(match obj {
        SearchObjective::Holes(k) => EmptyTriangles::new(s).holes(*k).len() as u64,
        SearchObjective::Gons(k) => enumerate_gons(s, *k).len() as u64,
        SearchObjective::DisjointHoles(sizes) => count_disjoint_tuples(s, sizes, DisjointMode::Disjoint)?,
        SearchObjective::InteriorDisjointHoles(sizes) => {
            count_disjoint_tuples(s, sizes, DisjointMode::InteriorDisjoint)?
        }
    })
}

/// Annealing schedule. Step sizes shrink geometrically from `step_max` to
/// `step_min` over the budget; each move draws both offsets uniformly
/// within the current step. Temperature is multiplied by `cooling` after
/// every epoch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchParams {
    /// Proposed moves per restart.
    pub budget: u64,
    pub epoch_len: u64,
    pub t0: f64,
    pub cooling: f64,
    pub step_max: i64,
    pub step_min: i64,
    /// Coordinates stay within `[-bound, bound]`.
    pub bound: i64,
    /// Weight of the number of holes of the largest size in the energy of
    /// tuple objectives, as a tie-break on plateaus. Off by default: it
    /// slowed the 16-point disjoint (5,5) search down rather than up.
    pub hole_weight: f64,
    pub restarts: u64,
    pub workers: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            budget: 200_000,
            epoch_len: 2_000,
            t0: 2.0,
            cooling: 0.93,
            step_max: 250_000,
            step_min: 20,
            bound: 1_000_000,
            hole_weight: 0.0,
            restarts: 8,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpochLog {
    pub epoch: u64,
    pub value: u64,
    pub best: u64,
    pub accepted: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub seed: u64,
    pub witness: Option<PointSet>,
    pub best_value: u64,
    pub moves: u64,
    pub trace: Vec<EpochLog>,
}

fn random_set(n: usize, bound: i64, rng: &mut ChaCha8Rng) -> PointSet {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound));
        // index past the end: checks `p` against every existing pair
        if PointSet::new_unchecked(pts.clone()).can_move(pts.len(), &p) {
            pts.push(p);
        }
    }
    PointSet::new_unchecked(pts)
}

/// Objective count plus the energy the annealer minimizes.
fn energy(s: &PointSet, obj: &SearchObjective, hole_weight: f64) -> Result<(u64, f64), HoleError> {
    let count = objective_count(s, obj)?;
    let extra = match obj {
        SearchObjective::DisjointHoles(_) | SearchObjective::InteriorDisjointHoles(_) if hole_weight > 0.0 => {
            hole_weight * EmptyTriangles::new(s).holes(obj.max_size()).len() as f64
        }
        _ => 0.0,
    };
    Ok((count, count as f64 + extra))
}

fn step_at(params: &SearchParams, moves: u64) -> i64 {
    let hi = params.step_max.max(1) as f64;
    let lo = params.step_min.clamp(1, params.step_max.max(1)) as f64;
    let frac = moves as f64 / params.budget.max(1) as f64;
    (hi * (lo / hi).powf(frac)).round().max(1.0) as i64
}

/// One annealing run from `seed`. Every intermediate set is in general
/// position.
pub fn local_search(
    n: usize,
    obj: &SearchObjective,
    seed: u64,
    params: &SearchParams,
) -> Result<SearchOutcome, HoleError> {
    anneal(n, obj, seed, params, &|| false)
}

/// `cancel` is polled once per epoch.
fn anneal(
    n: usize,
    obj: &SearchObjective,
    seed: u64,
    params: &SearchParams,
    cancel: &(dyn Fn() -> bool + Sync),
) -> Result<SearchOutcome, HoleError> {
    obj.validate()?;
    if n < obj.max_size() {
        return Err(HoleError::InvalidSizes(format!("n = {n} is below the structure size {}", obj.max_size())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = params.bound.max(n as i64);
    let mut s = random_set(n, bound, &mut rng);
    let (mut value, mut e) = energy(&s, obj, params.hole_weight)?;
    let mut best = value;
    let mut temp = params.t0;
    let mut trace = Vec::new();
    let mut accepted = 0;
    let mut moves = 0;
    let epoch_len = params.epoch_len.max(1);
    while value > 0 && moves < params.budget {
        let step = step_at(params, moves);
        let i = rng.random_range(0..n);
        let old = s.point(i).clone();
        let p = Point::new(
            (old.x + rng.random_range(-step..=step)).clamp(-bound, bound),
            (old.y + rng.random_range(-step..=step)).clamp(-bound, bound),
        );
        moves += 1;
        if p != old && s.can_move(i, &p) {
            s.set_point_unchecked(i, p);
            let (next, next_e) = energy(&s, obj, params.hole_weight)?;
            let accept = next_e <= e || (temp > 0.0 && rng.random::<f64>() < (-(next_e - e) / temp).exp());
            if accept {
                value = next;
                e = next_e;
                best = best.min(value);
                accepted += 1;
            } else {
                s.set_point_unchecked(i, old);
            }
        }
        if moves % epoch_len == 0 || value == 0 {
            let log = EpochLog { epoch: moves.div_ceil(epoch_len), value, best, accepted };
            log::info!(
                "seed {seed} epoch {} temp {temp:.4} step {step} value {value} best {best} accepted {accepted}",
                log.epoch
            );
            trace.push(log);
            accepted = 0;
            temp *= params.cooling;
            if cancel() {
                break;
            }
        }
    }
    Ok(SearchOutcome { seed, witness: (value == 0).then_some(s), best_value: best, moves, trace })
}

/// Independent restarts with seeds `seed, seed + 1, ...` on a worker pool.
/// The successful run with the lowest seed wins; runs with higher seeds stop
/// once a lower one has succeeded, so the result does not depend on thread
/// timing. Without success, the run with the lowest best value is returned.
pub fn search(n: usize, obj: &SearchObjective, seed: u64, params: &SearchParams) -> Result<SearchOutcome, HoleError> {
    obj.validate()?;
    let restarts = params.restarts.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.workers.max(1))
        .build()
        .map_err(|e| HoleError::Construction(e.to_string()))?;
    let first_success = AtomicU64::new(u64::MAX);
    let runs: Vec<SearchOutcome> = pool.install(|| {
        (0..restarts)
            .into_par_iter()
            .map(|r| {
                let cancel = || first_success.load(Ordering::Relaxed) < r;
                let out = anneal(n, obj, seed.wrapping_add(r), params, &cancel)?;
                if out.witness.is_some() {
                    first_success.fetch_min(r, Ordering::Relaxed);
                }
                Ok(out)
            })
            .collect::<Result<_, HoleError>>()
    })?;
    let mut runs = runs.into_iter();
    let first = runs.next().expect("at least one restart");
    Ok(runs.fold(first, |acc, o| {
        let key = |o: &SearchOutcome| (o.witness.is_none(), if o.witness.is_some() { 0 } else { o.best_value });
        if key(&o) < key(&acc) { o } else { acc }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_parsing_round_trips() {
        for s in ["holes:5", "gons:6", "disjoint:5,5,5", "interior-disjoint:5,5"] {
            let o: SearchObjective = s.parse().unwrap();
            assert_eq!(o.to_string(), s);
        }
        assert!("holes:2".parse::<SearchObjective>().is_err());
        assert!("disjoint:1,5".parse::<SearchObjective>().is_err());
        assert!("nothing:3".parse::<SearchObjective>().is_err());
    }

    #[test]
    fn step_schedule_is_geometric() {
        let p = SearchParams { budget: 100, step_max: 1000, step_min: 10, ..Default::default() };
        assert_eq!(step_at(&p, 0), 1000);
        assert_eq!(step_at(&p, 50), 100);
        assert_eq!(step_at(&p, 100), 10);
    }

    #[test]
    fn random_sets_are_in_general_position() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = random_set(8, 5, &mut rng);
            assert!(PointSet::new(s.into_points()).is_ok());
        }
    }
}
