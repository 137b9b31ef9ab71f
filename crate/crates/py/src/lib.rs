//! Python bindings: point sets, hole analysis, instance generation, solving
//! and witness search.

use std::path::PathBuf;

use hs::encoder::{build_instance, CnfInstance, Encoding, HoleProblem, Mode};
use hs::geometry::{canonicalize, PointSet as CorePointSet};
use hs::harness::{solve_instance, verify_model, HarnessConfig, SolveOptions};
use hs::holes::{self, DisjointMode};
use hs::search::{search as core_search, SearchObjective, SearchParams};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl ToString) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Integer points in general position.
#[pyclass(name = "PointSet", module = "holesat")]
#[derive(Clone)]
struct PyPointSet {
    inner: CorePointSet,
}

#[pymethods]
impl PyPointSet {
    #[new]
    fn new(coords: Vec<(i64, i64)>) -> PyResult<Self> {
        CorePointSet::from_coords(&coords).map(|inner| PyPointSet { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn read(path: PathBuf) -> PyResult<Self> {
        CorePointSet::read_file(&path).map(|inner| PyPointSet { inner }).map_err(value_err)
    }

    fn write(&self, path: PathBuf) -> PyResult<()> {
        self.inner.write_file(&path).map_err(runtime_err)
    }

    fn coords(&self) -> Vec<(i64, i64)> {
        self.inner.coords()
    }

    /// +1, -1 for counterclockwise / clockwise.
    fn orient(&self, a: usize, b: usize, c: usize) -> PyResult<i8> {
        for i in [a, b, c] {
            self.inner.check_index(i).map_err(value_err)?;
        }
        Ok(self.inner.orient(a, b, c).sign())
    }

    /// `(relabelled set, order)` with `order[i]` the input index at position `i`.
    fn canonical(&self) -> PyResult<(PyPointSet, Vec<usize>)> {
        let c = canonicalize(&self.inner).map_err(value_err)?;
        Ok((PyPointSet { inner: c.relabeled }, c.order))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("PointSet({:?})", self.inner.coords())
    }

    fn __eq__(&self, other: &PyPointSet) -> bool {
        self.inner == other.inner
    }
}

fn indices(hs: Vec<holes::Hole>) -> Vec<Vec<usize>> {
    hs.into_iter().map(|h| h.indices).collect()
}

fn disjoint_mode(interior: bool) -> DisjointMode {
    if interior {
        DisjointMode::InteriorDisjoint
    } else {
        DisjointMode::Disjoint
    }
}

#[pyfunction]
fn enumerate_holes(s: &PyPointSet, k: usize) -> Vec<Vec<usize>> {
    indices(holes::enumerate_holes(&s.inner, k))
}

#[pyfunction]
fn enumerate_gons(s: &PyPointSet, k: usize) -> Vec<Vec<usize>> {
    indices(holes::enumerate_gons(&s.inner, k))
}

#[pyfunction]
fn is_hole(s: &PyPointSet, subset: Vec<usize>) -> PyResult<bool> {
    holes::is_hole(&s.inner, &subset).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (s, sizes, interior=false))]
fn count_disjoint(s: &PyPointSet, sizes: Vec<usize>, interior: bool) -> PyResult<u64> {
    holes::count_disjoint_tuples(&s.inner, &sizes, disjoint_mode(interior)).map_err(value_err)
}

/// One tuple of pairwise (interior-)disjoint holes in the requested order, or None.
#[pyfunction]
#[pyo3(signature = (s, sizes, interior=false))]
fn find_disjoint(s: &PyPointSet, sizes: Vec<usize>, interior: bool) -> PyResult<Option<Vec<Vec<usize>>>> {
    let t = holes::find_disjoint_tuple(&s.inner, &sizes, disjoint_mode(interior)).map_err(value_err)?;
    Ok(t.map(indices))
}

/// A stored witness (`fig2-n16`, `fig4-n21`, `fig6-n14`) or a
/// construction (`double-circle`, `two-ring`, which need `n`).
#[pyfunction]
#[pyo3(signature = (name, n=None))]
fn construct(name: &str, n: Option<usize>) -> PyResult<PyPointSet> {
    let need = || n.ok_or_else(|| value_err(format!("{name} needs n")));
    let s = match name {
        "double-circle" => holes::generate_double_circle(need()?),
        "two-ring" => holes::generate_two_ring(need()?),
        other => holes::witness(other),
    };
    s.map(|inner| PyPointSet { inner }).map_err(value_err)
}

/// A SAT instance together with its variable registry.
#[pyclass(name = "Instance", module = "holesat")]
struct PyInstance {
    inner: CnfInstance,
}

#[pymethods]
impl PyInstance {
    #[getter]
    fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    #[getter]
    fn num_clauses(&self) -> usize {
        self.inner.num_clauses()
    }

    #[getter]
    fn problem(&self) -> String {
        self.inner.problem.to_string()
    }

    /// Clause count per group, keyed by group name.
    fn group_counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (g, range) in self.inner.groups() {
            d.set_item(g.name(), range.len())?;
        }
        Ok(d)
    }

    fn dimacs(&self) -> String {
        self.inner.to_dimacs()
    }

    /// Writes the DIMACS file and its variable sidecar.
    fn write(&self, path: PathBuf) -> PyResult<()> {
        self.inner.write_files(&path).map_err(runtime_err)
    }

    /// Solves with the solver and checker found via `HOLESAT_*` variables or
    /// PATH. Returns the report as a dict.
    #[pyo3(signature = (workdir, check=true))]
    fn solve<'py>(&self, py: Python<'py>, workdir: PathBuf, check: bool) -> PyResult<Bound<'py, PyAny>> {
        let cfg = HarnessConfig::from_env().map_err(runtime_err)?;
        let id = format!("{}-n{}", self.inner.problem.mode.name(), self.inner.problem.n);
        let opts = SolveOptions { proof: check, check };
        let report = py
            .detach(|| solve_instance(&self.inner, &id, &workdir, &cfg, opts))
            .map_err(runtime_err)?;
        let json = serde_json::to_string(&report).map_err(runtime_err)?;
        py.import("json")?.call_method1("loads", (json,))
    }
}

#[allow(clippy::too_many_arguments)]
fn problem(
    n: usize,
    mode: &str,
    sizes: Vec<usize>,
    threshold: Option<usize>,
    paper_faithful: bool,
    hints: bool,
    relaxed_lr: bool,
    simplified_holes: bool,
) -> PyResult<HoleProblem> {
    let mode = Mode::from_parts(mode, &sizes, threshold).map_err(value_err)?;
    let p = HoleProblem::new(n, mode)
        .with_encoding(if paper_faithful { Encoding::PaperFaithful } else { Encoding::Compact })
        .with_hints(hints)
        .with_relaxed_lr(relaxed_lr)
        .with_simplified_holes(simplified_holes);
    p.validate().map_err(value_err)?;
    Ok(p)
}

#[pyfunction]
#[pyo3(signature = (n, mode="two-disjoint-holes", sizes=vec![5, 5], threshold=None, paper_faithful=false, hints=false, relaxed_lr=false, simplified_holes=false))]
#[allow(clippy::too_many_arguments)]
fn encode(
    py: Python<'_>,
    n: usize,
    mode: &str,
    sizes: Vec<usize>,
    threshold: Option<usize>,
    paper_faithful: bool,
    hints: bool,
    relaxed_lr: bool,
    simplified_holes: bool,
) -> PyResult<PyInstance> {
    let p = problem(n, mode, sizes, threshold, paper_faithful, hints, relaxed_lr, simplified_holes)?;
    let inner = py.detach(|| build_instance(&p)).map_err(value_err)?;
    Ok(PyInstance { inner })
}

/// Checks the order type of `s` against a problem's prohibition. Returns
/// None if `s` avoids it, else a description of the offending structure
/// (in canonical labels).
#[pyfunction]
#[pyo3(signature = (s, mode, sizes, threshold=None))]
fn verify_points(s: &PyPointSet, mode: &str, sizes: Vec<usize>, threshold: Option<usize>) -> PyResult<Option<String>> {
    let p = problem(s.inner.len(), mode, sizes, threshold, false, false, false, false)?;
    let sig = canonicalize(&s.inner).map_err(value_err)?.chirotope();
    Ok(verify_model(&sig, &p).err().map(|c| c.to_string()))
}

/// Annealing search for an `n`-point set with objective count zero.
/// Objectives look like `holes:5`, `gons:5`, `disjoint:5,5`,
/// `interior-disjoint:5,5`.
#[pyfunction]
#[pyo3(signature = (n, objective, seed=0, budget=None, restarts=None, workers=None))]
fn search(
    py: Python<'_>,
    n: usize,
    objective: &str,
    seed: u64,
    budget: Option<u64>,
    restarts: Option<u64>,
    workers: Option<usize>,
) -> PyResult<Option<PyPointSet>> {
    let obj: SearchObjective = objective.parse().map_err(value_err)?;
    let d = SearchParams::default();
    let params = SearchParams {
        budget: budget.unwrap_or(d.budget),
        restarts: restarts.unwrap_or(d.restarts),
        workers: workers.unwrap_or(d.workers),
        ..d
    };
    let out = py.detach(|| core_search(n, &obj, seed, &params)).map_err(value_err)?;
    Ok(out.witness.map(|inner| PyPointSet { inner }))
}

#[pymodule]
fn holesat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPointSet>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(enumerate_holes, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_gons, m)?)?;
    m.add_function(wrap_pyfunction!(is_hole, m)?)?;
    m.add_function(wrap_pyfunction!(count_disjoint, m)?)?;
    m.add_function(wrap_pyfunction!(find_disjoint, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(verify_points, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
