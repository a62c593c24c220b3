//! Python bindings for the `wmesc` solver.
//!
//! ```python
//! import pywmesc
//! inst = pywmesc.Instance.parse("4 3\n1 2 0 1\n1 2 1 2\n1 2 2 3\n")
//! best, stats = pywmesc.solve(inst)
//! assert best.chosen == [0, 2]
//! ```

use std::time::Duration;

use pyo3::exceptions::{PyTimeoutError, PyValueError};
use pyo3::prelude::*;

use wmesc::analysis::Slack;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Weighted subsets of the ground set `0..n`.
#[pyclass(name = "Instance", frozen)]
struct PyInstance {
    inner: wmesc::Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    #[pyo3(signature = (n, subsets, weights=None))]
    fn new(n: usize, subsets: Vec<Vec<usize>>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let inner = match weights {
            Some(w) => wmesc::Instance::new(n, subsets, w),
            None => wmesc::Instance::unweighted(n, subsets),
        }
        .map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Parse WMESC v1 text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = wmesc::parse_instance(text).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Serialize to WMESC v1 text.
    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn subsets(&self) -> Vec<Vec<usize>> {
        self.inner.subsets().to_vec()
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    /// Edges `(u, v)`, `u < v`, of the intersection graph.
    fn intersection_edges(&self) -> Vec<(usize, usize)> {
        wmesc::IntersectionGraph::build(&self.inner).edges()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Instance(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyclass(name = "Solution", frozen)]
struct PySolution {
    #[pyo3(get)]
    chosen: Vec<usize>,
    #[pyo3(get)]
    covered: usize,
    #[pyo3(get)]
    weight: f64,
}

impl From<wmesc::Solution> for PySolution {
    fn from(s: wmesc::Solution) -> Self {
        Self {
            chosen: s.chosen,
            covered: s.covered,
            weight: s.weight,
        }
    }
}

impl PySolution {
    fn to_core(&self) -> wmesc::Solution {
        wmesc::Solution {
            chosen: self.chosen.clone(),
            covered: self.covered,
            weight: self.weight,
        }
    }
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!(
            "Solution(chosen={:?}, covered={}, weight={})",
            self.chosen, self.covered, self.weight
        )
    }
}

#[pyclass(name = "SolveStats", frozen)]
struct PySolveStats {
    #[pyo3(get)]
    branch_nodes: u64,
    #[pyo3(get)]
    leaves: u64,
    #[pyo3(get)]
    max_depth: usize,
    #[pyo3(get)]
    elapsed_s: f64,
}

#[pymethods]
impl PySolveStats {
    fn __repr__(&self) -> String {
        format!(
            "SolveStats(branch_nodes={}, leaves={}, max_depth={}, elapsed_s={})",
            self.branch_nodes, self.leaves, self.max_depth, self.elapsed_s
        )
    }
}

/// Exact optimum. Raises `TimeoutError` when `timeout` (seconds) runs out.
#[pyfunction]
#[pyo3(signature = (inst, tol=wmesc::DEFAULT_TOL, timeout=None))]
fn solve(py: Python<'_>, inst: &PyInstance, tol: f64, timeout: Option<f64>) -> PyResult<(PySolution, PySolveStats)> {
    let mut solver = wmesc::Solver::new().with_tol(tol);
    if let Some(t) = timeout {
        let t = Duration::try_from_secs_f64(t).map_err(value_err)?;
        solver = solver.with_timeout(t);
    }
    let (sol, stats) = py.detach(|| solver.solve(&inst.inner)).map_err(|e| match e {
        wmesc::SolveError::Timeout => PyTimeoutError::new_err(e.to_string()),
        other => value_err(other),
    })?;
    Ok((
        sol.into(),
        PySolveStats {
            branch_nodes: stats.branch_nodes,
            leaves: stats.leaves,
            max_depth: stats.max_depth,
            elapsed_s: stats.elapsed_secs(),
        },
    ))
}

/// Exhaustive reference solver (m <= 25).
#[pyfunction]
fn brute_force(inst: &PyInstance) -> PyResult<PySolution> {
    wmesc::brute_force(&inst.inner).map(Into::into).map_err(value_err)
}

#[pyfunction]
fn evaluate(inst: &PyInstance, chosen: Vec<usize>) -> PyResult<PySolution> {
    wmesc::evaluate(&inst.inner, &chosen).map(Into::into).map_err(value_err)
}

/// True iff `a` is strictly preferred to `b`.
#[pyfunction]
#[pyo3(signature = (a, b, tol=wmesc::DEFAULT_TOL))]
fn better(a: &PySolution, b: &PySolution, tol: f64) -> bool {
    wmesc::better(&a.to_core(), &b.to_core(), tol)
}

fn packing(triples: Vec<(String, String, String)>) -> PyResult<wmesc::PackingInstance> {
    wmesc::PackingInstance::new(triples.into_iter().map(|(a, b, c)| [a, b, c]).collect()).map_err(value_err)
}

#[pyfunction]
fn reduce_3set_packing(triples: Vec<(String, String, String)>) -> PyResult<PyInstance> {
    let inner = wmesc::reduce_3set_packing(&packing(triples)?).map_err(value_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
fn brute_force_packing(triples: Vec<(String, String, String)>) -> PyResult<usize> {
    wmesc::brute_force_packing(&packing(triples)?).map_err(value_err)
}

#[pyfunction]
fn gen_random(seed: u64, n: usize, m: usize, max_size: usize, overlap: f64) -> PyResult<PyInstance> {
    let cfg = wmesc::GenConfig {
        seed,
        n,
        m,
        max_size,
        overlap,
    };
    let inner = wmesc::gen_random(&cfg).map_err(value_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
fn gen_path(m: usize, seed: u64) -> PyResult<PyInstance> {
    let inner = wmesc::gen_path(m, seed).map_err(value_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
fn gen_ring(m: usize, seed: u64) -> PyResult<PyInstance> {
    let inner = wmesc::gen_ring(m, seed).map_err(value_err)?;
    Ok(PyInstance { inner })
}

/// Returns `(instance, planted_indices)`.
#[pyfunction]
fn gen_planted(n: usize, k: usize, noise: usize, seed: u64) -> PyResult<(PyInstance, Vec<usize>)> {
    let (inner, planted) = wmesc::gen_planted(n, k, noise, seed).map_err(value_err)?;
    Ok((PyInstance { inner }, planted))
}

/// Root of the characteristic polynomial of `T(m) <= sum T(m - gap)`.
#[pyfunction]
fn branching_root(gaps: Vec<usize>) -> PyResult<f64> {
    let r = wmesc::Recurrence::new(gaps).map_err(value_err)?;
    Ok(wmesc::branching_root(&r))
}

/// Returns `(passed, ratio, bound)`. `slack` is `"m+1"` or `"2m^2"`.
#[pyfunction]
#[pyo3(signature = (leaves, m, root, slack="m+1"))]
fn check_bound(leaves: u64, m: usize, root: f64, slack: &str) -> PyResult<(bool, f64, f64)> {
    let slack = match slack {
        "m+1" => Slack::LinearPlusOne,
        "2m^2" => Slack::TwiceSquare,
        other => return Err(value_err(format!("unknown slack {other:?}"))),
    };
    let r = wmesc::check_bound(leaves, m, root, slack);
    Ok((r.pass, r.ratio, r.bound))
}

#[pymodule]
fn pywmesc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PySolveStats>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(better, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_3set_packing, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_packing, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add_function(wrap_pyfunction!(gen_path, m)?)?;
    m.add_function(wrap_pyfunction!(gen_ring, m)?)?;
    m.add_function(wrap_pyfunction!(gen_planted, m)?)?;
    m.add_function(wrap_pyfunction!(branching_root, m)?)?;
    m.add_function(wrap_pyfunction!(check_bound, m)?)?;
    Ok(())
}
