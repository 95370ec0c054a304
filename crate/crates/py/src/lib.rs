//! Python bindings: graphs, the four solvers, verification, the exact
//! oracles and the coverage reduction.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ksep::brute::{brute_esep, brute_ptrans, brute_ssep, brute_vsep};
use ksep::cleanup::{verify_solution, Problem};
use ksep::reduction::reduce_coverage_to_vsep;
use ksep::{Error, GraphKind, SolveConfig, SolveReport};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) | Error::Guard(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn problem(name: &str) -> PyResult<Problem> {
    name.parse().map_err(to_py)
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: ksep::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self { inner: ksep::Graph::from_edges(n, &edges).map_err(to_py)? })
    }

    /// Parses the `n m` edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: ksep::parse_graph(text).map_err(to_py)? })
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed=0))]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        Ok(Self { inner: ksep::gen_graph(GraphKind::RandomGnp { n, p }, seed).map_err(to_py)? })
    }

    #[staticmethod]
    fn clique(n: usize) -> Self {
        Self { inner: ksep::graph::clique(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Self { inner: ksep::graph::cycle(n) }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Self { inner: ksep::graph::path(n) }
    }

    #[staticmethod]
    fn star(leaves: usize) -> Self {
        Self { inner: ksep::graph::star(leaves) }
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
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Result of [`solve`].
#[pyclass(frozen)]
struct Report {
    inner: SolveReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn problem(&self) -> &'static str {
        self.inner.problem.name()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn frac(&self) -> f64 {
        self.inner.frac
    }

    #[getter]
    fn cost(&self) -> usize {
        self.inner.costs.total
    }

    /// Removed vertex ids, or edge ids for `esep`.
    #[getter]
    fn removed(&self) -> Vec<usize> {
        self.inner.removed.clone()
    }

    /// Largest component size, red count or path length left.
    #[getter]
    fn certificate(&self) -> usize {
        self.inner.certificate.value()
    }

    #[getter]
    fn trial_costs(&self) -> Vec<usize> {
        self.inner.trial_costs.clone()
    }

    #[getter]
    fn lp_rounds(&self) -> usize {
        self.inner.lp_rounds
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Report(problem={}, k={}, frac={:.4}, cost={})", self.problem(), self.inner.k, self.inner.frac, self.cost())
    }
}

/// Runs the relaxation, rounding and cleanup for `problem` in
/// `{"vsep", "esep", "ssep", "ptrans"}`.
#[pyfunction]
#[pyo3(signature = (graph, problem, k, *, epsilon=None, seed=0, trials=10, red=None, timings=true))]
#[allow(clippy::too_many_arguments)]
fn solve(py: Python<'_>, graph: &Graph, problem: &str, k: usize, epsilon: Option<f64>, seed: u64, trials: usize, red: Option<Vec<usize>>, timings: bool) -> PyResult<Report> {
    let cfg = SolveConfig { epsilon, seed, trials, red: red.unwrap_or_default(), ..SolveConfig::new(self::problem(problem)?, k) };
    let g = graph.inner.clone();
    let report = py.detach(move || ksep::solve(&g, &cfg)).map_err(to_py)?;
    Ok(Report { inner: if timings { report } else { report.without_timings() } })
}

/// Checks `removed` against the problem's bound. Returns
/// `(feasible, certificate)`.
#[pyfunction]
#[pyo3(signature = (graph, problem, k, removed, red=None))]
fn verify(graph: &Graph, problem: &str, k: usize, removed: Vec<usize>, red: Option<Vec<usize>>) -> PyResult<(bool, usize)> {
    let report = verify_solution(&graph.inner, self::problem(problem)?, k, &red.unwrap_or_default(), &removed).map_err(to_py)?;
    Ok((report.feasible, report.certificate.value()))
}

/// An optimal solution by exhaustive search; small graphs only.
#[pyfunction]
#[pyo3(signature = (graph, problem, k, red=None))]
fn brute_force(py: Python<'_>, graph: &Graph, problem: &str, k: usize, red: Option<Vec<usize>>) -> PyResult<Vec<usize>> {
    let p = self::problem(problem)?;
    let g = graph.inner.clone();
    let red = red.unwrap_or_default();
    py.detach(move || match p {
        Problem::Vsep => brute_vsep(&g, k),
        Problem::Esep => brute_esep(&g, k),
        Problem::Ssep => brute_ssep(&g, &red, k),
        Problem::Ptrans => brute_ptrans(&g, k),
    })
    .map_err(to_py)
}

/// The k-Vertex Separator instance built from a k-Edge Coverage instance.
/// Returns `(graph, k_prime)`.
#[pyfunction]
fn reduce_coverage(graph: &Graph, k: usize) -> PyResult<(Graph, usize)> {
    let art = reduce_coverage_to_vsep(&graph.inner, k).map_err(to_py)?;
    Ok((Graph { inner: art.target }, art.k_prime))
}

#[pymodule]
fn pyksep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_coverage, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
