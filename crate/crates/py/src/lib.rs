//! Python bindings: instance generation, planting, both recovery
//! algorithms, the threshold theory and the experiment harness.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use planted_rgg::experiments::{log_grid, log_grid_int, ExperimentConfig};
use planted_rgg::geometry::{blocking_region_fraction, touching_lens_fraction, unit_ball_volume};
use planted_rgg::rgg::io::{self as gio, Instance};
use planted_rgg::rgg::VertexCount;
use planted_rgg::theory::{self, RegimeCuts};
use planted_rgg::{self as core, ClassifierConfig, Error};

fn to_py(err: Error) -> PyErr {
    let msg = format!("[{}] {err}", err.code());
    match err {
        Error::Io(_) => PyOSError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

fn params(n: f64, d: usize, mu: Option<f64>, radius: Option<f64>) -> PyResult<core::ModelParams> {
    match (mu, radius) {
        (Some(mu), None) => core::ModelParams::from_mu(n, d, mu).map_err(to_py),
        (None, Some(r)) => core::ModelParams::from_radius(n, d, r).map_err(to_py),
        _ => Err(PyValueError::new_err("give exactly one of mu= or radius=")),
    }
}

#[pyclass(name = "Graph", module = "planted_rgg_py", frozen)]
struct PyGraph(core::Graph);

#[pymethods]
impl PyGraph {
    /// Geometric graph from a list of points in `[0, 1)^d`.
    #[staticmethod]
    fn from_positions(points: Vec<Vec<f64>>, radius: f64) -> PyResult<Self> {
        let pts = points
            .into_iter()
            .map(core::Point::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        core::Graph::from_positions(&pts, radius).map(PyGraph).map_err(to_py)
    }

    #[staticmethod]
    fn from_edges(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::from_edges(vertex_count, &edges).map(PyGraph).map_err(to_py)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.0.radius()
    }

    fn degrees(&self) -> Vec<usize> {
        self.0.degrees()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.0.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.0.neighbors(v).to_vec())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn positions(&self) -> Vec<Vec<f64>> {
        self.0.positions().into_iter().map(core::Point::into_coords).collect()
    }

    fn has_edge(&self, i: usize, j: usize) -> bool {
        self.0.has_edge(i, j)
    }

    fn common_neighbors(&self, i: usize, j: usize) -> PyResult<Vec<usize>> {
        self.0.common_neighbors(i, j).map_err(to_py)
    }

    fn is_clique(&self, vertices: Vec<usize>) -> bool {
        self.0.is_clique(&vertices)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        gio::save(&Instance::Graph(self.0.clone()), path.as_ref()).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={}, d={}, r={})",
            self.0.vertex_count(),
            self.0.edge_count(),
            self.0.dim(),
            self.0.radius()
        )
    }
}

#[pyclass(name = "PlantedInstance", module = "planted_rgg_py", frozen)]
struct PyPlanted(core::PlantedInstance);

#[pymethods]
impl PyPlanted {
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    #[getter]
    fn clique(&self) -> Vec<usize> {
        self.0.clique().to_vec()
    }

    #[getter]
    fn planted_edges(&self) -> Vec<(usize, usize)> {
        self.0.planted_edges().to_vec()
    }

    fn base_graph(&self) -> PyGraph {
        PyGraph(self.0.base_graph())
    }

    fn save(&self, path: &str) -> PyResult<()> {
        gio::save(&Instance::Planted(self.0.clone()), path.as_ref()).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "PlantedInstance(vertices={}, k={}, planted_edges={})",
            self.0.graph().vertex_count(),
            self.0.clique().len(),
            self.0.planted_edges().len()
        )
    }
}

/// Reads an instance file; returns a `Graph` or a `PlantedInstance`.
#[pyfunction]
fn load(py: Python<'_>, path: &str) -> PyResult<Py<PyAny>> {
    Ok(match gio::load(path.as_ref()).map_err(to_py)? {
        Instance::Graph(g) => Py::new(py, PyGraph(g))?.into_any(),
        Instance::Planted(p) => Py::new(py, PyPlanted(p))?.into_any(),
    })
}

#[pyfunction]
#[pyo3(signature = (n, d, *, mu=None, radius=None, seed=0, fixed_n=None))]
fn sample_instance(
    n: f64,
    d: usize,
    mu: Option<f64>,
    radius: Option<f64>,
    seed: u64,
    fixed_n: Option<usize>,
) -> PyResult<PyGraph> {
    let p = params(n, d, mu, radius)?;
    let count = fixed_n.map_or(VertexCount::Poisson, VertexCount::Fixed);
    core::rgg::sample_instance_with(&p, count, seed).map(PyGraph).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (graph, k, seed=0))]
fn plant_clique(graph: &PyGraph, k: usize, seed: u64) -> PyResult<PyPlanted> {
    core::plant_clique(&graph.0, k, seed).map(PyPlanted).map_err(to_py)
}

#[pyfunction]
fn plant_clique_on(graph: &PyGraph, vertices: Vec<usize>) -> PyResult<PyPlanted> {
    core::rgg::plant_clique_on(&graph.0, &vertices).map(PyPlanted).map_err(to_py)
}

fn result_dict<'py>(
    py: Python<'py>,
    result: core::RecoveryResult,
    truth: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyDict>> {
    let result = match truth {
        Some(t) => core::evaluate(result, &t),
        None => result,
    };
    let d = PyDict::new(py);
    d.set_item("method", result.method.as_str())?;
    d.set_item("k", result.k)?;
    d.set_item("output", result.output)?;
    d.set_item("exact_match", result.exact_match)?;
    d.set_item("overlap", result.overlap)?;
    d.set_item("edges_scanned", result.work.edges_scanned)?;
    d.set_item("clique_checks", result.work.clique_checks)?;
    d.set_item("adjacency_probes", result.work.adjacency_probes)?;
    Ok(d)
}

/// Top-`k` vertices by degree. Pass `truth` to score the result.
#[pyfunction]
#[pyo3(signature = (graph, k, truth=None))]
fn vd_recover<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    k: usize,
    truth: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = core::vd_recover(&graph.0, k).map_err(to_py)?;
    result_dict(py, r, truth)
}

/// Common-neighbour recovery. Pass `truth` to score the result.
#[pyfunction]
#[pyo3(signature = (graph, k, truth=None))]
fn cn_recover<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    k: usize,
    truth: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = core::cn_recover(&graph.0, k).map_err(to_py)?;
    result_dict(py, r, truth)
}

#[pyfunction]
fn torus_distance(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    let x = core::Point::new(x).map_err(to_py)?;
    let y = core::Point::new(y).map_err(to_py)?;
    core::torus_distance(&x, &y).map_err(to_py)
}

#[pyfunction]
fn lambert_w0(z: f64) -> PyResult<f64> {
    theory::lambert_w0(z).map_err(to_py)
}

#[pyfunction]
fn lambert_wm1(z: f64) -> PyResult<f64> {
    theory::lambert_wm1(z).map_err(to_py)
}

#[pyfunction]
fn inverse_entropy_plus(y: f64) -> PyResult<f64> {
    theory::inverse_entropy_plus(y).map_err(to_py)
}

#[pyfunction]
fn inverse_entropy_minus(y: f64) -> PyResult<f64> {
    theory::inverse_entropy_minus(y).map_err(to_py)
}

/// `φ_d`, `c₁,d`, `c₂,d`, `r`, `μ`, `α`, regime, `T(n)` and `t(n)`.
#[pyfunction]
#[pyo3(signature = (n, d, *, mu=None, radius=None))]
fn constants<'py>(
    py: Python<'py>,
    n: f64,
    d: usize,
    mu: Option<f64>,
    radius: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params(n, d, mu, radius)?;
    let th = theory::degree_thresholds(&p, &RegimeCuts::default()).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("phi_d", unit_ball_volume(d).map_err(to_py)?)?;
    out.set_item("c1", blocking_region_fraction(d).map_err(to_py)?)?;
    out.set_item("c2", touching_lens_fraction(d).map_err(to_py)?)?;
    out.set_item("radius", p.radius())?;
    out.set_item("mu", p.mu())?;
    out.set_item("alpha", th.alpha)?;
    out.set_item("regime", th.regime.as_str())?;
    out.set_item("T", th.max_degree)?;
    out.set_item("t", th.min_degree)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (n, d, k, *, mu=None, radius=None, epsilon=0.1))]
fn classify_regime<'py>(
    py: Python<'py>,
    n: f64,
    d: usize,
    k: usize,
    mu: Option<f64>,
    radius: Option<f64>,
    epsilon: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params(n, d, mu, radius)?;
    let v = core::classify_regime(&p, k, &ClassifierConfig::with_epsilon(epsilon)).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("vd", v.vd.as_str())?;
    out.set_item("cn", v.cn.as_str())?;
    out.set_item("alpha", v.alpha)?;
    out.set_item("regime", v.regime.as_str())?;
    out.set_item("T", v.max_degree)?;
    out.set_item("t", v.min_degree)?;
    out.set_item("notes", v.notes)?;
    Ok(out)
}

/// Runs a success-rate grid and returns the CSV text.
#[pyfunction]
#[pyo3(signature = (n, d, mu, k, *, trials=200, master_seed=0, methods=None, fixed_n=None, threads=None))]
#[allow(clippy::too_many_arguments)]
fn run_experiment(
    py: Python<'_>,
    n: f64,
    d: usize,
    mu: Vec<f64>,
    k: Vec<usize>,
    trials: usize,
    master_seed: u64,
    methods: Option<Vec<String>>,
    fixed_n: Option<usize>,
    threads: Option<usize>,
) -> PyResult<String> {
    let mut cfg = ExperimentConfig::new(n, d, mu, k);
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.fixed_n = fixed_n;
    cfg.threads = threads;
    if let Some(m) = methods {
        cfg.methods = m
            .iter()
            .map(|s| core::Method::parse(s))
            .collect::<Result<_, _>>()
            .map_err(to_py)?;
    }
    py.detach(|| core::experiments::run_grid(&cfg).and_then(|g| g.to_csv()))
        .map_err(to_py)
}

/// Classifier verdicts over log-spaced grids, as CSV text.
#[pyfunction]
#[pyo3(signature = (n, d, mu_min, mu_max, mu_count, k_min, k_max, k_count, *, epsilon=0.1))]
#[allow(clippy::too_many_arguments)]
fn phase_diagram(
    n: f64,
    d: usize,
    mu_min: f64,
    mu_max: f64,
    mu_count: usize,
    k_min: usize,
    k_max: usize,
    k_count: usize,
    epsilon: f64,
) -> PyResult<String> {
    let mus = log_grid(mu_min, mu_max, mu_count).map_err(to_py)?;
    let ks = log_grid_int(k_min, k_max, k_count).map_err(to_py)?;
    core::experiments::phase_diagram(n, d, &mus, &ks, &ClassifierConfig::with_epsilon(epsilon))
        .and_then(|pd| pd.to_csv())
        .map_err(to_py)
}

#[pymodule]
fn planted_rgg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPlanted>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(sample_instance, m)?)?;
    m.add_function(wrap_pyfunction!(plant_clique, m)?)?;
    m.add_function(wrap_pyfunction!(plant_clique_on, m)?)?;
    m.add_function(wrap_pyfunction!(vd_recover, m)?)?;
    m.add_function(wrap_pyfunction!(cn_recover, m)?)?;
    m.add_function(wrap_pyfunction!(torus_distance, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_w0, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_wm1, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_entropy_plus, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_entropy_minus, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(phase_diagram, m)?)?;
    Ok(())
}
