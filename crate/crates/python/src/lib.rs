use std::sync::Arc;

use ::gkm::algebra::RationalFunction;
use ::gkm::cohomology::EquivariantClass;
use ::gkm::curves::CurveLattice;
use ::gkm::graph::{self, construct, GkmGraph};
use ::gkm::gw::{GwOptions, Insertion, MarkingSum, Mode, UnstablePsi};
use ::gkm::{cli, connection, cy, fixtures, quantum};
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: ::gkm::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction(py: Python<'_>, q: &BigRational) -> PyResult<Py<PyAny>> {
    let f = py.import("fractions")?.getattr("Fraction")?;
    Ok(f.call1((q.numer().clone(), q.denom().clone()))?.unbind())
}

#[pyclass(name = "Graph", module = "pygkm", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Arc<GkmGraph>,
}

fn wrap(g: ::gkm::Result<GkmGraph>) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: Arc::new(g.map_err(err)?) })
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn projective_space(n: usize) -> PyGraph {
        PyGraph { inner: Arc::new(construct::projective_space(n)) }
    }

    #[staticmethod]
    fn grassmannian(k: usize, n: usize) -> PyResult<PyGraph> {
        wrap(construct::grassmannian(k, n))
    }

    #[staticmethod]
    fn full_flag(n: usize) -> PyResult<PyGraph> {
        wrap(construct::full_flag(n))
    }

    #[staticmethod]
    fn partial_flag(dims: Vec<usize>, n: usize) -> PyResult<PyGraph> {
        wrap(construct::partial_flag(&dims, n))
    }

    #[staticmethod]
    fn local_model(a1: i64, a2: i64) -> PyGraph {
        PyGraph { inner: Arc::new(construct::local_model(a1, a2)) }
    }

    #[staticmethod]
    fn local_model_cy(a1: i64, a2: i64) -> PyGraph {
        PyGraph { inner: Arc::new(construct::local_model_cy(a1, a2)) }
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<PyGraph> {
        wrap(fixtures::fixture(name))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyGraph> {
        wrap(graph::io::from_json(text))
    }

    fn product(&self, other: &PyGraph) -> PyGraph {
        PyGraph { inner: Arc::new(construct::product(&self.inner, &other.inner)) }
    }

    fn to_json(&self) -> String {
        graph::io::to_json(&self.inner)
    }

    fn describe(&self) -> String {
        self.inner.describe()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn vertex(&self, label: &str) -> PyResult<usize> {
        self.inner.vertex(label).ok_or_else(|| PyValueError::new_err(format!("unknown vertex {label:?}")))
    }

    /// (source, target, weight at source) for every edge.
    fn edges(&self) -> Vec<(usize, usize, Vec<i64>)> {
        let g = &self.inner;
        g.edges().iter().enumerate().map(|(e, &(s, d))| (s, d, g.weight(2 * e).clone())).collect()
    }

    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(|v| v.to_string()).collect()
    }

    fn betti_numbers(&self) -> PyResult<Vec<usize>> {
        graph::betti_numbers(&self.inner).map_err(err)
    }

    fn chern_numbers(&self) -> PyResult<Vec<i64>> {
        connection::chern_numbers(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("<Graph: {} vertices, {} edges, rank {}>", self.inner.num_vertices(), self.inner.num_edges(), self.inner.rank())
    }
}

#[pyclass(name = "Class", module = "pygkm", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyClass {
    inner: EquivariantClass,
}

#[pymethods]
impl PyClass {
    /// Parse a class expression such as "c1^2 + pt@12".
    #[staticmethod]
    fn parse(graph: &PyGraph, expr: &str) -> PyResult<PyClass> {
        Ok(PyClass { inner: cli::parse_class(&graph.inner, expr).map_err(err)? })
    }

    #[staticmethod]
    fn point(graph: &PyGraph, vertex: usize) -> PyResult<PyClass> {
        if vertex >= graph.inner.num_vertices() {
            return Err(PyValueError::new_err("vertex out of range"));
        }
        Ok(PyClass { inner: EquivariantClass::point_class(graph.inner.clone(), vertex) })
    }

    #[staticmethod]
    fn first_chern(graph: &PyGraph) -> PyClass {
        PyClass { inner: EquivariantClass::first_chern_class(graph.inner.clone()) }
    }

    #[staticmethod]
    fn one(graph: &PyGraph) -> PyClass {
        PyClass { inner: EquivariantClass::one(graph.inner.clone()) }
    }

    fn __add__(&self, other: &PyClass) -> PyResult<PyClass> {
        Ok(PyClass { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &PyClass) -> PyResult<PyClass> {
        Ok(PyClass { inner: self.inner.mul(&other.inner).map_err(err)? })
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> PyClass {
        PyClass { inner: self.inner.pow(k) }
    }

    fn values(&self) -> Vec<String> {
        self.inner.values().iter().map(|v| v.to_string()).collect()
    }

    fn is_gkm_class(&self) -> bool {
        self.inner.is_gkm_class()
    }

    fn integrate(&self) -> String {
        self.inner.integrate().to_string()
    }

    fn __repr__(&self) -> String {
        format!("<Class [{}]>", self.values().join(", "))
    }
}

#[pyclass(name = "CurveLattice", module = "pygkm", frozen, skip_from_py_object)]
struct PyLattice {
    inner: CurveLattice,
}

#[pymethods]
impl PyLattice {
    #[new]
    fn new(graph: &PyGraph) -> PyResult<PyLattice> {
        Ok(PyLattice { inner: CurveLattice::new(graph.inner.clone()).map_err(err)? })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn class_of_edge(&self, e: usize) -> PyResult<Vec<i64>> {
        if e >= self.inner.graph().num_edges() {
            return Err(PyValueError::new_err("edge out of range"));
        }
        Ok(self.inner.class_of_edge(e))
    }

    fn edge_chern_numbers(&self) -> Vec<i64> {
        self.inner.edge_chern_numbers().to_vec()
    }

    fn effective_decompositions(&self, beta: Vec<i64>) -> PyResult<Vec<Vec<u32>>> {
        self.inner.effective_decompositions(&beta).map_err(err)
    }
}

fn options(mode: &str, naive: bool, cotangent_psi: bool) -> PyResult<GwOptions> {
    let mode = match mode {
        "auto" => Mode::Auto,
        "symbolic" => Mode::Symbolic,
        "evaluate" => Mode::Evaluate,
        _ => return Err(PyValueError::new_err(format!("unknown mode {mode:?}"))),
    };
    let markings = if naive { MarkingSum::PerIsomorphismClass } else { MarkingSum::Grouped };
    let unstable_psi = if cotangent_psi { UnstablePsi::Cotangent } else { UnstablePsi::Reject };
    Ok(GwOptions { mode, markings, unstable_psi, ..Default::default() })
}

fn constant_or_text(py: Python<'_>, f: &RationalFunction) -> PyResult<Py<PyAny>> {
    match f.constant_value() {
        Some(q) => fraction(py, &q),
        None => Ok(f.to_string().into_pyobject(py)?.into_any().unbind()),
    }
}

/// GW_{0,n}^β with one insertion per entry: a Class or a (Class, ψ-power) pair.
/// Numbers come back as Fraction, other results as text.
#[pyfunction]
#[pyo3(signature = (graph, beta, insertions, mode = "auto", naive = false, cotangent_psi = false))]
#[allow(clippy::too_many_arguments)]
fn gromov_witten(
    py: Python<'_>,
    graph: &PyGraph,
    beta: Vec<i64>,
    insertions: Vec<Bound<'_, PyAny>>,
    mode: &str,
    naive: bool,
    cotangent_psi: bool,
) -> PyResult<Py<PyAny>> {
    let mut ins = Vec::with_capacity(insertions.len());
    for x in insertions {
        if let Ok(c) = x.extract::<PyRef<'_, PyClass>>() {
            ins.push(Insertion::ev(c.inner.clone()));
        } else {
            let (c, k): (PyRef<'_, PyClass>, u32) = x.extract()?;
            ins.push(Insertion::with_psi(c.inner.clone(), k));
        }
    }
    let lat = CurveLattice::new(graph.inner.clone()).map_err(err)?;
    let opts = options(mode, naive, cotangent_psi)?;
    let v = py.detach(|| ::gkm::gw::gromov_witten(&lat, &beta, &ins, &opts)).map_err(err)?;
    constant_or_text(py, &v)
}

/// Truncated quantum product: {curve class: coefficient class}.
#[pyfunction]
#[pyo3(signature = (graph, a, b, chern_bound = 4, exceptional_max = 0))]
fn quantum_product(py: Python<'_>, graph: &PyGraph, a: &PyClass, b: &PyClass, chern_bound: i64, exceptional_max: u32) -> PyResult<Vec<(Vec<i64>, PyClass)>> {
    let lat = CurveLattice::new(graph.inner.clone()).map_err(err)?;
    let q = py
        .detach(|| quantum::quantum_product_truncated(&lat, &a.inner, &b.inner, chern_bound, exceptional_max, &GwOptions::default()))
        .map_err(err)?;
    Ok(q.terms.into_iter().map(|(beta, c)| (beta, PyClass { inner: c })).collect())
}

#[pyfunction]
fn bps_genus_zero(py: Python<'_>, k: u32, d_max: u64) -> PyResult<Vec<Py<PyAny>>> {
    cy::bps_genus_zero(k, d_max).iter().map(|q| fraction(py, q)).collect()
}

#[pyfunction]
#[pyo3(signature = (k, d, spec = "cy"))]
fn gw_local_closed_form(py: Python<'_>, k: u32, d: u64, spec: &str) -> PyResult<Py<PyAny>> {
    let s = match spec {
        "cy" => cy::LocalSpec::EquivariantlyCy { k },
        "twisted" => cy::LocalSpec::Twisted { k },
        "generic" => cy::LocalSpec::Generic { k },
        _ => match spec.strip_prefix("k1:").and_then(|y| y.parse().ok()) {
            Some(y) => cy::LocalSpec::K1Family { y },
            None => return Err(PyValueError::new_err(format!("unknown specialization {spec:?}"))),
        },
    };
    fraction(py, &cy::gw_local_closed_form(s, d).map_err(err)?)
}

/// (edge, passed, explanation) for every isolated edge with Chern number zero.
#[pyfunction]
fn realizability_check(graph: &PyGraph) -> PyResult<Vec<(usize, bool, String)>> {
    let reports = cy::realizability_check(graph.inner.clone()).map_err(err)?;
    Ok(reports
        .into_iter()
        .map(|r| match r.verdict {
            cy::Verdict::Pass { edge, case } => (edge, true, case.to_string()),
            cy::Verdict::Fail { edge, reason } => (edge, false, reason),
            cy::Verdict::NotApplicable(s) => (r.edge, false, s),
        })
        .collect())
}

/// Run the command-line front end: returns (exit code, stdout, stderr).
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("gkm".to_string()).chain(args).collect();
    let out = py.detach(|| cli::dispatch(argv));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pygkm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyClass>()?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(gromov_witten, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_product, m)?)?;
    m.add_function(wrap_pyfunction!(bps_genus_zero, m)?)?;
    m.add_function(wrap_pyfunction!(gw_local_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(realizability_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
