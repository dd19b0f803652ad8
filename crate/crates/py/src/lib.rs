use oddchrom::coloring::is_odd_coloring;
use oddchrom::generators::FamilySpec;
use oddchrom::io::{encode_graph6, encode_planar_code, parse_graph6, parse_planar_code};
use oddchrom::solver::{self, SolveOptions};
use oddchrom::Coloring;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<PyObject> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Simple undirected graph on vertices 0..n-1.
#[pyclass(name = "Graph", module = "oddchrom_py", frozen)]
#[derive(Clone)]
struct PyGraph {
    inner: oddchrom::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = oddchrom::Graph::from_edges(n, edges).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_graph6(line: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_graph6(line).map_err(value_error)?,
        })
    }

    fn to_graph6(&self) -> String {
        encode_graph6(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.order() {
            return Err(PyIndexError::new_err(format!("no vertex {v}")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.inner.try_degree(v).map_err(value_error)
    }

    /// Length of a shortest cycle, or None for a forest.
    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn subdivide(&self) -> Self {
        PyGraph {
            inner: oddchrom::generators::subdivide(&self.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!("Graph(order={}, size={})", self.inner.order(), self.inner.size())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Graph with a rotation system describing a plane embedding.
#[pyclass(name = "PlaneGraph", module = "oddchrom_py", frozen)]
#[derive(Clone)]
struct PyPlaneGraph {
    inner: oddchrom::PlaneGraph,
}

#[pymethods]
impl PyPlaneGraph {
    /// `rotation[v]` lists the neighbours of v in cyclic order.
    #[new]
    fn new(rotation: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyPlaneGraph {
            inner: oddchrom::PlaneGraph::new(rotation).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn from_faces(n: usize, faces: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyPlaneGraph {
            inner: oddchrom::PlaneGraph::from_faces(n, &faces).map_err(value_error)?,
        })
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph().clone(),
        }
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn rotation(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.order() {
            return Err(PyIndexError::new_err(format!("no vertex {v}")));
        }
        Ok(self.inner.rotation(v).to_vec())
    }

    /// Boundary walks of all faces.
    fn faces(&self) -> Vec<Vec<usize>> {
        self.inner.faces().iter().map(|f| f.walk.clone()).collect()
    }

    fn check_euler(&self) -> PyResult<bool> {
        self.inner.check_euler().map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "PlaneGraph(order={}, size={}, faces={})",
            self.inner.order(),
            self.inner.graph().size(),
            self.inner.faces().len()
        )
    }
}

fn opts(budget: Option<u64>, threads: usize) -> SolveOptions {
    SolveOptions {
        budget,
        threads: threads.max(1),
    }
}

fn colors(c: &Coloring) -> Vec<Option<usize>> {
    c.as_slice().to_vec()
}

fn coloring_from(g: &oddchrom::Graph, colors: Vec<usize>) -> PyResult<Coloring> {
    if colors.len() != g.order() {
        return Err(PyValueError::new_err(format!(
            "expected {} colors, got {}",
            g.order(),
            colors.len()
        )));
    }
    let k = colors.iter().copied().max().unwrap_or(0);
    Coloring::from_colors(k, colors).map_err(value_error)
}

/// Result of a minimum-palette search: `(value, status, witness)` where status is
/// "exact", "exceeds-bound" or "budget-exhausted".
type MinimumResult = (Option<usize>, &'static str, Option<Vec<Option<usize>>>);

fn minimum(r: solver::ChromaticResult) -> MinimumResult {
    let w = r.witness.as_ref().map(colors);
    match r.value {
        solver::Bound::Exact(k) => (Some(k), "exact", w),
        solver::Bound::ExceedsBound => (None, "exceeds-bound", None),
        solver::Bound::BudgetExhausted { .. } => (None, "budget-exhausted", None),
    }
}

#[pyfunction]
#[pyo3(signature = (g, max_k=9, budget=None, threads=1))]
fn odd_chromatic_number(py: Python<'_>, g: &PyGraph, max_k: usize, budget: Option<u64>, threads: usize) -> MinimumResult {
    let o = opts(budget, threads);
    minimum(py.allow_threads(|| solver::odd_chromatic_number(&g.inner, max_k, &o)))
}

#[pyfunction]
#[pyo3(signature = (g, max_k=9, budget=None))]
fn chromatic_number(py: Python<'_>, g: &PyGraph, max_k: usize, budget: Option<u64>) -> MinimumResult {
    let o = opts(budget, 1);
    minimum(py.allow_threads(|| solver::chromatic_number(&g.inner, max_k, &o)))
}

/// An odd coloring with at most `k` colors, or None when none exists. Raises if the
/// budget runs out first.
#[pyfunction]
#[pyo3(signature = (g, k, budget=None, threads=1))]
fn find_odd_coloring(
    py: Python<'_>,
    g: &PyGraph,
    k: usize,
    budget: Option<u64>,
    threads: usize,
) -> PyResult<Option<Vec<Option<usize>>>> {
    let o = opts(budget, threads);
    let r = py.allow_threads(|| solver::find_odd_coloring(&g.inner, k, &o));
    match r.status {
        solver::SolveStatus::BudgetExhausted => Err(PyValueError::new_err(format!(
            "node budget exhausted after {} nodes",
            r.nodes
        ))),
        _ => Ok(r.witness.as_ref().map(colors)),
    }
}

#[pyfunction]
fn verify(g: &PyGraph, colors: Vec<usize>) -> PyResult<bool> {
    Ok(oddchrom::coloring::verify(&g.inner, &coloring_from(&g.inner, colors)?))
}

/// Odd sets per vertex, monochromatic edges and the verdict.
#[pyfunction]
fn odd_report(py: Python<'_>, g: &PyGraph, colors: Vec<usize>) -> PyResult<PyObject> {
    let r = is_odd_coloring(&g.inner, &coloring_from(&g.inner, colors)?).map_err(value_error)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("verdict", r.verdict)?;
    d.set_item("proper", r.proper)?;
    d.set_item("monochromatic_edges", r.monochromatic_edges)?;
    d.set_item("odd_sets", r.odd_sets)?;
    d.set_item("empty_odd_sets", r.empty_odd_sets)?;
    Ok(d.into_any().unbind())
}

/// DIMACS CNF whose models are the odd colorings with `k` colors.
#[pyfunction]
fn export_cnf(g: &PyGraph, k: usize) -> String {
    oddchrom::cnf::export_cnf(&g.inner, k).to_dimacs()
}

/// Decodes a SAT model (true literals) using the variable map in the DIMACS comments.
#[pyfunction]
fn decode_model(dimacs: &str, model: Vec<i64>) -> PyResult<Vec<Option<usize>>> {
    let c = oddchrom::cnf::decode_dimacs_model(dimacs, &model).map_err(value_error)?;
    Ok(colors(&c))
}

/// Odd coloring with at most 9 colors by reductions. Returns a dict with the
/// coloring, trace, fallbacks and failed extensions.
#[pyfunction]
fn color9(py: Python<'_>, p: &PyPlaneGraph) -> PyResult<PyObject> {
    let r = py
        .allow_threads(|| oddchrom::reducer::color9(&p.inner))
        .map_err(value_error)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("coloring", colors(&r.coloring))?;
    let trace = serde_json::to_string(&r.trace).map_err(value_error)?;
    d.set_item("trace", json_to_py(py, &trace)?)?;
    d.set_item("fallbacks", r.fallbacks)?;
    d.set_item("failed_extensions", r.failed_extensions)?;
    Ok(d.into_any().unbind())
}

/// Discharging report (same layout as the CLI's audit JSON).
#[pyfunction]
fn audit(py: Python<'_>, p: &PyPlaneGraph) -> PyResult<PyObject> {
    let r = oddchrom::discharge::audit(&p.inner).map_err(value_error)?;
    json_to_py(py, &r.to_json().to_string())
}

/// Builds a family member. Returns a PlaneGraph when the family is drawn in the
/// plane, otherwise a Graph.
#[pyfunction]
#[pyo3(signature = (family, param=None))]
fn generate(py: Python<'_>, family: &str, param: Option<&str>) -> PyResult<PyObject> {
    let g = FamilySpec::parse(family, param)
        .and_then(|s| s.make())
        .map_err(value_error)?;
    Ok(match g.plane {
        Some(p) => Py::new(py, PyPlaneGraph { inner: p })?.into_any(),
        None => Py::new(py, PyGraph { inner: g.graph })?.into_any(),
    })
}

#[pyfunction]
fn read_planar_code(data: &[u8]) -> PyResult<Vec<PyPlaneGraph>> {
    let graphs = parse_planar_code(data).map_err(value_error)?;
    Ok(graphs.into_iter().map(|inner| PyPlaneGraph { inner }).collect())
}

#[pyfunction]
fn write_planar_code<'py>(py: Python<'py>, graphs: Vec<PyPlaneGraph>) -> Bound<'py, PyBytes> {
    let bytes = encode_planar_code(graphs.iter().map(|p| &p.inner));
    PyBytes::new(py, &bytes)
}

#[pymodule]
fn oddchrom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPlaneGraph>()?;
    m.add_function(wrap_pyfunction!(odd_chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(find_odd_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(odd_report, m)?)?;
    m.add_function(wrap_pyfunction!(export_cnf, m)?)?;
    m.add_function(wrap_pyfunction!(decode_model, m)?)?;
    m.add_function(wrap_pyfunction!(color9, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(read_planar_code, m)?)?;
    m.add_function(wrap_pyfunction!(write_planar_code, m)?)?;
    Ok(())
}
