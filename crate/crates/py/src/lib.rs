//! Python bindings. Structured results cross the boundary as JSON and come
//! out as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use genprod::invariants::{exact as exact_invariant, h_tuple_chromatic, kneser_graph, Guards, Invariant};
use genprod::io::{parse_graph, parse_instance, serialize_instance, to_canonical_json, write_edge_list, Kind};
use genprod::random::{random_instance as gen_instance, RandomParams};
use genprod::structure::{decompose as decompose_graph, DECOMPOSE_GUARD};

fn err(e: genprod::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(genprod::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (order, edges, loops = false))]
    fn new(order: usize, edges: Vec<(usize, usize)>, loops: bool) -> PyResult<Self> {
        let g = if loops {
            genprod::Graph::with_loops(order, edges)
        } else {
            genprod::Graph::new(order, edges)
        };
        g.map(PyGraph).map_err(err)
    }

    /// Parse a JSON graph object or the `n m [loops]` edge-list text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_graph(text).map(PyGraph).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn degree(&self, v: usize) -> usize {
        self.0.degree(v)
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.0.is_bipartite()
    }

    /// An isomorphism onto `other` as a vertex map, or None.
    fn isomorphism(&self, other: &PyGraph) -> PyResult<Option<Vec<usize>>> {
        genprod::graph::is_isomorphic(&self.0, &other.0).map_err(err)
    }

    fn to_json(&self) -> String {
        to_canonical_json(&self.0)
    }

    fn to_edge_list(&self) -> String {
        write_edge_list(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Graph(order={}, size={})", self.0.order(), self.0.size())
    }
}

#[pyclass(name = "Instance", frozen)]
struct PyInstance(genprod::Instance);

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_instance(text).map(PyInstance).map_err(err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0 {
            genprod::Instance::Otimes(_) => "otimes",
            genprod::Instance::Circ(_) => "circ",
        }
    }

    fn to_json(&self) -> String {
        serialize_instance(&self.0)
    }

    /// The product graph, with vertex `i` standing for `vertices()[i]`.
    fn product(&self) -> PyGraph {
        PyGraph(genprod::product::build(&self.0).graph)
    }

    fn vertices(&self) -> Vec<(usize, usize)> {
        genprod::product::build(&self.0).index_map()
    }

    /// BFS verdict plus, for `otimes`, the fiber-family verdict.
    fn connect(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let product = genprod::product::build(&self.0).graph;
        let bfs = genprod::connectivity::bfs_verdict(&product);
        let family = match &self.0 {
            genprod::Instance::Otimes(i) => Some(genprod::connectivity::otimes_connected_via_family(i).map_err(err)?),
            genprod::Instance::Circ(_) => None,
        };
        to_py(py, &serde_json::json!({ "bfs": bfs, "family": family }))
    }

    fn degree(&self, a: usize, x: usize) -> PyResult<usize> {
        genprod::product::product_degree(&self.0, a, x).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Instance(kind={})", self.kind())
    }
}

#[pyfunction]
#[pyo3(signature = (seed, kind = "otimes", base_order = 4, inner_order = 4, density = 0.5, family_size = 2))]
fn random_instance(
    seed: u64,
    kind: &str,
    base_order: usize,
    inner_order: usize,
    density: f64,
    family_size: usize,
) -> PyResult<PyInstance> {
    let params = RandomParams {
        kind: kind.parse::<Kind>().map_err(err)?,
        base_order,
        inner_order,
        edge_density: density,
        family_size,
        ..RandomParams::default()
    };
    gen_instance(seed, &params).map(PyInstance).map_err(err)
}

/// Exact invariant with witness as a dict.
#[pyfunction]
#[pyo3(signature = (graph, which, guard = None, demands = None))]
fn invariant(
    py: Python<'_>,
    graph: &PyGraph,
    which: &str,
    guard: Option<usize>,
    demands: Option<Vec<usize>>,
) -> PyResult<Py<PyAny>> {
    let which: Invariant = which.parse().map_err(err)?;
    let guards = guard.map(Guards::uniform).unwrap_or_default();
    let report = if which == Invariant::ChiH {
        let d = demands.unwrap_or_else(|| vec![1; graph.0.order()]);
        h_tuple_chromatic(&graph.0, &d, guards.coloring)
    } else {
        exact_invariant(&graph.0, which, &guards)
    }
    .map_err(err)?;
    to_py(py, &report)
}

/// Decomposition with `k` blocks as a dict, or None when none exists.
#[pyfunction]
#[pyo3(signature = (graph, k, loops = false, guard = DECOMPOSE_GUARD))]
fn decompose(py: Python<'_>, graph: &PyGraph, k: usize, loops: bool, guard: usize) -> PyResult<Py<PyAny>> {
    let (found, _) = decompose_graph(&graph.0, k, loops, guard).map_err(err)?;
    to_py(py, &found)
}

#[pyfunction]
fn kneser(demands: Vec<usize>, s: usize) -> PyResult<PyGraph> {
    kneser_graph(&demands, s).map(|(g, _)| PyGraph(g)).map_err(err)
}

/// Reports of `suite` over seeds `start..=end`.
#[pyfunction]
fn verify(py: Python<'_>, suite: &str, start: u64, end: u64) -> PyResult<Py<PyAny>> {
    let reports = py.detach(|| genprod::verify::verify(suite, start..=end)).map_err(err)?;
    to_py(py, &reports)
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    genprod::verify::SUITES.to_vec()
}

#[pymodule]
#[pyo3(name = "genprod")]
fn genprod_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(random_instance, m)?)?;
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(kneser, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    Ok(())
}
