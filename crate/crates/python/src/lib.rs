//! Python bindings for `matchtop`.
//!
//! ```python
//! import pymatchtop as mt
//! g = mt.Graph.cycle(7)
//! mt.matching_complex(g).f_vector()   # [7, 14, 7]
//! mt.classify(g).families             # ['B_C7']
//! ```

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use matchtop::classify::{self as cls, ClassificationResult};
use matchtop::enumerate;
use matchtop::graph::named;
use matchtop::homology;
use matchtop::io;

create_exception!(pymatchtop, CapabilityError, PyException);

fn err(e: matchtop::Error) -> PyErr {
    match e {
        matchtop::Error::Capability(m) => CapabilityError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "pymatchtop", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: matchtop::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: matchtop::Graph::from_edges(n, &edges).map_err(err)?,
        })
    }

    /// Parses an edge list or a graph6 line; the format is detected.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: io::parse_graph(text, None).map_err(err)?.graph,
        })
    }

    #[staticmethod]
    fn from_graph6(s: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: io::decode_graph6(s).map_err(err)?,
        })
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: named::cycle(n).map_err(err)? })
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: named::complete(n).map_err(err)? })
    }

    #[staticmethod]
    fn complete_bipartite(m: usize, n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: named::complete_bipartite(m, n).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|e| (e.u, e.v)).collect()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn graph6(&self) -> String {
        io::encode_graph6(&self.inner)
    }

    fn canonical_form(&self) -> PyResult<String> {
        Ok(matchtop::canonical_form(&self.inner).map_err(err)?.0)
    }

    fn max_matching_size(&self, cap: usize) -> usize {
        self.inner.max_matching_size(cap)
    }

    fn contains_cycle(&self, k: usize) -> bool {
        self.inner.contains_cycle(k)
    }

    /// `N_e`: the graph left after deleting both ends of `(u, v)` and any
    /// vertex that becomes isolated. Returns the graph and the original ids.
    fn non_adjacent_subgraph(&self, u: usize, v: usize) -> PyResult<(PyGraph, Vec<usize>)> {
        let r = self
            .inner
            .non_adjacent_subgraph(matchtop::Edge::new(u, v))
            .map_err(err)?;
        Ok((PyGraph { inner: r.graph }, r.original))
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.inner.n(), self.edges())
    }
}

/// The matching complex of a graph. Vertices are the graph's edges in
/// lexicographic order.
#[pyclass(name = "Complex", module = "pymatchtop", frozen)]
pub struct PyComplex {
    inner: matchtop::SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn dimension(&self) -> isize {
        self.inner.dimension()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner.facets().iter().map(|f| f.to_vec()).collect()
    }

    fn is_pure(&self) -> bool {
        self.inner.is_pure()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn reduced_betti(&self) -> Vec<usize> {
        homology::reduced_betti_numbers(&self.inner)
    }

    fn link(&self, face: Vec<usize>) -> PyResult<PyComplex> {
        Ok(PyComplex {
            inner: self
                .inner
                .link(matchtop::Face::from_vertices(face))
                .map_err(err)?,
        })
    }

    fn is_buchsbaum(&self) -> bool {
        homology::is_buchsbaum_homological(&self.inner)
    }

    fn is_cohen_macaulay(&self) -> bool {
        homology::is_cm_homological(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Complex(dim={}, f={:?})", self.inner.dimension(), self.inner.f_vector())
    }
}

#[pyclass(name = "Classification", module = "pymatchtop", frozen, get_all)]
pub struct PyClassification {
    dim: isize,
    buchsbaum: bool,
    cm: bool,
    families: Vec<String>,
    matroid: bool,
    /// The certificate as JSON.
    certificate: String,
    certificate_verified: bool,
}

#[pymethods]
impl PyClassification {
    fn __repr__(&self) -> String {
        format!(
            "Classification(dim={}, buchsbaum={}, cm={}, families={:?})",
            self.dim, self.buchsbaum, self.cm, self.families
        )
    }
}

fn wrap(g: &matchtop::Graph, r: ClassificationResult) -> PyClassification {
    PyClassification {
        dim: r.dim,
        buchsbaum: r.buchsbaum,
        cm: r.cm,
        families: r.families.iter().map(|f| f.name().to_string()).collect(),
        matroid: r.matroid,
        certificate: serde_json::to_string(&r.certificate).expect("certificate serializes"),
        certificate_verified: cls::verify_certificate(g, &r),
    }
}

#[pyfunction]
fn matching_complex(g: &PyGraph) -> PyResult<PyComplex> {
    Ok(PyComplex {
        inner: matchtop::matching_complex(&g.inner).map_err(err)?,
    })
}

#[pyfunction]
fn classify(py: Python<'_>, g: &PyGraph) -> PyResult<PyClassification> {
    let graph = g.inner.clone();
    let r = py.detach(|| cls::classify(&graph)).map_err(err)?;
    Ok(wrap(&graph, r))
}

#[pyfunction]
fn is_2d_buchsbaum(g: &PyGraph) -> bool {
    cls::is_2d_buchsbaum_direct(&g.inner)
}

#[pyfunction]
fn is_matroid(g: &PyGraph) -> bool {
    cls::is_matroid(&g.inner)
}

/// `(chord count, iso classes, Buchsbaum classes)` for each row of the scan.
#[pyfunction]
fn scan_c7(py: Python<'_>) -> Vec<(usize, usize, usize)> {
    let r = py.detach(enumerate::scan_c7);
    r.rows
        .iter()
        .map(|row| (row.added_edges, row.iso_classes, row.buchsbaum_classes))
        .collect()
}

/// Runs a seeded random sweep and returns the number of discrepancies.
#[pyfunction]
fn random_verify(py: Python<'_>, n: usize, count: usize, seed: u64) -> PyResult<usize> {
    let r = py
        .detach(|| enumerate::random_verify(n, count, seed))
        .map_err(err)?;
    Ok(r.discrepancies.len())
}

#[pymodule]
fn pymatchtop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyClassification>()?;
    m.add("CapabilityError", m.py().get_type::<CapabilityError>())?;
    m.add_function(wrap_pyfunction!(matching_complex, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(is_2d_buchsbaum, m)?)?;
    m.add_function(wrap_pyfunction!(is_matroid, m)?)?;
    m.add_function(wrap_pyfunction!(scan_c7, m)?)?;
    m.add_function(wrap_pyfunction!(random_verify, m)?)?;
    Ok(())
}
