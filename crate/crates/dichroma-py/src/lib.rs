use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use dichroma::{brooks, defective, dicolour, extremal, heroes, io, local, Error};

create_exception!(dichroma, DichromaError, PyException);
create_exception!(dichroma, BudgetExceeded, DichromaError);

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { lower, upper } => BudgetExceeded::new_err((e.to_string(), lower, upper)),
        other => DichromaError::new_err(other.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, v: impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| DichromaError::new_err(e.to_string()))?;
    to_py(py, &value)
}

/// A digraph on vertices 0..n without loops or parallel arcs.
#[pyclass(frozen, eq, skip_from_py_object, module = "dichroma")]
#[derive(Clone, PartialEq)]
struct Digraph(dichroma::Digraph);

#[pymethods]
impl Digraph {
    #[new]
    #[pyo3(signature = (n, arcs=Vec::new()))]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        dichroma::Digraph::new(n, &arcs).map(Digraph).map_err(err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_digraph_file(text).map(Digraph).map_err(err)
    }

    fn to_text(&self) -> String {
        io::write_digraph(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.0.arcs()
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_arc(u, v)
    }

    fn delta_max(&self) -> usize {
        self.0.delta_max()
    }

    fn delta_min(&self) -> usize {
        self.0.delta_min()
    }

    fn reverse(&self) -> Self {
        Digraph(self.0.reverse())
    }

    fn induced(&self, vertices: Vec<usize>) -> PyResult<Self> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.0.n()) {
            return Err(DichromaError::new_err(format!("vertex {v} out of range")));
        }
        Ok(Digraph(self.0.induced(&vertices)))
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Digraph({}, {:?})", self.0.n(), self.0.arcs())
    }
}

/// An undirected loopless multigraph; edge order is kept so colourings index edges.
#[pyclass(frozen, eq, skip_from_py_object, module = "dichroma")]
#[derive(Clone, PartialEq)]
struct Multigraph(dichroma::Multigraph);

#[pymethods]
impl Multigraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        dichroma::Multigraph::new(n, &edges).map(Multigraph).map_err(err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_multigraph_file(text).map(Multigraph).map_err(err)
    }

    #[staticmethod]
    fn shannon(k: usize) -> Self {
        Multigraph(dichroma::Multigraph::shannon(k))
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Multigraph(dichroma::Multigraph::complete(n))
    }

    fn to_text(&self) -> String {
        io::write_multigraph(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn max_degree(&self) -> usize {
        self.0.max_degree()
    }

    fn __repr__(&self) -> String {
        format!("Multigraph({}, {:?})", self.0.n(), self.0.edges())
    }
}

/// (chi, colouring) with colours numbered from 1.
#[pyfunction]
#[pyo3(signature = (d, budget=None))]
fn exact_dichromatic(py: Python<'_>, d: &Digraph, budget: Option<u64>) -> PyResult<(usize, Vec<usize>)> {
    let r = py.detach(|| dicolour::exact_dichromatic(&d.0, budget)).map_err(err)?;
    Ok((r.chi, r.colouring))
}

#[pyfunction]
fn verify_dicolouring<'py>(py: Python<'py>, d: &Digraph, colouring: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    report(py, dicolour::verify_dicolouring(&d.0, &colouring).map_err(err)?)
}

#[pyfunction]
fn classify_brooks<'py>(py: Python<'py>, d: &Digraph) -> PyResult<Bound<'py, PyAny>> {
    report(py, brooks::classify_brooks(&d.0))
}

#[pyfunction]
fn brooks_colour(d: &Digraph) -> Vec<usize> {
    brooks::brooks_colour(&d.0).colouring
}

#[pyfunction]
fn arc_connectivity(d: &Digraph) -> usize {
    extremal::lambda_value(&d.0)
}

#[pyfunction]
#[pyo3(signature = (d, k, budget=None))]
fn recognize_k_extremal<'py>(py: Python<'py>, d: &Digraph, k: usize, budget: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| extremal::recognize_k_extremal(&d.0, k, budget)).map_err(err)?;
    report(py, r)
}

#[pyfunction]
fn gen_fk(l: usize, k: usize) -> PyResult<Digraph> {
    heroes::gen_fk(l, k).map(|g| Digraph(g.digraph)).map_err(err)
}

#[pyfunction]
fn gen_ds(s: usize) -> PyResult<Digraph> {
    heroes::gen_ds(s).map(|g| Digraph(g.digraph)).map_err(err)
}

#[pyfunction]
fn gen_chordal_c122(k: usize) -> PyResult<Digraph> {
    heroes::gen_chordal_c122(k).map(|g| Digraph(g.digraph)).map_err(err)
}

#[pyfunction]
fn named_pattern(name: &str) -> PyResult<Digraph> {
    heroes::named_pattern(name)
        .map(Digraph)
        .ok_or_else(|| DichromaError::new_err(format!("unknown pattern {name:?}")))
}

/// An induced embedding of `pattern` in `host`, or None.
#[pyfunction]
#[pyo3(signature = (host, pattern, budget=None))]
fn contains_induced(host: &Digraph, pattern: &Digraph, budget: Option<u64>) -> PyResult<Option<Vec<usize>>> {
    heroes::contains_induced(&host.0, &pattern.0, budget).map_err(err)
}

/// The in-round cyclic order, or None when some vertex rules it out.
#[pyfunction]
fn inround_order(d: &Digraph) -> PyResult<Option<Vec<usize>>> {
    Ok(match local::inround_order(&d.0).map_err(err)? {
        local::InRound::Order(o) => Some(o.as_slice().to_vec()),
        local::InRound::Refuted(_) => None,
    })
}

#[pyfunction]
fn two_dicolour_lot(d: &Digraph, t: Vec<usize>) -> PyResult<Vec<usize>> {
    local::two_dicolour_lot(&d.0, &t).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, d, simple=false))]
fn defective_colour<'py>(py: Python<'py>, g: &Multigraph, d: usize, simple: bool) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| defective::defective_colour(&g.0, d, simple)).map_err(err)?;
    report(py, r)
}

/// (index, colouring) for the least number of colours with every colour at most
/// `d` times at each vertex.
#[pyfunction]
#[pyo3(signature = (g, d, budget=10_000_000))]
fn exact_defective_index(py: Python<'_>, g: &Multigraph, d: usize, budget: u64) -> PyResult<(usize, Vec<usize>)> {
    let r = py.detach(|| defective::exact_defective_index(&g.0, d, budget)).map_err(err)?;
    Ok((r.index, r.colouring))
}

#[pyfunction]
fn verify_edge_colouring(g: &Multigraph, colouring: Vec<usize>, d: usize) -> PyResult<bool> {
    Ok(defective::verify_edge_colouring(&g.0, &colouring, d).map_err(err)?.is_valid())
}

#[pyfunction]
fn colour_shannon_multigraph(k: usize, d: usize) -> PyResult<(Multigraph, Vec<usize>)> {
    defective::colour_shannon_multigraph(k, d)
        .map(|(g, c)| (Multigraph(g), c))
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "dichroma")]
fn dichroma_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DichromaError", py.get_type::<DichromaError>())?;
    m.add("BudgetExceeded", py.get_type::<BudgetExceeded>())?;
    m.add_class::<Digraph>()?;
    m.add_class::<Multigraph>()?;
    m.add_function(wrap_pyfunction!(exact_dichromatic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_dicolouring, m)?)?;
    m.add_function(wrap_pyfunction!(classify_brooks, m)?)?;
    m.add_function(wrap_pyfunction!(brooks_colour, m)?)?;
    m.add_function(wrap_pyfunction!(arc_connectivity, m)?)?;
    m.add_function(wrap_pyfunction!(recognize_k_extremal, m)?)?;
    m.add_function(wrap_pyfunction!(gen_fk, m)?)?;
    m.add_function(wrap_pyfunction!(gen_ds, m)?)?;
    m.add_function(wrap_pyfunction!(gen_chordal_c122, m)?)?;
    m.add_function(wrap_pyfunction!(named_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(contains_induced, m)?)?;
    m.add_function(wrap_pyfunction!(inround_order, m)?)?;
    m.add_function(wrap_pyfunction!(two_dicolour_lot, m)?)?;
    m.add_function(wrap_pyfunction!(defective_colour, m)?)?;
    m.add_function(wrap_pyfunction!(exact_defective_index, m)?)?;
    m.add_function(wrap_pyfunction!(verify_edge_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(colour_shannon_multigraph, m)?)?;
    Ok(())
}
