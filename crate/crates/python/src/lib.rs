use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dynmono::format::{parse_instance, InstanceFile};
use dynmono::oracle::DEFAULT_BUDGET;
use dynmono::{Error, Graph, Interval, IntervalRepresentation, ThresholdedInstance, VertexSet};

type LayerTuple = (usize, Vec<String>, Vec<String>, Vec<String>);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } | Error::TooLarge { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Thresholded graph, optionally with an interval representation.
#[pyclass(name = "Instance", module = "dynmono", skip_from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: ThresholdedInstance,
    rep: Option<IntervalRepresentation>,
    explicit_t: Option<usize>,
}

impl PyInstance {
    fn named(&self, set: &VertexSet) -> Vec<String> {
        self.inner.graph().names_of(set)
    }

    fn resolve(&self, names: Vec<String>) -> PyResult<VertexSet> {
        self.inner.graph().resolve(&names).map_err(py_err)
    }
}

#[pymethods]
impl PyInstance {
    /// Parses the text of an instance file.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let file = parse_instance(text).map_err(py_err)?;
        let (inner, rep) = file.to_instance().map_err(py_err)?;
        Ok(PyInstance {
            inner,
            rep,
            explicit_t: file.t,
        })
    }

    /// `intervals` is a list of `(name, left, right, tau)`.
    #[staticmethod]
    #[pyo3(signature = (intervals, t=None))]
    fn from_intervals(intervals: Vec<(String, i64, i64, i64)>, t: Option<usize>) -> PyResult<Self> {
        let rep = IntervalRepresentation::new(
            intervals
                .iter()
                .map(|&(_, left, right, _)| Interval::new(left, right))
                .collect::<Result<_, _>>()
                .map_err(py_err)?,
        )
        .map_err(py_err)?;
        let graph = rep
            .intersection_graph(intervals.iter().map(|i| i.0.clone()).collect())
            .map_err(py_err)?;
        let tau = intervals.iter().map(|i| i.3).collect();
        let inner = ThresholdedInstance::new(graph, tau, t).map_err(py_err)?;
        Ok(PyInstance {
            inner,
            rep: Some(rep),
            explicit_t: t,
        })
    }

    /// `vertices` is a list of `(name, tau)`, `edges` a list of name pairs.
    #[staticmethod]
    #[pyo3(signature = (vertices, edges, t=None))]
    fn from_graph(
        vertices: Vec<(String, i64)>,
        edges: Vec<(String, String)>,
        t: Option<usize>,
    ) -> PyResult<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.0.clone()).collect();
        let probe = Graph::new(names.clone(), []).map_err(py_err)?;
        let ids = edges
            .iter()
            .map(|(a, b)| match (probe.id(a), probe.id(b)) {
                (Some(u), Some(v)) => Ok((u, v)),
                _ => Err(PyValueError::new_err(format!(
                    "edge {a} {b} names an unknown vertex"
                ))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        let graph = Graph::new(names, ids).map_err(py_err)?;
        let inner = ThresholdedInstance::new(graph, vertices.iter().map(|v| v.1).collect(), t)
            .map_err(py_err)?;
        Ok(PyInstance {
            inner,
            rep: None,
            explicit_t: t,
        })
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.graph().names().to_vec()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.bound()
    }

    #[getter]
    fn thresholds(&self) -> Vec<i64> {
        self.inner.thresholds().to_vec()
    }

    fn edges(&self) -> Vec<(String, String)> {
        let g = self.inner.graph();
        g.edges()
            .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn hull(&self, seed: Vec<String>) -> PyResult<Vec<String>> {
        let seed = self.resolve(seed)?;
        Ok(self.named(&dynmono::hull(&self.inner, &seed).map_err(py_err)?))
    }

    fn is_dynamic_monopoly(&self, seed: Vec<String>) -> PyResult<bool> {
        let seed = self.resolve(seed)?;
        dynmono::is_dynamic_monopoly(&self.inner, &seed).map_err(py_err)
    }

    /// Activation order of all vertices, or `None` if `seed` is not a monopoly.
    fn find_cascade(&self, seed: Vec<String>) -> PyResult<Option<Vec<String>>> {
        let seed = self.resolve(seed)?;
        let g = self.inner.graph();
        Ok(dynmono::find_cascade(&self.inner, &seed)
            .map_err(py_err)?
            .map(|c| c.order.iter().map(|&v| g.name(v).to_string()).collect()))
    }

    /// `(dyn, monopoly)` by the interval dynamic program.
    fn solve(&self) -> PyResult<(usize, Vec<String>)> {
        let rep = self.rep.as_ref().ok_or_else(|| {
            PyValueError::new_err("solve needs an interval instance; use brute_force")
        })?;
        let sol = dynmono::solve(&self.inner, rep).map_err(py_err)?;
        Ok((sol.dyn_value, self.named(&sol.monopoly)))
    }

    #[pyo3(signature = (budget=DEFAULT_BUDGET))]
    fn brute_force(&self, budget: u64) -> PyResult<(usize, Vec<String>)> {
        let (d, set) = dynmono::oracle::brute_force_dyn(&self.inner, budget).map_err(py_err)?;
        Ok((d, self.named(&set)))
    }

    /// Layers of a connected interval instance as `(end, prefix, boundary, slice)`.
    #[pyo3(signature = (t=None))]
    fn decompose(&self, t: Option<usize>) -> PyResult<Vec<LayerTuple>> {
        let rep = self
            .rep
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("decompose needs an interval instance"))?;
        let cuts = dynmono::compute_cut_structure(&dynmono::normalize(rep));
        if cuts.counts.contains(&0) {
            return Err(PyValueError::new_err("instance is disconnected"));
        }
        let dec = dynmono::compute_decomposition(&cuts, t.unwrap_or(self.inner.bound()));
        Ok(dec
            .layers
            .iter()
            .map(|l| {
                (
                    l.end,
                    self.named(&l.prefix),
                    self.named(&l.boundary),
                    self.named(&l.slice),
                )
            })
            .collect())
    }

    fn to_text(&self) -> PyResult<String> {
        match &self.rep {
            Some(rep) => {
                let mut file = InstanceFile::from_interval(&self.inner, rep).map_err(py_err)?;
                file.t = self.explicit_t;
                Ok(file.emit())
            }
            None => Ok(InstanceFile::from_graph(&self.inner, self.explicit_t).emit()),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, m={}, t={}, interval={})",
            self.inner.order(),
            self.inner.graph().edge_count(),
            self.inner.bound(),
            if self.rep.is_some() { "True" } else { "False" }
        )
    }
}

#[pyfunction]
fn generate_interval(n: usize, t: usize, seed: u64) -> PyResult<PyInstance> {
    let (inner, rep) = dynmono::generate::generate_interval_instance(n, t, seed).map_err(py_err)?;
    Ok(PyInstance {
        inner,
        rep: Some(rep),
        explicit_t: Some(t),
    })
}

/// Cubic graph with every threshold equal to `tau`.
#[pyfunction]
#[pyo3(signature = (n, seed, tau=2))]
fn generate_cubic(n: usize, seed: u64, tau: i64) -> PyResult<PyInstance> {
    let g = dynmono::generate::generate_cubic(n, seed).map_err(py_err)?;
    let inner = ThresholdedInstance::new(g, vec![tau; n], None).map_err(py_err)?;
    Ok(PyInstance {
        inner,
        rep: None,
        explicit_t: None,
    })
}

/// Chordal reduction of a cubic graph (thresholds of the input are ignored).
#[pyfunction]
fn reduce(cubic: &PyInstance) -> PyResult<PyInstance> {
    let out = dynmono::reduction::vc_reduction(cubic.inner.graph()).map_err(py_err)?;
    Ok(PyInstance {
        inner: out.instance,
        rep: None,
        explicit_t: None,
    })
}

#[pyfunction]
#[pyo3(signature = (instance, budget=DEFAULT_BUDGET))]
fn vertex_cover_number(instance: &PyInstance, budget: u64) -> PyResult<usize> {
    dynmono::oracle::brute_force_vertex_cover(instance.inner.graph(), budget).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "dynmono")]
fn dynmono_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(generate_interval, m)?)?;
    m.add_function(wrap_pyfunction!(generate_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_cover_number, m)?)?;
    Ok(())
}
