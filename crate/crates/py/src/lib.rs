//! Python bindings: instances, kernelization, the exact oracle, the
//! generators and the exact LP relaxation.
//!
//! Build with `cargo build -p hsk-py` and copy `libhsk.so` to `hsk.so` on the
//! Python path (see `python/smoke_test.py`).

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hsk_core::cli::{parse_instance, write_instance};
use hsk_core::hypergraph::labelled_edges;
use hsk_core::lp::{build_shs_lp, solve_exact};
use hsk_core::{CrownRichSpec, Error, GenSpec, Oracle, Rule, Verdict};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Internal(_) | Error::InvalidCrown(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A d-Hitting Set instance with named vertices.
#[pyclass(name = "Instance", module = "hsk", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyInstance {
    pub inner: hsk_core::Instance,
}

#[pymethods]
impl PyInstance {
    /// Vertices are named by `str()` of whatever the edges contain; `labels`
    /// lists extra (possibly isolated) vertices first.
    #[new]
    #[pyo3(signature = (edges, d, k, labels = None))]
    fn new(
        edges: Vec<Vec<Bound<'_, PyAny>>>,
        d: usize,
        k: i64,
        labels: Option<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<Self> {
        let name = |x: &Bound<'_, PyAny>| -> PyResult<String> { Ok(x.str()?.to_string()) };
        let edges: Vec<Vec<String>> = edges
            .iter()
            .map(|e| e.iter().map(name).collect::<PyResult<_>>())
            .collect::<PyResult<_>>()?;
        let labels: Vec<String> = labels.unwrap_or_default().iter().map(name).collect::<PyResult<_>>()?;
        let inner = hsk_core::normalize(&labels, &edges, d, k).map_err(to_py)?;
        Ok(PyInstance { inner })
    }

    /// Parses the `p hs n m d k` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_instance(text).map(|inner| PyInstance { inner }).map_err(to_py)
    }

    fn to_text(&self) -> String {
        write_instance(&self.inner)
    }

    fn with_k(&self, k: i64) -> Self {
        PyInstance {
            inner: self.inner.clone().with_k(k),
        }
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
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn k(&self) -> i64 {
        self.inner.k()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// Edges as sorted lists of vertex labels.
    #[getter]
    fn edges(&self) -> Vec<Vec<String>> {
        labelled_edges(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, m={}, d={}, k={})",
            self.inner.n(),
            self.inner.m(),
            self.inner.d(),
            self.inner.k()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Outcome of [`kernelize`].
#[pyclass(name = "Kernelization", module = "hsk", frozen, get_all)]
pub struct PyKernelization {
    /// `"kernel"`, `"yes"` or `"no"`.
    pub verdict: String,
    pub kernel: PyInstance,
    /// Applications per rule number.
    pub rule_counts: BTreeMap<u8, usize>,
    pub trace: Vec<String>,
    pub bound: u128,
}

#[pymethods]
impl PyKernelization {
    fn __repr__(&self) -> String {
        format!(
            "Kernelization(verdict={:?}, kernel={})",
            self.verdict,
            self.kernel.__repr__()
        )
    }
}

#[pyfunction]
fn kernelize(instance: &PyInstance) -> PyResult<PyKernelization> {
    let reduced = hsk_core::reduce(instance.inner.clone()).map_err(to_py)?;
    let verdict = match reduced.trace.verdict {
        Verdict::Undecided => "kernel",
        Verdict::Yes => "yes",
        Verdict::No => "no",
    };
    Ok(PyKernelization {
        verdict: verdict.to_owned(),
        rule_counts: Rule::ALL
            .iter()
            .map(|&r| (r.number(), reduced.trace.count(r)))
            .collect(),
        trace: reduced.trace.steps.iter().map(|s| s.to_string()).collect(),
        bound: hsk_core::kernel_bound(reduced.instance.d(), reduced.instance.k()),
        kernel: PyInstance {
            inner: reduced.instance,
        },
    })
}

/// Exact decision by branching; `ceiling` caps the vertex count.
#[pyfunction]
#[pyo3(signature = (instance, ceiling = None))]
fn decide(instance: &PyInstance, ceiling: Option<usize>) -> PyResult<bool> {
    let oracle = ceiling.map(Oracle::new).unwrap_or_else(Oracle::from_env);
    oracle.decide(&instance.inner).map_err(to_py)
}

/// Labels of a minimum hitting set, or `None` if an empty edge exists.
#[pyfunction]
#[pyo3(signature = (instance, ceiling = None))]
fn min_hitting_set(instance: &PyInstance, ceiling: Option<usize>) -> PyResult<Option<Vec<String>>> {
    let oracle = ceiling.map(Oracle::new).unwrap_or_else(Oracle::from_env);
    let best = oracle.min_hitting_set(&instance.inner).map_err(to_py)?;
    Ok(best.map(|s| s.iter().map(|&v| instance.inner.label(v).to_owned()).collect()))
}

#[pyfunction]
#[pyo3(signature = (seed, n, m, d, k, plant = None))]
fn generate(seed: u64, n: usize, m: usize, d: usize, k: i64, plant: Option<usize>) -> PyResult<PyInstance> {
    let spec = GenSpec {
        seed,
        n,
        m,
        d,
        k,
        planted: plant,
    };
    hsk_core::generate(&spec)
        .map(|inner| PyInstance { inner })
        .map_err(to_py)
}

#[pyfunction]
fn generate_crown_rich(seed: u64, n: usize, d: usize, k: i64) -> PyResult<PyInstance> {
    hsk_core::generate_crown_rich(&CrownRichSpec { seed, n, d, k })
        .map(|inner| PyInstance { inner })
        .map_err(to_py)
}

/// Exact optimum of the LP relaxation: `(objective, {label: value})` with
/// `fractions.Fraction` values.
#[pyfunction]
fn lp_relaxation<'py>(py: Python<'py>, instance: &PyInstance) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let sol = solve_exact(&build_shs_lp(instance.inner.graph())).map_err(to_py)?;
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let values = pyo3::types::PyDict::new(py);
    for (v, x) in sol.values.iter().enumerate() {
        values.set_item(instance.inner.label(v), fraction.call1((x.to_string(),))?)?;
    }
    Ok((fraction.call1((sol.objective.to_string(),))?, values.into_any()))
}

#[pyfunction]
fn kernel_bound(d: usize, k: i64) -> u128 {
    hsk_core::kernel_bound(d, k)
}

#[pymodule]
pub mod hsk {
    #[pymodule_export]
    use super::{
        decide, generate, generate_crown_rich, kernel_bound, kernelize, lp_relaxation, min_hitting_set, PyInstance,
        PyKernelization,
    };
}
