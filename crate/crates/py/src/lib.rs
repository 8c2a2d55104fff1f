//! Python bindings: circuits, metrics, constructions, rewriting,
//! equivalence checking and the T-depth-1 obstruction test.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tdo_core::constructions::{ConstructionId, ConstructionName};
use tdo_core::sim::equivalent as sim_equivalent;
use tdo_core::{
    build as core_build, emit, obstruction_verdict as core_verdict, parse, rewrite_budgeted,
    validate_gateset as core_validate, SimConfig,
};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A circuit over the fixed gate set, with main qubits followed by ancillas.
#[pyclass(name = "Circuit", module = "tdo", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCircuit {
    inner: tdo_core::Circuit,
}

#[pymethods]
impl PyCircuit {
    /// Parses circuit text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse(text)
            .map(|inner| PyCircuit { inner })
            .map_err(value_error)
    }

    /// Canonical circuit text.
    fn emit(&self) -> String {
        emit(&self.inner)
    }

    #[getter]
    fn n_main(&self) -> usize {
        self.inner.n_main()
    }

    #[getter]
    fn n_anc(&self) -> usize {
        self.inner.n_anc()
    }

    /// Gates as (mnemonic, qubits) pairs.
    #[getter]
    fn gates(&self) -> Vec<(&'static str, Vec<usize>)> {
        self.inner
            .gates()
            .iter()
            .map(|g| (g.kind().mnemonic(), g.qubits().to_vec()))
            .collect()
    }

    fn metrics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let m = self.inner.metrics();
        let d = PyDict::new(py);
        d.set_item("t_count", m.t_count)?;
        d.set_item("t_depth_as_written", m.t_depth_as_written)?;
        d.set_item("t_depth_scheduled", m.t_depth_scheduled)?;
        d.set_item("depth", m.depth)?;
        d.set_item("gate_count", m.gate_count)?;
        d.set_item("n_main", m.n_main)?;
        d.set_item("n_anc", m.n_anc)?;
        Ok(d)
    }

    fn dagger(&self) -> Self {
        PyCircuit {
            inner: self.inner.dagger(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.gate_count()
    }

    fn __str__(&self) -> String {
        self.emit()
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(n_main={}, n_anc={}, gates={})",
            self.inner.n_main(),
            self.inner.n_anc(),
            self.inner.gate_count()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Builds a named construction, e.g. `build("multi-controlled-x", controls=5)`.
#[pyfunction]
#[pyo3(signature = (name, controls=None, no_ancilla=false))]
fn build(name: &str, controls: Option<usize>, no_ancilla: bool) -> PyResult<PyCircuit> {
    let name: ConstructionName = name.parse().map_err(value_error)?;
    let mut id = ConstructionId::new(name);
    id.controls = controls;
    id.use_ancilla = !no_ancilla;
    core_build(&id)
        .map(|inner| PyCircuit { inner })
        .map_err(value_error)
}

/// Names accepted by `build`.
#[pyfunction]
fn constructions() -> Vec<&'static str> {
    ConstructionName::ALL.iter().map(|n| n.as_str()).collect()
}

/// Rewrites an almost-classical+T circuit into `stages` T-stages.
#[pyfunction]
#[pyo3(signature = (circuit, stages=1))]
fn rewrite(circuit: &PyCircuit, stages: usize) -> PyResult<PyCircuit> {
    rewrite_budgeted(&circuit.inner, stages)
        .map(|inner| PyCircuit { inner })
        .map_err(value_error)
}

/// Positions of gates that block rewriting.
#[pyfunction]
fn validate_gateset(circuit: &PyCircuit) -> Vec<usize> {
    core_validate(&circuit.inner)
}

/// Exact equivalence of the circuits' actions on their main qubits.
#[pyfunction]
#[pyo3(signature = (a, b, up_to_global_phase=false))]
fn equivalent(
    py: Python<'_>,
    a: &PyCircuit,
    b: &PyCircuit,
    up_to_global_phase: bool,
) -> PyResult<bool> {
    let cfg = SimConfig::from_env();
    py.detach(|| sim_equivalent(&a.inner, &b.inner, up_to_global_phase, &cfg))
        .map_err(value_error)
}

/// Expectation values and conclusion of the T-depth-1 obstruction test.
#[pyfunction]
fn obstruction_verdict<'py>(py: Python<'py>, circuit: &PyCircuit) -> PyResult<Bound<'py, PyDict>> {
    let v = core_verdict(&circuit.inner, &SimConfig::from_env()).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("e_zero", v.e_zero.to_string())?;
    d.set_item("e_plus", v.e_plus.to_string())?;
    d.set_item("e_zero_float", v.e_zero.to_f64())?;
    d.set_item("e_plus_float", v.e_plus.to_f64())?;
    d.set_item("ratio_rational", v.ratio_rational)?;
    d.set_item("conclusion", v.conclusion.to_string())?;
    Ok(d)
}

#[pymodule]
fn tdo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCircuit>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(constructions, m)?)?;
    m.add_function(wrap_pyfunction!(rewrite, m)?)?;
    m.add_function(wrap_pyfunction!(validate_gateset, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction_verdict, m)?)?;
    Ok(())
}
