//! Python module `eqcdj_py`.

use std::collections::BTreeMap;

use eqcdj::analysis::{self, PartnerSizes};
use eqcdj::decoherence::{self, DephasingSpec, Method};
use eqcdj::fock::{self, Caps, EnsembleDims};
use eqcdj::{oracle, qubit, EqcError, LogReal};
use num_complex::Complex64;
use pyo3::exceptions::{PyMemoryError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: EqcError) -> PyErr {
    match e {
        EqcError::CapExceeded { .. } => PyMemoryError::new_err(e.to_string()),
        EqcError::Capability(_) => PyNotImplementedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn log10(v: LogReal) -> f64 {
    if v.is_zero() { f64::NEG_INFINITY } else { v.log10() }
}

/// Deutsch-Jozsa function given by its truth table.
#[pyclass(name = "Oracle", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOracle(eqcdj::BooleanOracle);

#[pymethods]
impl PyOracle {
    /// From a string of 2^M characters in {0,1}.
    #[new]
    fn new(table: &str) -> PyResult<Self> {
        eqcdj::BooleanOracle::parse(table).map(PyOracle).map_err(err)
    }

    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        eqcdj::BooleanOracle::preset(name).map(PyOracle).map_err(err)
    }

    #[staticmethod]
    fn constant(m: usize, value: bool) -> PyResult<Self> {
        eqcdj::BooleanOracle::constant(m, value).map(PyOracle).map_err(err)
    }

    #[staticmethod]
    fn from_set(m: usize, f_set: Vec<usize>) -> PyResult<Self> {
        eqcdj::BooleanOracle::from_set(m, &f_set).map(PyOracle).map_err(err)
    }

    /// Every balanced oracle on `m` inputs.
    #[staticmethod]
    fn balanced(m: usize) -> PyResult<Vec<Self>> {
        Ok(oracle::enumerate_balanced(m).map_err(err)?.map(PyOracle).collect())
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn table(&self) -> String {
        self.0.to_table_string()
    }

    #[getter]
    fn f_set(&self) -> Vec<usize> {
        self.0.f_set().to_vec()
    }

    /// "constant", "balanced" or "invalid".
    #[getter]
    fn kind(&self) -> &'static str {
        self.0.class().as_str()
    }

    fn __call__(&self, x: usize) -> PyResult<bool> {
        if x >= 1 << self.0.m() {
            return Err(PyValueError::new_err(format!("x = {x} outside the domain")));
        }
        Ok(self.0.eval(x))
    }

    fn __repr__(&self) -> String {
        format!("Oracle('{}')", self.0.to_table_string())
    }
}

/// Free integers `j_x` of the oracle Hamiltonian.
#[pyclass(name = "Params", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParams(eqcdj::OracleParams);

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (j=None, j_const=0, f1_multiplier=None))]
    fn new(j: Option<BTreeMap<usize, i64>>, j_const: i64, f1_multiplier: Option<i64>) -> Self {
        PyParams(eqcdj::OracleParams { j_map: j.unwrap_or_default(), j_const, f1_multiplier })
    }

    /// `j_x = -x_1` on F, the coherent-state choice for balanced oracles.
    #[staticmethod]
    fn recommended(oracle: &PyOracle) -> PyResult<Self> {
        eqcdj::method2::recommended_params(&oracle.0).map(PyParams).map_err(err)
    }

    #[getter]
    fn j(&self) -> BTreeMap<usize, i64> {
        self.0.j_map.clone()
    }

    fn __repr__(&self) -> String {
        format!("Params(j={:?}, j_const={}, f1_multiplier={:?})", self.0.j_map, self.0.j_const, self.0.f1_multiplier)
    }
}

fn params_or_zero(p: Option<&PyParams>) -> eqcdj::OracleParams {
    p.map(|p| p.0.clone()).unwrap_or_else(eqcdj::OracleParams::zero)
}

fn dims_for(m: usize, n: Vec<usize>, n0: Option<usize>) -> PyResult<EnsembleDims> {
    let n_x = if n.len() == 1 { vec![n[0]; m] } else { n };
    let n0 = n0.unwrap_or(n_x.first().copied().unwrap_or(1));
    EnsembleDims::new(n0, n_x).map_err(err)
}

fn caps_for(cap: Option<usize>) -> Caps {
    cap.map(Caps::with_state_cap).unwrap_or_default()
}

/// Qubit circuit: returns `{"p_x0", "decision"}`.
#[pyfunction]
fn run_qubits<'py>(py: Python<'py>, oracle: &PyOracle) -> PyResult<Bound<'py, PyDict>> {
    let r = qubit::run_dj_qubits(&oracle.0).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("p_x0", r.p_x0)?;
    d.set_item("decision", r.decision.as_str())?;
    Ok(d)
}

/// Parity-encoded quantum mode.
#[pyfunction]
#[pyo3(signature = (oracle, n, n0=None, k0=1, params=None, cap=None))]
fn method1<'py>(
    py: Python<'py>,
    oracle: &PyOracle,
    n: Vec<usize>,
    n0: Option<usize>,
    k0: usize,
    params: Option<&PyParams>,
    cap: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let dims = dims_for(oracle.0.m(), n, n0)?;
    let r = eqcdj::method1::quantum_mode_m1(&oracle.0, &params_or_zero(params), &dims, k0, &caps_for(cap)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("overlap_zero", r.overlap_zero)?;
    d.set_item("decision", r.decision.as_str())?;
    d.set_item("final_state", r.final_state.amps().to_vec())?;
    Ok(d)
}

/// Coherent-state quantum mode; `params` defaults to the recommended choice
/// for balanced oracles.
#[pyfunction]
#[pyo3(signature = (oracle, n, n0=None, params=None, cap=None))]
fn method2<'py>(
    py: Python<'py>,
    oracle: &PyOracle,
    n: Vec<usize>,
    n0: Option<usize>,
    params: Option<&PyParams>,
    cap: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let dims = dims_for(oracle.0.m(), n, n0)?;
    let params = match params {
        Some(p) => p.0.clone(),
        None if oracle.0.class() == eqcdj::OracleClass::Balanced => {
            eqcdj::method2::recommended_params(&oracle.0).map_err(err)?
        }
        None => eqcdj::OracleParams::zero(),
    };
    let r = eqcdj::method2::quantum_mode_m2(&oracle.0, &params, &dims, &caps_for(cap)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("p_init", r.p_init.to_f64())?;
    d.set_item("log10_p_init", log10(r.p_init))?;
    d.set_item("decision", r.decision.as_str())?;
    d.set_item("path", format!("{:?}", r.path).to_lowercase())?;
    d.set_item("final_state", r.final_state.map(|s| s.amps().to_vec()))?;
    Ok(d)
}

/// `log10` of the Deutsch success probability.
#[pyfunction]
fn deutsch_log10(n0: u64, n1: u64, j: i64) -> PyResult<f64> {
    eqcdj::method2::deutsch_probability(n0, n1, j).map(log10).map_err(err)
}

/// `log10 p^(m)(τ)` (or `ε^(m)` with `error=True`).
#[pyfunction]
#[pyo3(signature = (tau, m, dims, error=false))]
fn curve_log10(tau: f64, m: usize, dims: Vec<usize>, error: bool) -> PyResult<f64> {
    let v = if error { analysis::epsilon_m(tau, m, &dims) } else { analysis::p_m(tau, m, &dims) };
    v.map(log10).map_err(err)
}

/// Slope, intercept and residual of `ln max ε^(m)` against `N`.
#[pyfunction]
#[pyo3(signature = (m, n_grid=None, partners="envelope"))]
fn fit_scaling<'py>(
    py: Python<'py>,
    m: usize,
    n_grid: Option<Vec<usize>>,
    partners: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let partners = match partners {
        "equal" => PartnerSizes::Equal,
        "odd-neighbour" => PartnerSizes::OddNeighbour,
        "envelope" => PartnerSizes::Envelope,
        other => return Err(PyValueError::new_err(format!("unknown partners {other:?}"))),
    };
    let grid = n_grid.unwrap_or_else(analysis::default_fit_grid);
    let f = analysis::fit_epsilon_scaling(m, &grid, partners).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("slope", f.slope)?;
    d.set_item("intercept", f.intercept)?;
    d.set_item("residual", f.residual)?;
    d.set_item("ln_eps_max", f.points.iter().map(|p| p.ln_eps_max).collect::<Vec<_>>())?;
    Ok(d)
}

/// Readout signal after collective dephasing for `Γt = gamma_t`.
#[pyfunction]
#[pyo3(signature = (oracle, n, gamma_t, method=1, params=None))]
fn dephased_signal(oracle: &PyOracle, n: Vec<usize>, gamma_t: f64, method: u8, params: Option<&PyParams>) -> PyResult<f64> {
    let method = match method {
        1 => Method::One,
        2 => Method::Two,
        _ => return Err(PyValueError::new_err("method must be 1 or 2")),
    };
    let dims = dims_for(oracle.0.m(), n, None)?;
    let spec = DephasingSpec::all_x(1.0, gamma_t, oracle.0.m()).map_err(err)?;
    decoherence::run_dj_with_dephasing(method, &oracle.0, &params_or_zero(params), &dims, &spec, &Caps::default())
        .map(|r| r.signal)
        .map_err(err)
}

#[pyfunction]
fn constant_signal(gamma_t: f64, m: usize) -> f64 {
    decoherence::constant_signal(1.0, gamma_t, m)
}

/// `‖exp(-iH_f) - U_f‖_max` for the Hamiltonian with the given `j_x`.
#[pyfunction]
#[pyo3(signature = (oracle, params=None))]
fn verify_oracle(oracle: &PyOracle, params: Option<&PyParams>) -> PyResult<f64> {
    let h = oracle::qubit_oracle_hamiltonian(&oracle.0, &params_or_zero(params)).map_err(err)?;
    Ok(fock::max_abs_diff(&fock::expm_hermitian(&h, 1.0), &oracle::qubit_oracle_unitary(&oracle.0)))
}

/// Fock amplitudes of the spin coherent state `|α,β⟩⟩`.
#[pyfunction]
fn coherent_state(alpha: Complex64, beta: Complex64, n: usize) -> PyResult<Vec<Complex64>> {
    fock::coherent_state(alpha, beta, n).map(|s| s.amps().to_vec()).map_err(err)
}

#[pymodule]
fn eqcdj_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOracle>()?;
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(run_qubits, m)?)?;
    m.add_function(wrap_pyfunction!(method1, m)?)?;
    m.add_function(wrap_pyfunction!(method2, m)?)?;
    m.add_function(wrap_pyfunction!(deutsch_log10, m)?)?;
    m.add_function(wrap_pyfunction!(curve_log10, m)?)?;
    m.add_function(wrap_pyfunction!(fit_scaling, m)?)?;
    m.add_function(wrap_pyfunction!(dephased_signal, m)?)?;
    m.add_function(wrap_pyfunction!(constant_signal, m)?)?;
    m.add_function(wrap_pyfunction!(verify_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(coherent_state, m)?)?;
    Ok(())
}
