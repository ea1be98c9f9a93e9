//! Python bindings. `check`, `oracle`, `irred` and `fuzz` return the document
//! the CLI prints with `--json`, converted to plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use radical_degree::cli::{self, parse_rational};
use radical_degree::fuzz::FuzzConfig;
use radical_degree::polyfactor::factor_rational;
use radical_degree::Error;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::OracleInconclusive(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, doc: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(doc).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Accepts `str`, `int` or `fractions.Fraction`; all render as `num` or `num/den`.
fn as_text(value: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(value.str()?.to_cow()?.into_owned())
}

fn tokens_text(tokens: &[Bound<'_, PyAny>]) -> PyResult<Vec<String>> {
    tokens.iter().map(as_text).collect()
}

/// Decide whether the radicals `"N:m"` generate an extension of full degree.
#[pyfunction]
#[pyo3(signature = (tokens, seed = 0))]
fn check<'py>(py: Python<'py>, tokens: Vec<Bound<'py, PyAny>>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let tokens = tokens_text(&tokens)?;
    let doc = py.detach(|| cli::check_report(&tokens, seed)).map_err(to_py_err)?;
    to_dict(py, &doc)
}

/// `check` plus the independent field test on the tensor algebra.
#[pyfunction]
#[pyo3(signature = (tokens, seed = 0, max_dim = 32))]
fn oracle<'py>(
    py: Python<'py>,
    tokens: Vec<Bound<'py, PyAny>>,
    seed: u64,
    max_dim: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let tokens = tokens_text(&tokens)?;
    let doc = py
        .detach(|| cli::oracle_report(&tokens, seed, max_dim))
        .map_err(to_py_err)?;
    to_dict(py, &doc)
}

/// Irreducibility of `x^n - a` over Q, optionally with its factorization.
#[pyfunction]
#[pyo3(signature = (n, a, factor = false))]
fn irred<'py>(py: Python<'py>, n: u64, a: Bound<'py, PyAny>, factor: bool) -> PyResult<Bound<'py, PyAny>> {
    let a = as_text(&a)?;
    let doc = py.detach(|| cli::irred_report(n, &a, factor)).map_err(to_py_err)?;
    to_dict(py, &doc)
}

#[derive(Serialize)]
struct Factor {
    polynomial: String,
    coefficients: Vec<String>,
    multiplicity: u32,
}

#[derive(Serialize)]
struct Factorization {
    unit: String,
    factors: Vec<Factor>,
    irreducible: bool,
}

/// Factor a polynomial over Q given its coefficients, constant term first.
#[pyfunction]
fn factor<'py>(py: Python<'py>, coefficients: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let coeffs = coefficients
        .iter()
        .map(|c| parse_rational(&as_text(c)?).map_err(to_py_err))
        .collect::<PyResult<Vec<_>>>()?;
    let result = py.detach(|| factor_rational(&coeffs)).map_err(to_py_err)?;
    let doc = Factorization {
        unit: result.unit.to_string(),
        factors: result
            .factors
            .iter()
            .map(|(g, e)| Factor {
                polynomial: g.to_string(),
                coefficients: g.coeffs().iter().map(|c| c.to_string()).collect(),
                multiplicity: *e,
            })
            .collect(),
        irreducible: result.is_irreducible(),
    };
    to_dict(py, &doc)
}

/// Cross-check the criterion against the field test on random towers.
#[pyfunction]
#[pyo3(signature = (count = 100, max_ell = 3, max_m = 8, max_abs_n = 30, max_dim = 24, seed = 0, primitive_sums = false, replay = None))]
#[allow(clippy::too_many_arguments)]
fn fuzz<'py>(
    py: Python<'py>,
    count: usize,
    max_ell: usize,
    max_m: u64,
    max_abs_n: i64,
    max_dim: usize,
    seed: u64,
    primitive_sums: bool,
    replay: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let config = FuzzConfig {
        count,
        max_ell,
        max_m,
        max_abs_n,
        max_dim,
        seed,
        primitive_sums,
    };
    let doc = py.detach(|| cli::fuzz_report(&config, replay)).map_err(to_py_err)?;
    to_dict(py, &doc)
}

#[pymodule]
fn pyradical(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(irred, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz, m)?)?;
    Ok(())
}
