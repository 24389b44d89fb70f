//! Python bindings. Reports cross the boundary as plain dicts and lists.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use singhodge::monodromy::{milnor_weight_table as milnor_table, validate_jordan_data, Eigenvalue, JordanBlockData};
use singhodge::newton::{is_flat, is_quasi_homogeneous, newton_boundary, newton_polyhedron, pi_f as count_pi_f};
use singhodge::poly::{parse_polynomial, support, ExponentVector, SparsePolynomial};
use singhodge::report::{analyze_text, jordan_report, AnalyzeOptions};
use singhodge::verify::run_verify;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn parse(text: &str) -> PyResult<SparsePolynomial> {
    parse_polynomial(text, None).map_err(value_error)
}

fn support_of(text: &str) -> PyResult<(Vec<ExponentVector>, usize)> {
    let p = parse(text)?;
    Ok((support(&p).into_iter().collect(), p.n()))
}

fn jordan_data(text: &str) -> PyResult<JordanBlockData> {
    let j = JordanBlockData::from_json(text).map_err(value_error)?;
    validate_jordan_data(&j).map_err(|violations| {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        PyValueError::new_err(lines.join("; "))
    })?;
    Ok(j)
}

/// Canonical text form of a polynomial.
#[pyfunction]
fn normalize(text: &str) -> PyResult<String> {
    Ok(parse(text)?.to_string())
}

/// Full analysis report as a dict.
#[pyfunction]
#[pyo3(signature = (text, assume_nondegenerate = false))]
fn analyze<'py>(py: Python<'py>, text: &str, assume_nondegenerate: bool) -> PyResult<Bound<'py, PyAny>> {
    let report = analyze_text(text, AnalyzeOptions { assume_nondegenerate }).map_err(value_error)?;
    from_json(py, &report.to_json())
}

#[pyfunction]
fn newton_vertices(text: &str) -> PyResult<Vec<Vec<i64>>> {
    let (supp, n) = support_of(text)?;
    let polyhedron = newton_polyhedron(&supp, n).map_err(value_error)?;
    Ok(polyhedron.vertices().iter().map(|v| v.entries().to_vec()).collect())
}

#[pyfunction]
fn pi_f(text: &str) -> PyResult<usize> {
    let (supp, n) = support_of(text)?;
    Ok(count_pi_f(&newton_boundary(&newton_polyhedron(&supp, n).map_err(value_error)?)))
}

/// `(normal, offset)` of the hyperplane carrying a flat boundary.
#[pyfunction]
fn flat_witness(text: &str) -> PyResult<Option<(Vec<i64>, i64)>> {
    let (supp, n) = support_of(text)?;
    let boundary = newton_boundary(&newton_polyhedron(&supp, n).map_err(value_error)?);
    Ok(is_flat(&boundary).map(|w| (w.normal, w.offset)))
}

/// `(weights, degree)` when the polynomial is quasi-homogeneous.
#[pyfunction]
fn quasi_homogeneous(text: &str) -> PyResult<Option<(Vec<i64>, i64)>> {
    let (supp, n) = support_of(text)?;
    Ok(is_quasi_homogeneous(&supp, n).map(|q| (q.weights, q.degree)))
}

/// Weight tables and purity for Jordan data given as JSON text.
#[pyfunction]
fn jordan<'py>(py: Python<'py>, data: &str) -> PyResult<Bound<'py, PyAny>> {
    let report = jordan_report(&jordan_data(data)?).map_err(value_error)?;
    from_json(py, &report.to_json())
}

#[pyfunction]
fn milnor_weight_table(data: &str, eigenvalue: &str) -> PyResult<BTreeMap<i64, u64>> {
    let lambda: Eigenvalue = eigenvalue.parse().map_err(value_error)?;
    milnor_table(&jordan_data(data)?, lambda).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (seed = 0, iters = 200))]
fn verify<'py>(py: Python<'py>, seed: u64, iters: usize) -> PyResult<Bound<'py, PyAny>> {
    let summary = py.detach(|| run_verify(seed, iters));
    from_json(py, &serde_json::to_string(&summary).map_err(value_error)?)
}

#[pymodule]
fn singhodge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(newton_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(pi_f, m)?)?;
    m.add_function(wrap_pyfunction!(flat_witness, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_homogeneous, m)?)?;
    m.add_function(wrap_pyfunction!(jordan, m)?)?;
    m.add_function(wrap_pyfunction!(milnor_weight_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
