//! Python bindings. Reports are returned as JSON text in the same format as
//! `l2lab classify --format json`.

use l2lab_core::finite::parse_algebra;
use l2lab_core::parse::{format_polynomial, parse_polynomial};
use l2lab_core::report::{self, ClassificationReport, Status};
use l2lab_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(l2lab, CapExceeded, PyException, "An enumeration needs more candidates than L2LAB_CAP allows.");
create_exception!(l2lab, ConsistencyError, PyException, "Two independent computations disagreed.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::TooLarge { .. } => CapExceeded::new_err(e.to_string()),
        Error::Consistency(_) => ConsistencyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn checked(r: ClassificationReport) -> PyResult<ClassificationReport> {
    if r.status == Status::Failed {
        return Err(ConsistencyError::new_err(r.failed_checks().join("; ")));
    }
    Ok(r)
}

fn polynomial_report(text: &str) -> PyResult<ClassificationReport> {
    checked(report::classify_polynomial(text).map_err(to_py)?)
}

fn algebra_report(document: &str) -> PyResult<ClassificationReport> {
    let p = parse_algebra(document).map_err(to_py)?;
    checked(report::classify_algebra(document, &p).map_err(to_py)?)
}

/// Canonical text of a polynomial over Q.
#[pyfunction]
fn canonical_polynomial(text: &str) -> PyResult<String> {
    Ok(format_polynomial(&parse_polynomial(text).map_err(to_py)?))
}

/// JSON report for `Q ⊂ Q[X]/(f)`.
#[pyfunction]
fn classify_polynomial(py: Python<'_>, text: &str) -> PyResult<String> {
    py.detach(|| polynomial_report(text).map(|r| r.to_json()))
}

/// JSON report for the extension described by a JSON algebra presentation.
#[pyfunction]
fn classify_algebra(py: Python<'_>, document: &str) -> PyResult<String> {
    py.detach(|| algebra_report(document).map(|r| r.to_json()))
}

/// DOT digraph of the intermediate fields of `Q[X]/(f)`.
#[pyfunction]
fn lattice_dot_polynomial(py: Python<'_>, text: &str) -> PyResult<String> {
    py.detach(|| polynomial_report(text).map(|r| r.to_dot()))
}

/// DOT digraph of the subalgebras between `R` and `S`.
#[pyfunction]
fn lattice_dot_algebra(py: Python<'_>, document: &str) -> PyResult<String> {
    py.detach(|| algebra_report(document).map(|r| r.to_dot()))
}

#[pymodule]
fn l2lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(canonical_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(classify_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(classify_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_dot_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_dot_algebra, m)?)?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add("ConsistencyError", m.py().get_type::<ConsistencyError>())?;
    Ok(())
}
