//! Python bindings. Rationals cross the boundary as `fractions.Fraction`,
//! integers as `int`, certificates and polytopes as JSON strings or small
//! wrapper classes.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use core::egyptian::{self, EgyptianTuple};
use core::exactgeom::{self, Polytope, Rat, DEFAULT_BUDGET};
use core::transforms::{self, LegVector};
use core::verify;
use latfree as core;

create_exception!(latfree, LatfreeError, PyException);

fn err(e: core::Error) -> PyErr {
    LatfreeError::new_err(e.to_string())
}

fn legs(v: Vec<Rat>) -> PyResult<LegVector> {
    LegVector::new(v).map_err(err)
}

fn tuple(v: Vec<BigInt>) -> PyResult<EgyptianTuple> {
    EgyptianTuple::new(v).map_err(err)
}

/// `Σ 1/a_i` as a Fraction.
#[pyfunction]
fn kappa(a: Vec<Rat>) -> PyResult<Rat> {
    egyptian::kappa(&a).map_err(err)
}

/// Number of sorted d-tuples of positive integers whose reciprocals sum to 1.
#[pyfunction]
fn count_a(py: Python<'_>, d: usize) -> PyResult<u64> {
    py.detach(|| egyptian::count_a(d)).map_err(err)
}

/// All of them, in lexicographic order.
#[pyfunction]
fn enumerate_a(py: Python<'_>, d: usize) -> PyResult<Vec<Vec<BigInt>>> {
    let all = py.detach(|| egyptian::collect_a(d)).map_err(err)?;
    Ok(all.into_iter().map(|t| t.components().to_vec()).collect())
}

#[pyfunction]
fn phi(a: Vec<Rat>) -> PyResult<Vec<Rat>> {
    Ok(transforms::phi(&legs(a)?).into_inner())
}

#[pyfunction]
fn psi(a: Vec<Rat>) -> PyResult<Vec<Rat>> {
    Ok(transforms::psi(&legs(a)?).into_inner())
}

#[pyfunction]
fn xi(a: Vec<Rat>) -> PyResult<Vec<Rat>> {
    Ok(transforms::xi(&legs(a)?).into_inner())
}

#[pyfunction]
fn eta(a: Vec<BigInt>) -> PyResult<Vec<Rat>> {
    Ok(transforms::eta(&tuple(a)?).map_err(err)?.into_inner())
}

#[pyfunction]
fn canonical_form(a: Vec<Rat>) -> PyResult<Vec<Rat>> {
    Ok(verify::canonical_form(&legs(a)?).into_inner())
}

#[pyfunction]
fn is_lattice_free_axis(a: Vec<Rat>) -> PyResult<bool> {
    Ok(verify::is_lattice_free_axis(&legs(a)?))
}

#[pyfunction]
fn is_maximal_lattice_free_axis(a: Vec<Rat>) -> PyResult<bool> {
    Ok(verify::is_maximal_lattice_free_axis(&legs(a)?))
}

/// Certificate JSON for the polytope built from tuple `a`.
#[pyfunction]
#[pyo3(signature = (a, budget = DEFAULT_BUDGET))]
fn certify(py: Python<'_>, a: Vec<BigInt>, budget: u64) -> PyResult<String> {
    let a = tuple(a)?;
    let cert = py.detach(|| verify::certify(&a, budget)).map_err(err)?;
    Ok(cert.to_json().to_string())
}

/// Re-verifies a certificate JSON string; raises `LatfreeError` on failure.
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<()> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| LatfreeError::new_err(format!("invalid JSON: {e}")))?;
    verify::verify_certificate_json(&v).map_err(err)
}

/// A polytope with exact vertex and facet data.
#[pyclass(name = "Polytope", module = "latfree", frozen)]
struct PyPolytope(Polytope);

#[pymethods]
impl PyPolytope {
    /// `conv{o, a_1 e_1, ..., a_d e_d}`.
    #[staticmethod]
    fn axis_simplex(a: Vec<Rat>) -> PyResult<PyPolytope> {
        Polytope::axis_simplex(&a).map(PyPolytope).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyPolytope> {
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| LatfreeError::new_err(format!("invalid JSON: {e}")))?;
        Polytope::from_json(&v).map(PyPolytope).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim
    }

    #[getter]
    fn vertices(&self) -> Vec<Vec<Rat>> {
        self.0.vertices.clone()
    }

    /// Facet inequalities as `(normal, rhs)` with `normal · x <= rhs`.
    #[getter]
    fn halfspaces(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        self.0
            .halfspaces
            .iter()
            .map(|h| (h.normal.clone(), h.rhs.clone()))
            .collect()
    }

    fn contains(&self, x: Vec<Rat>) -> bool {
        x.len() == self.0.dim && self.0.contains(&x)
    }

    fn is_integral(&self) -> bool {
        self.0.is_integral()
    }

    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn lattice_points(&self, py: Python<'_>, budget: u64) -> PyResult<Vec<Vec<Rat>>> {
        py.detach(|| exactgeom::lattice_points(&self.0, budget))
            .map_err(err)
    }

    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn integer_hull(&self, py: Python<'_>, budget: u64) -> PyResult<PyPolytope> {
        py.detach(|| exactgeom::integer_hull(&self.0, budget))
            .map(PyPolytope)
            .map_err(err)
    }

    fn same_set(&self, other: &PyPolytope) -> bool {
        self.0.same_set(&other.0)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, vertices={}, facets={})",
            self.0.dim,
            self.0.vertices.len(),
            self.0.halfspaces.len()
        )
    }
}

#[pyfunction]
fn convex_hull(points: Vec<Vec<Rat>>) -> PyResult<PyPolytope> {
    exactgeom::convex_hull(&points).map(PyPolytope).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (hull, budget = DEFAULT_BUDGET))]
fn reconstruct_from_integer_hull(
    py: Python<'_>,
    hull: &PyPolytope,
    budget: u64,
) -> PyResult<PyPolytope> {
    py.detach(|| verify::reconstruct_from_integer_hull(&hull.0, budget))
        .map(PyPolytope)
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "latfree")]
fn latfree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LatfreeError", m.py().get_type::<LatfreeError>())?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(count_a, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_a, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(xi, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(is_lattice_free_axis, m)?)?;
    m.add_function(wrap_pyfunction!(is_maximal_lattice_free_axis, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(convex_hull, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_from_integer_hull, m)?)?;
    Ok(())
}
