//! Python bindings: polynomials as `Poly` objects and the main constructions
//! and checks as module functions. Errors surface as `ValueError`, with
//! `NonPolynomialError` for inputs outside the domain of `L_m`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quasiinv::calogero::{apply_lm as lm, LmOperator};
use quasiinv::hookbasis::{self, HookSpec};
use quasiinv::json::{poly_from_json, poly_to_json};
use quasiinv::quasi::{self, graded_dimension_oracle};
use quasiinv::structure;
use quasiinv::verify::{run_verify, Suite, VerifyConfig};
use quasiinv::{Error, MultiPoly, Perm, Tableau};

create_exception!(pyquasiinv, NonPolynomialError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NonPolynomial { .. } => NonPolynomialError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Polynomial with exact rational coefficients in `x1..xn`.
#[pyclass(name = "Poly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly {
    inner: MultiPoly,
}

impl From<MultiPoly> for PyPoly {
    fn from(inner: MultiPoly) -> Self {
        PyPoly { inner }
    }
}

#[pymethods]
impl PyPoly {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        poly_from_json(text).map(Into::into).map_err(to_py)
    }

    /// The variable `x_i` (1-based) in `n` variables.
    #[staticmethod]
    fn var(n: usize, i: usize) -> PyResult<Self> {
        MultiPoly::var(n, i).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn zero(n: usize) -> Self {
        MultiPoly::zero(n).into()
    }

    #[staticmethod]
    fn one(n: usize) -> Self {
        MultiPoly::one(n).into()
    }

    fn to_json(&self) -> String {
        poly_to_json(&self.inner)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    /// Total degree, or `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    /// Coefficient of the monomial with the given exponents, as a string `p/q`.
    fn coeff(&self, exps: Vec<u32>) -> String {
        self.inner.coeff(&exps).to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.inner.checked_add(&other.inner).map(Into::into).map_err(to_py)
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.inner.checked_sub(&other.inner).map(Into::into).map_err(to_py)
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        self.inner.checked_mul(&other.inner).map(Into::into).map_err(to_py)
    }

    fn __neg__(&self) -> PyPoly {
        (-&self.inner).into()
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> PyPoly {
        self.inner.pow(e).into()
    }
}

fn spec(n: usize, m: u32, j: usize, k: u32) -> PyResult<HookSpec> {
    HookSpec::new(n, m, j, k).map_err(to_py)
}

/// `Q_T^{k,m}` by integration.
#[pyfunction]
fn q_integral(n: usize, m: u32, j: usize, k: u32) -> PyResult<PyPoly> {
    Ok(hookbasis::q_integral(&spec(n, m, j, k)?).into())
}

/// `Q_T^{k,m}` from the closed z-expansion.
#[pyfunction]
fn q_closed_form(n: usize, m: u32, j: usize, k: u32) -> PyResult<PyPoly> {
    Ok(hookbasis::q_closed_form(&spec(n, m, j, k)?).into())
}

#[pyfunction]
#[pyo3(signature = (n, m, j, verify = false))]
fn hook_basis(n: usize, m: u32, j: usize, verify: bool) -> PyResult<Vec<PyPoly>> {
    hookbasis::hook_basis(n, m, j, verify)
        .map(|v| v.into_iter().map(Into::into).collect())
        .map_err(to_py)
}

#[pyfunction]
fn apply_lm(p: &PyPoly, m: u32) -> PyResult<PyPoly> {
    lm(&LmOperator::new(p.inner.nvars(), m), &p.inner).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn is_quasiinvariant(p: &PyPoly, m: u32) -> bool {
    quasi::is_quasiinvariant(&p.inner, m)
}

/// Applies the Young symmetrizer of the tableau with the given rows.
#[pyfunction]
fn gamma_apply(p: &PyPoly, rows: Vec<Vec<usize>>) -> PyResult<PyPoly> {
    let t = Tableau::new(rows).map_err(to_py)?;
    t.gamma()
        .and_then(|g| g.apply(&p.inner))
        .map(Into::into)
        .map_err(to_py)
}

/// Acts by a permutation written in cycle notation, e.g. `"(1,2)(3,4)"`.
#[pyfunction]
fn act(p: &PyPoly, sigma: &str) -> PyResult<PyPoly> {
    Perm::parse_cycles(p.inner.nvars(), sigma)
        .and_then(|s| s.act(&p.inner))
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn delta_sq_embed(p: &PyPoly, m: u32) -> PyResult<PyPoly> {
    quasi::delta_sq_embed(&p.inner, m).map(Into::into).map_err(to_py)
}

/// Hilbert series report as a JSON string.
#[pyfunction]
#[pyo3(signature = (n, m, truncation, oracle = false))]
fn full_hilbert(n: usize, m: u32, truncation: usize, oracle: bool) -> PyResult<String> {
    let mut r = structure::full_hilbert(n, m, truncation).map_err(to_py)?;
    if oracle {
        r = structure::with_oracle(r).map_err(to_py)?;
    }
    Ok(serde_json::to_string(&r).expect("serializable"))
}

/// Dimension of the degree-`d` part of `QI_m`.
#[pyfunction]
fn graded_dimension(n: usize, m: u32, d: u32) -> PyResult<usize> {
    graded_dimension_oracle(n, m, d).map(|w| w.dimension()).map_err(to_py)
}

#[pyfunction]
fn oracle_basis(n: usize, m: u32, d: u32) -> PyResult<Vec<PyPoly>> {
    graded_dimension_oracle(n, m, d)
        .map(|w| w.basis.into_iter().map(Into::into).collect())
        .map_err(to_py)
}

/// Runs a verification suite; returns `(passed, text report)`.
#[pyfunction]
#[pyo3(signature = (suite, n, m, seed = 0))]
fn verify(suite: &str, n: usize, m: u32, seed: u64) -> PyResult<(bool, String)> {
    let c = VerifyConfig::new(Suite::parse(suite).map_err(to_py)?, n, m, seed);
    let r = run_verify(&c).map_err(to_py)?;
    Ok((r.passed, r.to_text()))
}

#[pymodule]
fn pyquasiinv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add("NonPolynomialError", m.py().get_type::<NonPolynomialError>())?;
    m.add_function(wrap_pyfunction!(q_integral, m)?)?;
    m.add_function(wrap_pyfunction!(q_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(hook_basis, m)?)?;
    m.add_function(wrap_pyfunction!(apply_lm, m)?)?;
    m.add_function(wrap_pyfunction!(is_quasiinvariant, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_apply, m)?)?;
    m.add_function(wrap_pyfunction!(act, m)?)?;
    m.add_function(wrap_pyfunction!(delta_sq_embed, m)?)?;
    m.add_function(wrap_pyfunction!(full_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(graded_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_basis, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
