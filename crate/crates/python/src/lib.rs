//! Python bindings. Rationals cross the boundary as strings (`"3/2"`);
//! inputs may be anything whose `str()` parses, so ints and
//! `fractions.Fraction` work too. Reports come back as plain dicts/lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use jordan_dgla::exactla::{format_vec, parse_rational};
use jordan_dgla::{audit, bracket, cli, complex, corpus, Error, InsertionMode, Rational};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode_of(s: &str) -> PyResult<InsertionMode> {
    s.parse().map_err(py_err)
}

fn rationals(items: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    items.iter().map(|x| parse_rational(&x.str()?.to_cow()?).map_err(py_err)).collect()
}

fn from_json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

/// A finite-dimensional commutative algebra given by structure constants.
#[pyclass(name = "Algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: jordan_dgla::Algebra,
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyAlgebra { inner: jordan_dgla::Algebra::from_json(s).map_err(py_err)? })
    }

    /// One of the built-in corpus algebras, e.g. `"j2_1_0"`.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        corpus::by_name(name)
            .map(|e| PyAlgebra { inner: e.algebra })
            .ok_or_else(|| PyValueError::new_err(format!("no corpus algebra named {name:?}")))
    }

    #[staticmethod]
    fn j2(a: Bound<'_, PyAny>, b: Bound<'_, PyAny>) -> PyResult<Self> {
        let v = rationals(&[a, b])?;
        Ok(PyAlgebra { inner: corpus::make_j2(v[0].clone(), v[1].clone()) })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn product(&self, x: Vec<Bound<'_, PyAny>>, y: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let p = self.inner.product(&rationals(&x)?, &rationals(&y)?).map_err(py_err)?;
        Ok(format_vec(&p))
    }

    /// The product as a cochain in `C^2`.
    fn mu(&self) -> PyCochain {
        PyCochain { inner: complex::mu(&self.inner) }
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, labels={:?})", self.inner.dim(), self.inner.labels())
    }
}

/// A symmetric multilinear map `V^{⊗n} → V`.
#[pyclass(name = "Cochain", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCochain {
    inner: jordan_dgla::SymCochain,
}

#[pymethods]
impl PyCochain {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyCochain { inner: jordan_dgla::SymCochain::from_json(s).map_err(py_err)? })
    }

    #[staticmethod]
    fn identity(dim: usize) -> Self {
        PyCochain { inner: jordan_dgla::SymCochain::identity(dim) }
    }

    #[staticmethod]
    fn zero(arity: usize, dim: usize) -> Self {
        PyCochain { inner: jordan_dgla::SymCochain::zero(arity, dim) }
    }

    /// Coefficients in the multiset basis, value component fastest.
    #[staticmethod]
    fn from_coeffs(arity: usize, dim: usize, coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let c = rationals(&coeffs)?;
        Ok(PyCochain { inner: jordan_dgla::SymCochain::from_coeff_vec(arity, dim, c).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    fn coeffs(&self) -> Vec<String> {
        format_vec(self.inner.coeff_vec())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn evaluate(&self, args: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Vec<String>> {
        let args = args.iter().map(|a| rationals(a)).collect::<PyResult<Vec<_>>>()?;
        Ok(format_vec(&self.inner.evaluate(&args).map_err(py_err)?))
    }

    #[pyo3(signature = (other, mode = "sum"))]
    fn insert(&self, other: &PyCochain, mode: &str) -> PyResult<PyCochain> {
        let r = bracket::insert(&self.inner, &other.inner, mode_of(mode)?).map_err(py_err)?;
        Ok(PyCochain { inner: r })
    }

    #[pyo3(signature = (other, mode = "sum"))]
    fn bracket(&self, other: &PyCochain, mode: &str) -> PyResult<PyCochain> {
        let r = bracket::graded_bracket(&self.inner, &other.inner, mode_of(mode)?).map_err(py_err)?;
        Ok(PyCochain { inner: r })
    }

    fn scale(&self, s: Bound<'_, PyAny>) -> PyResult<PyCochain> {
        Ok(PyCochain { inner: self.inner.scale(&rationals(&[s])?[0]) })
    }

    fn __add__(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain { inner: self.inner.add(&other.inner).map_err(py_err)? })
    }

    fn __sub__(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain { inner: self.inner.sub(&other.inner).map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("Cochain(arity={}, dim={}, coeffs={:?})", self.inner.arity(), self.inner.dim(), self.coeffs())
    }
}

#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    corpus::corpus().into_iter().map(|e| e.name).collect()
}

#[pyfunction]
fn check<'py>(py: Python<'py>, alg: &PyAlgebra) -> PyResult<Bound<'py, PyAny>> {
    from_json(py, &cli::check_report(&alg.inner))
}

#[pyfunction]
fn derivations<'py>(py: Python<'py>, alg: &PyAlgebra) -> PyResult<Bound<'py, PyAny>> {
    let basis = complex::derivations(&alg.inner);
    from_json(py, &serde_json::json!({ "dimension": basis.len(), "basis": basis }))
}

#[pyfunction]
#[pyo3(signature = (alg, degree, mode = "sum"))]
fn cohomology<'py>(py: Python<'py>, alg: &PyAlgebra, degree: usize, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    from_json(py, &to_value(&complex::cohomology(&alg.inner, degree, mode_of(mode)?)))
}

#[pyfunction]
#[pyo3(signature = (alg, f, mode = "sum"))]
fn differential(alg: &PyAlgebra, f: &PyCochain, mode: &str) -> PyResult<PyCochain> {
    let d = complex::differential(&alg.inner, &f.inner, mode_of(mode)?).map_err(py_err)?;
    Ok(PyCochain { inner: d })
}

#[pyfunction]
#[pyo3(signature = (alg, phi1, order, mode = "sum"))]
fn mc_solve<'py>(py: Python<'py>, alg: &PyAlgebra, phi1: &PyCochain, order: usize, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let v = cli::mc_solve_report(alg.inner.clone(), phi1.inner.clone(), order, mode_of(mode)?).map_err(py_err)?;
    from_json(py, &v)
}

#[pyfunction]
#[pyo3(name = "audit", signature = (alg, name = "algebra"))]
fn audit_one<'py>(py: Python<'py>, alg: &PyAlgebra, name: &str) -> PyResult<Bound<'py, PyAny>> {
    from_json(py, &to_value(&audit::audit(name, &alg.inner).map_err(py_err)?))
}

#[pyfunction]
fn audit_all(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    from_json(py, &to_value(&audit::audit_all().map_err(py_err)?))
}

#[pymodule(name = "jordan_dgla")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyCochain>()?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(derivations, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(differential, m)?)?;
    m.add_function(wrap_pyfunction!(mc_solve, m)?)?;
    m.add_function(wrap_pyfunction!(audit_one, m)?)?;
    m.add_function(wrap_pyfunction!(audit_all, m)?)?;
    Ok(())
}
