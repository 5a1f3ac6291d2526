//! Python bindings for `ctm-core`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ctm_core::criteria::{self, CriterionName, CriterionReport, Options};
use ctm_core::linalg::ComplexMatrix;
use ctm_core::threshold::{find_threshold, ScalarFamily};
use ctm_core::{bloch, moments, states};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated density matrix.
#[pyclass(name = "DensityMatrix", module = "ctm", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDensityMatrix {
    inner: ctm_core::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    #[new]
    fn new(dims: Vec<usize>, matrix: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let m = ComplexMatrix::from_fn(n, n, |i, j| matrix[i][j]);
        let inner = ctm_core::DensityMatrix::new(dims, m).map_err(value_error)?;
        Ok(PyDensityMatrix { inner })
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    /// Rows of complex entries.
    fn to_list(&self) -> Vec<Vec<Complex64>> {
        let m = self.inner.matrix();
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
    }

    fn purity(&self) -> f64 {
        self.inner.purity()
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dims={:?})", self.inner.dims())
    }
}

/// Outcome of one separability test.
#[pyclass(name = "Report", module = "ctm", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyReport {
    name: String,
    quantity: f64,
    bound: f64,
    violated: bool,
    margin: f64,
    error: Option<String>,
}

impl From<CriterionReport> for PyReport {
    fn from(r: CriterionReport) -> Self {
        PyReport {
            name: r.name.to_string(),
            quantity: r.quantity,
            bound: r.bound,
            violated: r.violated,
            margin: r.margin,
            error: r.error,
        }
    }
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "Report(name={:?}, quantity={:e}, bound={:e}, violated={})",
            self.name, self.quantity, self.bound, self.violated
        )
    }
}

fn wrap(r: ctm_core::Result<ctm_core::DensityMatrix>) -> PyResult<PyDensityMatrix> {
    r.map(|inner| PyDensityMatrix { inner }).map_err(value_error)
}

#[pyfunction]
fn werner(d: usize, x: f64) -> PyResult<PyDensityMatrix> {
    wrap(states::werner(d, x))
}

#[pyfunction]
fn tiles_ppt() -> PyDensityMatrix {
    PyDensityMatrix { inner: states::tiles_ppt() }
}

#[pyfunction]
fn ghz(n: usize) -> PyResult<PyDensityMatrix> {
    wrap(states::ghz(n))
}

#[pyfunction]
fn bell() -> PyDensityMatrix {
    PyDensityMatrix { inner: states::bell() }
}

#[pyfunction]
fn maximally_mixed(dims: Vec<usize>) -> PyResult<PyDensityMatrix> {
    wrap(states::maximally_mixed(&dims))
}

#[pyfunction]
fn mix_white_noise(rho: &PyDensityMatrix, x: f64) -> PyResult<PyDensityMatrix> {
    wrap(states::mix_white_noise(&rho.inner, x))
}

/// Generalized Gell-Mann matrices of su(d) as nested lists.
#[pyfunction]
fn gellmann(d: usize) -> PyResult<Vec<Vec<Vec<Complex64>>>> {
    let basis = ctm_core::basis::gellmann_generators(d).map_err(value_error)?;
    Ok(basis
        .generators()
        .iter()
        .map(|g| (0..d).map(|i| (0..d).map(|j| g[(i, j)]).collect()).collect())
        .collect())
}

type Bloch = (Vec<f64>, Vec<f64>, Vec<Vec<f64>>);

/// `(r, s, T)` of a bipartite state.
#[pyfunction]
fn bloch_decomposition(rho: &PyDensityMatrix) -> PyResult<Bloch> {
    let dec = bloch::decompose_bipartite(&rho.inner).map_err(value_error)?;
    let t = (0..dec.t.nrows()).map(|i| dec.t.row(i).iter().copied().collect()).collect();
    Ok((dec.r, dec.s, t))
}

/// `[a0, a1, …, a_{d1 d2}]` of the correlation (or canonical) matrix.
#[pyfunction]
#[pyo3(signature = (rho, canonical = false))]
fn moment_vector(rho: &PyDensityMatrix, canonical: bool) -> PyResult<Vec<f64>> {
    Ok(moments::moments_of_state(&rho.inner, canonical).map_err(value_error)?.values)
}

#[pyfunction]
#[pyo3(signature = (rho, tol = 1e-9, include_hk = false))]
fn evaluate_all(rho: &PyDensityMatrix, tol: f64, include_hk: bool) -> Vec<PyReport> {
    let opts = Options { tol, include_hk, ..Options::default() };
    criteria::evaluate_all(&rho.inner, &opts).into_iter().map(PyReport::from).collect()
}

#[pyfunction]
#[pyo3(signature = (rho, criterion, tol = 1e-9))]
fn evaluate(rho: &PyDensityMatrix, criterion: &str, tol: f64) -> PyResult<PyReport> {
    let name: CriterionName = criterion.parse().map_err(value_error)?;
    let opts = Options { tol, ..Options::default() };
    criteria::evaluate(&rho.inner, name, &opts).map(PyReport::from).map_err(value_error)
}

/// Detection threshold of `criterion` along a noisy family; `None` without a sign change.
#[pyfunction]
#[pyo3(signature = (family, criterion, precision = 1e-5, d = None, n = None, tol = 1e-9))]
fn threshold(
    family: &str,
    criterion: &str,
    precision: f64,
    d: Option<usize>,
    n: Option<usize>,
    tol: f64,
) -> PyResult<Option<f64>> {
    let family = ScalarFamily::parse(family, d, n).map_err(value_error)?;
    let name: CriterionName = criterion.parse().map_err(value_error)?;
    let opts = Options { tol, ..Options::default() };
    Ok(find_threshold(&family, name, precision, &opts).map_err(value_error)?.threshold)
}

#[pymodule]
fn ctm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(werner, m)?)?;
    m.add_function(wrap_pyfunction!(tiles_ppt, m)?)?;
    m.add_function(wrap_pyfunction!(ghz, m)?)?;
    m.add_function(wrap_pyfunction!(bell, m)?)?;
    m.add_function(wrap_pyfunction!(maximally_mixed, m)?)?;
    m.add_function(wrap_pyfunction!(mix_white_noise, m)?)?;
    m.add_function(wrap_pyfunction!(gellmann, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(moment_vector, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_all, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    Ok(())
}
