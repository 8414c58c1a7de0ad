//! Python bindings for the resolvent-bounds library.
//!
//! Every function returns plain Python values: floats, lists of complex
//! numbers, and dicts mirroring the library's report types. Spectra are
//! passed as lists of `(eigenvalue, multiplicity)` pairs.

// The conversion lint fires inside the #[pyfunction] expansions.
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use resolvent_bounds::bounds::{
    bound_prop2, bound_theorem1, bound_theorem3, certify_sharpness_theorem1, ds_constant_sup,
    random_contraction_audit, sup_resolvent_r, BoundMethod, BoundReport,
};
use resolvent_bounds::extremal::{
    build_x, root_census, xnorm_auto, xnorm_char_eq_detailed, xnorm_oracle, ExtremalParams,
    RootCensus, XnormMethod,
};
use resolvent_bounds::geometry::{BlaschkeProduct, Spectrum};
use resolvent_bounds::{linalg, model, CMat, Error as CoreError};

fn to_py_err(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mat_to_rows(m: &CMat) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
}

fn rows_to_mat(rows: &[Vec<Complex64>]) -> PyResult<CMat> {
    if rows.is_empty() {
        return Err(PyValueError::new_err("matrix must have at least one row"));
    }
    let cols = rows[0].len();
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("matrix rows must be nonempty and equal length"));
    }
    Ok(CMat::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

fn spectrum_from_pairs(pairs: Vec<(Complex64, usize)>) -> PyResult<Spectrum> {
    Spectrum::new(pairs).map_err(to_py_err)
}

fn method_name(method: XnormMethod) -> &'static str {
    match method {
        XnormMethod::ClosedForm => "closed_form",
        XnormMethod::CharEq => "char_eq",
        XnormMethod::Oracle => "oracle",
    }
}

fn census_dict<'py>(py: Python<'py>, census: &RootCensus) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    d.set_item("predicted_count", census.predicted_count)?;
    d.set_item("found_trig", census.found_trig.clone())?;
    d.set_item("found_cosh_plus", census.found_cosh_plus.clone())?;
    d.set_item("found_cosh_minus", census.found_cosh_minus.clone())?;
    d.set_item("lambda_squares", census.lambda_squares.clone())?;
    Ok(d)
}

fn report_dict<'py>(py: Python<'py>, report: &BoundReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    d.set_item("zeta", report.zeta)?;
    d.set_item("r", report.r)?;
    d.set_item("beta", report.beta)?;
    d.set_item("d1", report.d1)?;
    d.set_item("deg", report.deg)?;
    d.set_item(
        "method",
        match report.method {
            BoundMethod::Theorem1 => "theorem1",
            BoundMethod::Theorem3 => "theorem3",
            BoundMethod::Prop2 => "prop2",
            BoundMethod::Theorem4 => "theorem4",
            BoundMethod::Prop5 => "prop5",
        },
    )?;
    d.set_item("xnorm", report.xnorm)?;
    d.set_item("xnorm_method", method_name(report.xnorm_method))?;
    d.set_item("bound_value", report.bound_value)?;
    Ok(d)
}

/// Norm of the extremal Toeplitz matrix by the cheapest reliable route.
#[pyfunction]
fn xnorm(n: usize, r: f64, beta: f64) -> PyResult<f64> {
    let p = ExtremalParams::new(n, r, beta).map_err(to_py_err)?;
    Ok(xnorm_auto(&p).map_err(to_py_err)?.0)
}

/// Both norm routes with their relative gap and the root census backing
/// the characteristic-equation value (None when that route delegated to
/// the eigensolver or the closed form).
#[pyfunction]
fn xnorm_report(py: Python<'_>, n: usize, r: f64, beta: f64) -> PyResult<Py<PyDict>> {
    let p = ExtremalParams::new(n, r, beta).map_err(to_py_err)?;
    let norm_oracle = xnorm_oracle(&p).map_err(to_py_err)?;
    let (norm_char_eq, census) = match xnorm_char_eq_detailed(&p) {
        Ok(outcome) => (outcome.norm, outcome.census),
        Err(CoreError::DegenerateBeta { .. }) => (1.0, None),
        Err(e) => return Err(to_py_err(e)),
    };
    let d = PyDict::new_bound(py);
    d.set_item("n", n)?;
    d.set_item("r", r)?;
    d.set_item("beta", beta)?;
    d.set_item("norm_char_eq", norm_char_eq)?;
    d.set_item("norm_oracle", norm_oracle)?;
    d.set_item("rel_gap", (norm_char_eq - norm_oracle).abs() / norm_oracle)?;
    match &census {
        Some(c) => d.set_item("root_census", census_dict(py, c)?)?,
        None => d.set_item("root_census", py.None())?,
    }
    Ok(d.into())
}

/// Root census of the characteristic equation at (n, r, beta).
#[pyfunction(name = "root_census")]
fn root_census_py(py: Python<'_>, n: usize, r: f64, beta: f64) -> PyResult<Py<PyDict>> {
    let p = ExtremalParams::new(n, r, beta).map_err(to_py_err)?;
    let census = root_census(&p).map_err(to_py_err)?;
    Ok(census_dict(py, &census)?.into())
}

/// The extremal lower-triangular Toeplitz matrix as a list of rows.
#[pyfunction]
fn extremal_matrix(n: usize, r: f64, beta: f64) -> PyResult<Vec<Vec<Complex64>>> {
    let p = ExtremalParams::new(n, r, beta).map_err(to_py_err)?;
    Ok(mat_to_rows(&build_x(&p)))
}

/// Matrix of the model operator whose Blaschke product has the given
/// `(zero, multiplicity)` pairs, in the Malmquist-Walsh basis.
#[pyfunction(name = "model_matrix")]
fn model_matrix_py(zeros: Vec<(Complex64, usize)>) -> PyResult<Vec<Vec<Complex64>>> {
    let mut flat = Vec::new();
    for (z, mult) in zeros {
        if mult == 0 {
            return Err(PyValueError::new_err("zero multiplicity"));
        }
        flat.extend(std::iter::repeat_n(z, mult));
    }
    let b = BlaschkeProduct::new(flat).map_err(to_py_err)?;
    Ok(mat_to_rows(&model::model_matrix(&b).map_err(to_py_err)?))
}

/// Spectral norm (largest singular value) of a dense complex matrix.
#[pyfunction(name = "spectral_norm")]
fn spectral_norm_py(matrix: Vec<Vec<Complex64>>) -> PyResult<f64> {
    linalg::spectral_norm(&rows_to_mat(&matrix)?).map_err(to_py_err)
}

/// Norm of the resolvent (zeta I - M)^-1 of a square matrix.
#[pyfunction]
fn resolvent_norm(matrix: Vec<Vec<Complex64>>, zeta: Complex64) -> PyResult<f64> {
    let m = rows_to_mat(&matrix)?;
    linalg::spectral_norm(&linalg::resolvent(&m, zeta).map_err(to_py_err)?).map_err(to_py_err)
}

/// Resolvent-norm bound at `zeta` for the given spectrum.
///
/// `method` selects the estimate: "theorem1" (sharp), "theorem3"
/// (closed-form relaxation), or "prop2" (unimodular spectra).
#[pyfunction]
fn bound(
    py: Python<'_>,
    method: &str,
    spectrum: Vec<(Complex64, usize)>,
    zeta: Complex64,
) -> PyResult<Py<PyDict>> {
    let sigma = spectrum_from_pairs(spectrum)?;
    let report = match method {
        "theorem1" => bound_theorem1(&sigma, zeta),
        "theorem3" => bound_theorem3(&sigma, zeta),
        "prop2" => bound_prop2(&sigma, zeta),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown method {other:?}; expected theorem1, theorem3, or prop2"
            )))
        }
    }
    .map_err(to_py_err)?;
    Ok(report_dict(py, &report)?.into())
}

/// Supremum of d(1, conj(sigma) |zeta|) ||R(|zeta|, T)|| over contractions
/// with spectrum at pseudo-hyperbolic distance r from zeta, with the model
/// matrix attaining it.
#[pyfunction]
fn sup_resolvent(py: Python<'_>, zeta: Complex64, r: f64, n: usize) -> PyResult<Py<PyDict>> {
    let sup = sup_resolvent_r(zeta, r, n).map_err(to_py_err)?;
    let d = PyDict::new_bound(py);
    d.set_item("value", sup.value)?;
    d.set_item("lambda_max", sup.lambda_max)?;
    d.set_item("beta_max", sup.beta_max)?;
    d.set_item("certificate_gap", sup.certificate_gap)?;
    d.set_item("witness", mat_to_rows(&sup.witness))?;
    Ok(d.into())
}

/// Supremum of the boundary constant d(1, sigma) ||R(1, T)|| over the
/// family with an n1-fold eigenvalue at rho1 and an n2-fold eigenvalue
/// at -1, with the block witness resolvent attaining it.
#[pyfunction]
fn boundary_constant_sup(py: Python<'_>, n1: usize, n2: usize, rho1: f64) -> PyResult<Py<PyDict>> {
    let sup = ds_constant_sup(n1, n2, rho1).map_err(to_py_err)?;
    let d = PyDict::new_bound(py);
    d.set_item("value", sup.value)?;
    d.set_item("certificate_gap", sup.certificate_gap)?;
    d.set_item("witness", mat_to_rows(&sup.witness))?;
    Ok(d.into())
}

/// Relative gap between the sharp bound and the resolvent norm of the
/// extremal contraction with an n-fold eigenvalue at lambda, at real zeta.
#[pyfunction]
fn certify_sharpness(lam: f64, n: usize, zeta: f64) -> PyResult<f64> {
    certify_sharpness_theorem1(lam, n, zeta).map_err(to_py_err)
}

/// Randomized no-counterexample audit: samples `trials` random complex
/// Gaussian contractions of size n and checks every applicable bound.
#[pyfunction]
#[pyo3(signature = (n, trials = 1000, seed = 42))]
fn audit(py: Python<'_>, n: usize, trials: usize, seed: u64) -> PyResult<Py<PyDict>> {
    let summary = random_contraction_audit(n, trials, seed).map_err(to_py_err)?;
    let d = PyDict::new_bound(py);
    d.set_item("n", summary.n)?;
    d.set_item("trials", summary.trials)?;
    d.set_item("seed", summary.seed)?;
    d.set_item("violations", summary.violations)?;
    d.set_item("theorem1_max_ratio", summary.theorem1_max_ratio)?;
    d.set_item("theorem3_max_ratio", summary.theorem3_max_ratio)?;
    d.set_item("theorem1_tight_count", summary.theorem1_tight_count)?;
    d.set_item("prop2_applicable", summary.prop2_applicable)?;
    d.set_item("prop2_max_ratio", summary.prop2_max_ratio)?;
    Ok(d.into())
}

#[pymodule]
#[pyo3(name = "resolvent_bounds")]
fn resolvent_bounds_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(xnorm, m)?)?;
    m.add_function(wrap_pyfunction!(xnorm_report, m)?)?;
    m.add_function(wrap_pyfunction!(root_census_py, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(model_matrix_py, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_norm_py, m)?)?;
    m.add_function(wrap_pyfunction!(resolvent_norm, m)?)?;
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    m.add_function(wrap_pyfunction!(sup_resolvent, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_constant_sup, m)?)?;
    m.add_function(wrap_pyfunction!(certify_sharpness, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    Ok(())
}
