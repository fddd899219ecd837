//! Python bindings for the transform toolkit.
//!
//! Signals, sequences and scale-transform inputs are passed as the same JSON
//! specs the `gft` command line reads; complex values map to Python
//! `complex`. Errors raise `gft.GftError` or one of its subclasses
//! `RegionError` and `ConvergenceError`.

use gft_core::special::{self, GammaKind};
use gft_core::{
    Complex64, ComplexFrequency, DifferenceProblem, DiscreteFrequency, GftError as CoreError, OdeProblem,
    QuadratureConfig, SequenceSpec, SignalSpec, WeightSpec,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(gft, GftError, PyException, "Base class of toolkit errors.");
create_exception!(
    gft,
    RegionError,
    GftError,
    "Evaluation outside the region of convergence."
);
create_exception!(
    gft,
    ConvergenceError,
    GftError,
    "A quadrature, series or limit did not converge."
);

fn py_err(e: CoreError) -> PyErr {
    let msg = e.to_string();
    match e {
        CoreError::Region(_) | CoreError::Pole(_) | CoreError::Divergent(_) => RegionError::new_err(msg),
        CoreError::Convergence { .. } | CoreError::Distributional(_) | CoreError::Consistency(_) => {
            ConvergenceError::new_err(msg)
        }
        _ => GftError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for gft_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn cfg(tol: f64) -> QuadratureConfig {
    QuadratureConfig::with_tol(tol, tol)
}

fn signal(spec: &str) -> PyResult<SignalSpec> {
    gft_core::parse_signal_spec(spec).py()
}

fn sequence(spec: &str) -> PyResult<SequenceSpec> {
    gft_core::parse_sequence_spec(spec).py()
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Transform `X(σ, ω)` of a signal spec, from the catalog or by quadrature.
#[pyfunction]
#[pyo3(signature = (spec, sigma, omega, numeric = false, p = 0.0, tol = 1e-8))]
fn gft(spec: &str, sigma: f64, omega: f64, numeric: bool, p: f64, tol: f64) -> PyResult<Complex64> {
    let x = signal(spec)?;
    let f = ComplexFrequency::new(sigma, omega).py()?;
    if numeric {
        let w = WeightSpec::new(p, 1.0).py()?;
        gft_core::gft_forward(&x.regular().py()?, f, w, &cfg(tol)).py()
    } else {
        let expr = gft_core::lookup_gft(&x, (p != 0.0).then_some(p)).py()?;
        gft_core::eval_spectrum(&expr, f).py()
    }
}

/// Closed-form transform of a signal spec as JSON.
#[pyfunction]
#[pyo3(signature = (spec, p = None))]
fn catalog(spec: &str, p: Option<f64>) -> PyResult<String> {
    to_json(&gft_core::lookup_gft(&signal(spec)?, p).py()?)
}

/// `x(t)` reconstructed from the catalog spectrum on the line `Re s = σ`.
#[pyfunction]
#[pyo3(signature = (spec, sigma, t, tol = 1e-8))]
fn igft(spec: &str, sigma: f64, t: f64, tol: f64) -> PyResult<Complex64> {
    let expr = gft_core::lookup_gft(&signal(spec)?, None).py()?;
    let spectrum = |s: f64, w: f64| gft_core::eval_spectrum(&expr, ComplexFrequency::new(s, w)?);
    gft_core::igft_reconstruct(spectrum, sigma, t, &cfg(tol)).py()
}

/// Discrete-time transform at `z = e^{σ + jΩ}` from the closed form.
#[pyfunction]
fn gdtft(spec: &str, sigma: f64, omega: f64) -> PyResult<Complex64> {
    let expr = gft_core::gdtft_closed_form(&sequence(spec)?).py()?;
    expr.eval(DiscreteFrequency::new(sigma, omega).py()?).py()
}

/// Solves `Σ a_k x^{(k)} = forcing` (coefficients highest order first) and
/// returns the solution spec as JSON.
#[pyfunction]
#[pyo3(signature = (coeffs, ics, forcing = None, route = "gft"))]
fn solve_ode(coeffs: Vec<Complex64>, ics: Vec<Complex64>, forcing: Option<&str>, route: &str) -> PyResult<String> {
    let forcing = forcing.map(signal).transpose()?.unwrap_or_default();
    let p = OdeProblem::new(coeffs, forcing, ics).py()?;
    let sol = match route {
        "gft" => gft_core::solve_ode_gft(&p),
        "ft" => gft_core::solve_ode_ft(&p),
        other => {
            return Err(PyValueError::new_err(format!(
                "route must be 'gft' or 'ft', got {other:?}"
            )))
        }
    }
    .py()?;
    to_json(&sol)
}

/// Samples `x[0..count]` of `Σ b_k x[n−k] = f[n]` with `x[−1], …, x[−K]` given.
#[pyfunction]
#[pyo3(signature = (coeffs, ics, count, forcing = None))]
fn solve_difference(
    coeffs: Vec<Complex64>,
    ics: Vec<Complex64>,
    count: u32,
    forcing: Option<&str>,
) -> PyResult<Vec<Complex64>> {
    let forcing = forcing.map(sequence).transpose()?.unwrap_or_default();
    let p = DifferenceProblem::new(coeffs, forcing, ics).py()?;
    Ok(gft_core::solve_difference(&p).py()?.samples(count))
}

/// `G(s) = [e^{jπ(s−1)} + 1]Γ(s)`
#[pyfunction]
fn generalized_gamma(s: Complex64) -> PyResult<Complex64> {
    special::generalized_gamma(s).py()
}

#[pyfunction]
fn gamma(s: Complex64) -> PyResult<Complex64> {
    special::gamma(s).py()
}

/// `Γ_L(s, x)` for `kind="lower"`, `Γ_U(s, x)` for `kind="upper"`.
#[pyfunction]
fn incomplete_gamma(kind: &str, s: Complex64, x: f64) -> PyResult<Complex64> {
    let kind = match kind {
        "lower" => GammaKind::Lower,
        "upper" => GammaKind::Upper,
        other => {
            return Err(PyValueError::new_err(format!(
                "kind must be 'lower' or 'upper', got {other:?}"
            )))
        }
    };
    special::incomplete_gamma(kind, s, x).py()
}

/// Fourier scale transform `Y_L(s, 1) + Y_U(−s*, 1)` of a scale spec.
#[pyfunction]
fn fst(spec: &str, sigma: f64, omega: f64) -> PyResult<Complex64> {
    let y = gft_core::parse_scale_spec(spec).py()?;
    Ok(gft_core::fst_forward(&y, ComplexFrequency::new(sigma, omega).py()?)
        .py()?
        .total())
}

/// Inverse scale transform at `τ > 0` along the line `Re s = σ`.
#[pyfunction]
#[pyo3(signature = (spec, sigma, tau, tol = 1e-8))]
fn ifst(spec: &str, sigma: f64, tau: f64, tol: f64) -> PyResult<Complex64> {
    let y = gft_core::parse_scale_spec(spec).py()?;
    gft_core::ifst_of(&y, sigma, tau, &cfg(tol)).py()
}

/// Damped moment `∫ y^m e^{−σ|y|}/(π(1+y²)) dy` of the Cauchy density.
#[pyfunction]
#[pyo3(signature = (m, sigma, tol = 1e-10))]
fn cauchy_damped_moment(m: u32, sigma: f64, tol: f64) -> PyResult<f64> {
    Ok(gft_core::cauchy_damped_moment(m, sigma, &cfg(tol)).py()?.value)
}

#[pymodule]
#[pyo3(name = "gft")]
fn gft_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("GftError", py.get_type::<GftError>())?;
    m.add("RegionError", py.get_type::<RegionError>())?;
    m.add("ConvergenceError", py.get_type::<ConvergenceError>())?;
    m.add_function(wrap_pyfunction!(gft, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(igft, m)?)?;
    m.add_function(wrap_pyfunction!(gdtft, m)?)?;
    m.add_function(wrap_pyfunction!(solve_ode, m)?)?;
    m.add_function(wrap_pyfunction!(solve_difference, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(incomplete_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(fst, m)?)?;
    m.add_function(wrap_pyfunction!(ifst, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_damped_moment, m)?)?;
    Ok(())
}
