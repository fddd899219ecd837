//! Damped moment-generating functions and damped Cauchy moments.
//!
//! `M(s,s*) = ∫_0^∞ f(−y)e^{−s*y}dy + ∫_0^∞ f(y)e^{−sy}dy`, which exists
//! for heavy-tailed densities whose classical moments do not.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};
use crate::quad::{integrate_half_line, OscHint, QuadratureConfig};
use crate::signal::ComplexFrequency;
use crate::special::factorial;

const NORMALIZATION_TOL: f64 = 1e-6;
const NEGATIVE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub order: u32,
    pub sigma: f64,
    pub value: f64,
    pub converged: bool,
}

/// `∫_0^∞ g(y) dy` for a real integrand, flagging negative density values.
fn half_line_real<G: Fn(f64) -> f64>(
    g: G,
    weight: impl Fn(f64) -> Complex64,
    osc: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, bool)> {
    let negative = Cell::new(false);
    let est = integrate_half_line(
        |y| {
            let p = g(y);
            if p < -NEGATIVE_TOL {
                negative.set(true);
            }
            weight(y) * p
        },
        0.0,
        OscHint::Angular(osc),
        cfg,
    )?;
    Ok((est.value, negative.get()))
}

/// Checks that `pdf` is nonnegative at the quadrature nodes and integrates
/// to one within `1e−6`.
pub fn check_pdf<P: Fn(f64) -> f64>(pdf: &P, cfg: &QuadratureConfig) -> Result<()> {
    let one = |_: f64| Complex64::new(1.0, 0.0);
    let (right, neg_r) = half_line_real(pdf, one, 0.0, cfg)?;
    let (left, neg_l) = half_line_real(|y| pdf(-y), one, 0.0, cfg)?;
    if neg_r || neg_l {
        return Err(GftError::Validation("density takes negative values".into()));
    }
    let total = (right + left).re;
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(GftError::Validation(format!("density integrates to {total}, not 1")));
    }
    Ok(())
}

/// The damped moment-generating function at `f`.
pub fn mgf_eval<P: Fn(f64) -> f64>(pdf: P, f: ComplexFrequency, cfg: &QuadratureConfig) -> Result<Complex64> {
    if f.sigma < 0.0 {
        return Err(GftError::Region(format!(
            "damping must be nonnegative, got σ = {}",
            f.sigma
        )));
    }
    check_pdf(&pdf, cfg)?;
    mgf_unchecked(&pdf, f, cfg)
}

fn mgf_unchecked<P: Fn(f64) -> f64>(pdf: &P, f: ComplexFrequency, cfg: &QuadratureConfig) -> Result<Complex64> {
    let (s, sc) = (f.s(), f.s_conj());
    let (neg, _) = half_line_real(|y| pdf(-y), |y| (-sc * y).exp(), f.omega, cfg)?;
    let (pos, _) = half_line_real(pdf, |y| (-s * y).exp(), f.omega, cfg)?;
    Ok(neg + pos)
}

/// Half-line moments and the truncated series
/// `Σ (s*)^m/m! 𝓜_{nm} + Σ (−s)^m/m! 𝓜_{pm}` compared with the direct
/// integrals on the disk `|s| ≤ radius`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MgfSeriesReport {
    pub order: u32,
    pub radius: f64,
    /// `𝓜_{nm} = ∫_0^∞ (−y)^m f(−y) dy`
    pub negative_moments: Vec<f64>,
    /// `𝓜_{pm} = ∫_0^∞ y^m f(y) dy`
    pub positive_moments: Vec<f64>,
    /// `(s, series, direct)` at the check points.
    pub points: Vec<(Complex64, Complex64, Complex64)>,
    pub max_abs_error: f64,
}

impl MgfSeriesReport {
    pub fn series(&self, f: ComplexFrequency) -> Complex64 {
        series_value(&self.negative_moments, &self.positive_moments, f)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_abs_error <= tol
    }
}

fn series_value(neg: &[f64], pos: &[f64], f: ComplexFrequency) -> Complex64 {
    let (s, sc) = (f.s(), f.s_conj());
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, (a, b)) in neg.iter().zip(pos).enumerate() {
        let k = factorial(m as u32);
        acc += sc.powu(m as u32) / k * *a + (-s).powu(m as u32) / k * *b;
    }
    acc
}

/// Moments up to order `max_order` and the series check on the right half
/// of the disk `|s| ≤ radius` (points at radius and radius/2, nine angles).
pub fn mgf_series_check<P: Fn(f64) -> f64>(
    pdf: P,
    radius: f64,
    max_order: u32,
    cfg: &QuadratureConfig,
) -> Result<MgfSeriesReport> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(GftError::Constraint(format!("radius must be positive, got {radius}")));
    }
    check_pdf(&pdf, cfg)?;
    let mut negative_moments = Vec::with_capacity(max_order as usize + 1);
    let mut positive_moments = Vec::with_capacity(max_order as usize + 1);
    for m in 0..=max_order {
        let k = m as i32;
        let (n, _) = half_line_real(|y| pdf(-y), |y| Complex64::new((-y).powi(k), 0.0), 0.0, cfg)?;
        let (p, _) = half_line_real(&pdf, |y| Complex64::new(y.powi(k), 0.0), 0.0, cfg)?;
        negative_moments.push(n.re);
        positive_moments.push(p.re);
    }
    let mut points = Vec::new();
    let mut max_abs_error = 0.0f64;
    for &r in &[radius, 0.5 * radius] {
        for i in 0..9 {
            let theta = -PI / 2.0 + PI * i as f64 / 8.0;
            let f = ComplexFrequency::new((r * theta.cos()).max(0.0), r * theta.sin())?;
            let series = series_value(&negative_moments, &positive_moments, f);
            let direct = mgf_unchecked(&pdf, f, cfg)?;
            max_abs_error = max_abs_error.max((series - direct).norm());
            points.push((f.s(), series, direct));
        }
    }
    Ok(MgfSeriesReport {
        order: max_order,
        radius,
        negative_moments,
        positive_moments,
        points,
        max_abs_error,
    })
}

/// `𝓜_m = ∫ y^m e^{−σ|y|}/(π(1+y²)) dy`: exactly zero for odd `m`, and
/// `(2/π)∫_0^∞ y^m e^{−σy}/(1+y²) dy` for even `m`.
pub fn cauchy_damped_moment(m: u32, sigma: f64, cfg: &QuadratureConfig) -> Result<MomentReport> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(GftError::Constraint(format!(
            "damping must be positive, got σ = {sigma}"
        )));
    }
    if m % 2 == 1 {
        return Ok(MomentReport {
            order: m,
            sigma,
            value: 0.0,
            converged: true,
        });
    }
    let k = m as i32;
    let g = |y: f64| Complex64::new(y.powi(k) * (-sigma * y).exp() / (1.0 + y * y), 0.0);
    let (value, converged) = match integrate_half_line(g, 0.0, OscHint::None, cfg) {
        Ok(est) => (est.value.re, true),
        Err(GftError::Convergence { estimate_re, .. }) if estimate_re.is_finite() => (estimate_re, false),
        Err(e) => return Err(e),
    };
    Ok(MomentReport {
        order: m,
        sigma,
        value: 2.0 / PI * value,
        converged,
    })
}
