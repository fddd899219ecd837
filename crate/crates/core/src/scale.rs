//! Fourier scale transform on `(0, ∞)`.
//!
//! `Y(s,s*) = Y_L(s,1) + Y_U(−s*,1)` with the lower and upper partial
//! Mellin transforms `Y_L(s,c) = ∫_0^c y τ^{s−1}dτ` and
//! `Y_U(s,c) = ∫_c^∞ y τ^{s−1}dτ`.

use std::cell::Cell;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};
use crate::numeric::line_inverse;
use crate::quad::{integrate_endpoint_singular, integrate_half_line, OscHint, QuadratureConfig};
use crate::signal::ComplexFrequency;
use crate::special::{gamma, incomplete_gamma, zeta, GammaKind};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const MAX_SUM_TERMS: usize = 1_000_000;

/// The two halves of the scale transform at one frequency.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FstValue {
    /// `Y_L(s,1)`
    pub lower: Complex64,
    /// `Y_U(−s*,1)`
    pub upper: Complex64,
}

impl FstValue {
    pub fn total(&self) -> Complex64 {
        self.lower + self.upper
    }
}

/// A signal on `(0, ∞)` with partial Mellin transforms split at any `c > 0`.
pub trait PartialMellin {
    /// `∫_0^c y(τ) τ^{s−1} dτ`
    fn lower(&self, s: Complex64, c: f64) -> Result<Complex64>;
    /// `∫_c^∞ y(τ) τ^{s−1} dτ`
    fn upper(&self, s: Complex64, c: f64) -> Result<Complex64>;
    /// `y(t)` when the source knows it; used for derivative boundary terms.
    fn value(&self, t: f64) -> Option<Complex64>;
}

/// Scale-transform catalog atoms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScaleAtom {
    /// `δ(t − t0)`, `t0 > 0`
    Delta { t0: f64 },
    /// `e^{−at} u(t)`, `a > 0`
    Exp { a: f64 },
    /// `u(t)`
    Step,
    /// `t^a u(t)`
    Power { a: f64 },
    /// `u(t)/(e^t − 1)`
    Bose,
}

impl ScaleAtom {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ScaleAtom::Delta { t0 } if !(t0 > 0.0 && t0.is_finite()) => Err(GftError::Constraint(format!(
                "delta position must be positive, got {t0}"
            ))),
            ScaleAtom::Exp { a } if !(a > 0.0 && a.is_finite()) => Err(GftError::Constraint(format!(
                "exponential rate must be positive, got {a}"
            ))),
            ScaleAtom::Power { a } if !a.is_finite() => Err(GftError::Constraint("power must be finite".into())),
            _ => Ok(()),
        }
    }

    pub fn sample(&self, t: f64) -> Option<f64> {
        if t <= 0.0 {
            return Some(0.0);
        }
        match *self {
            ScaleAtom::Delta { t0 } => (t != t0).then_some(0.0),
            ScaleAtom::Exp { a } => Some((-a * t).exp()),
            ScaleAtom::Step => Some(1.0),
            ScaleAtom::Power { a } => Some(t.powf(a)),
            ScaleAtom::Bose => Some(1.0 / t.exp_m1()),
        }
    }

    fn lower(&self, s: Complex64, c: f64, abs_tol: f64) -> Result<Complex64> {
        match *self {
            ScaleAtom::Delta { t0 } => Ok(if t0 <= c { real_pow(t0, s - 1.0) } else { ZERO }),
            ScaleAtom::Exp { a } => Ok(real_pow(a, -s) * incomplete_gamma(GammaKind::Lower, s, a * c)?),
            ScaleAtom::Step => power_lower(s, 0.0, c),
            ScaleAtom::Power { a } => power_lower(s, a, c),
            ScaleAtom::Bose => {
                // Σ_ℓ ℓ^{−s}Γ_L(s,ℓc) = Γ(s)ζ(s) − Σ_ℓ ℓ^{−s}Γ_U(s,ℓc)
                if s.re <= 1.0 {
                    return Err(GftError::Region(format!(
                        "lower piece of 1/(e^t−1) needs Re{{s}} > 1, got {s}"
                    )));
                }
                let head = gamma(s)? * zeta(s)?;
                Ok(head - bose_upper_sum(s, c, abs_tol)?)
            }
        }
    }

    fn upper(&self, s: Complex64, c: f64, abs_tol: f64) -> Result<Complex64> {
        match *self {
            ScaleAtom::Delta { t0 } => Ok(if t0 > c { real_pow(t0, s - 1.0) } else { ZERO }),
            ScaleAtom::Exp { a } => Ok(real_pow(a, -s) * incomplete_gamma(GammaKind::Upper, s, a * c)?),
            ScaleAtom::Step => power_upper(s, 0.0, c),
            ScaleAtom::Power { a } => power_upper(s, a, c),
            ScaleAtom::Bose => bose_upper_sum(s, c, abs_tol),
        }
    }
}

fn real_pow(x: f64, s: Complex64) -> Complex64 {
    Complex64::new(x, 0.0).powc(s)
}

fn power_lower(s: Complex64, a: f64, c: f64) -> Result<Complex64> {
    let p = s + a;
    if p.re <= 0.0 {
        return Err(GftError::Region(format!(
            "lower piece of t^{a} needs Re{{s}} > {}, got {s}",
            -a
        )));
    }
    Ok(real_pow(c, p) / p)
}

fn power_upper(s: Complex64, a: f64, c: f64) -> Result<Complex64> {
    let p = s + a;
    if p.re >= 0.0 {
        return Err(GftError::Region(format!(
            "upper piece of t^{a} needs Re{{s}} < {}, got {s}",
            -a
        )));
    }
    Ok(-real_pow(c, p) / p)
}

/// `Σ_{ℓ≥1} ℓ^{−s} Γ_U(s, ℓc)`, stopped once a term drops below `abs_tol`.
fn bose_upper_sum(s: Complex64, c: f64, abs_tol: f64) -> Result<Complex64> {
    let mut sum = ZERO;
    for l in 1..=MAX_SUM_TERMS {
        let lf = l as f64;
        let term = real_pow(lf, -s) * incomplete_gamma(GammaKind::Upper, s, lf * c)?;
        sum += term;
        // Terms decrease once ℓc exceeds |s|; stop only in that regime.
        if term.norm() < abs_tol && lf * c > s.norm() + 1.0 {
            return Ok(sum);
        }
    }
    Err(GftError::convergence(sum, f64::INFINITY))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleTerm {
    pub coef: Complex64,
    pub atom: ScaleAtom,
}

/// Weighted sum of scale-transform atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleSpec {
    pub terms: Vec<ScaleTerm>,
    /// Truncation tolerance for the `1/(e^t−1)` series.
    #[serde(default = "default_sum_tol")]
    pub sum_tol: f64,
}

fn default_sum_tol() -> f64 {
    1e-14
}

impl Default for ScaleSpec {
    fn default() -> Self {
        ScaleSpec::zero()
    }
}

impl ScaleSpec {
    pub fn atom(atom: ScaleAtom) -> Self {
        ScaleSpec::zero().with(ONE, atom)
    }

    pub fn zero() -> Self {
        ScaleSpec {
            terms: Vec::new(),
            sum_tol: default_sum_tol(),
        }
    }

    pub fn with(mut self, coef: impl Into<Complex64>, atom: ScaleAtom) -> Self {
        self.terms.push(ScaleTerm {
            coef: coef.into(),
            atom,
        });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sum_tol > 0.0) {
            return Err(GftError::Constraint("sum_tol must be positive".into()));
        }
        for t in &self.terms {
            if !(t.coef.re.is_finite() && t.coef.im.is_finite()) {
                return Err(GftError::Constraint("coefficients must be finite".into()));
            }
            t.atom.validate()?;
        }
        Ok(())
    }

    fn fold(&self, mut piece: impl FnMut(&ScaleAtom) -> Result<Complex64>) -> Result<Complex64> {
        let mut acc = ZERO;
        for t in &self.terms {
            if t.coef != ZERO {
                acc += t.coef * piece(&t.atom)?;
            }
        }
        Ok(acc)
    }
}

impl PartialMellin for ScaleSpec {
    fn lower(&self, s: Complex64, c: f64) -> Result<Complex64> {
        check_split(c)?;
        self.fold(|a| a.lower(s, c, self.sum_tol))
    }

    fn upper(&self, s: Complex64, c: f64) -> Result<Complex64> {
        check_split(c)?;
        self.fold(|a| a.upper(s, c, self.sum_tol))
    }

    fn value(&self, t: f64) -> Option<Complex64> {
        let mut acc = ZERO;
        for term in &self.terms {
            acc += term.coef * term.atom.sample(t)?;
        }
        Some(acc)
    }
}

pub fn parse_scale_spec(text: &str) -> Result<ScaleSpec> {
    let spec: ScaleSpec = serde_json::from_str(text).map_err(|e| GftError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

fn check_split(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(GftError::Domain(format!(
            "split point must be finite and positive, got {c}"
        )))
    }
}

/// A callable signal on `(0, ∞)`, transformed by quadrature.
pub struct ScaleFunction<F> {
    f: F,
    cfg: QuadratureConfig,
}

impl<F: Fn(f64) -> Complex64> ScaleFunction<F> {
    pub fn new(f: F, cfg: QuadratureConfig) -> Self {
        ScaleFunction { f, cfg }
    }

    /// `c^s ∫_0^∞ y(c e^{∓u}) e^{∓su} du`, the partial integrals after
    /// `τ = c e^{∓u}`.
    fn log_integral(&self, s: Complex64, c: f64, side: Side) -> Result<Complex64> {
        check_split(c)?;
        let sign = match side {
            Side::Lower => -1.0,
            Side::Upper => 1.0,
        };
        let bad = Cell::new(None);
        let g = |u: f64| {
            let tau = c * (sign * u).exp();
            let v = if tau > 0.0 && tau.is_finite() {
                (self.f)(tau) * (s * (sign * u)).exp()
            } else {
                ZERO
            };
            if v.re.is_finite() && v.im.is_finite() {
                v
            } else {
                bad.set(Some(tau));
                ZERO
            }
        };
        let est = integrate_half_line(g, 0.0, OscHint::Angular(s.im), &self.cfg).map_err(|e| side.diverges(s, &e))?;
        if let Some(tau) = bad.get() {
            return Err(side.diverges(s, &format!("integrand not finite at τ = {tau}")));
        }
        Ok(real_pow(c, s) * est.value)
    }
}

#[derive(Clone, Copy, Debug)]
enum Side {
    Lower,
    Upper,
}

impl Side {
    fn diverges(self, s: Complex64, cause: &dyn fmt::Display) -> GftError {
        let name = match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        };
        GftError::Region(format!("{name} piece does not converge at s = {s}: {cause}"))
    }
}

impl<F: Fn(f64) -> Complex64> PartialMellin for ScaleFunction<F> {
    fn lower(&self, s: Complex64, c: f64) -> Result<Complex64> {
        self.log_integral(s, c, Side::Lower)
    }

    fn upper(&self, s: Complex64, c: f64) -> Result<Complex64> {
        self.log_integral(s, c, Side::Upper)
    }

    fn value(&self, t: f64) -> Option<Complex64> {
        Some((self.f)(t))
    }
}

/// `(Y_L(s,1), Y_U(−s*,1))` at `f`.
pub fn fst_forward<P: PartialMellin + ?Sized>(y: &P, f: ComplexFrequency) -> Result<FstValue> {
    Ok(FstValue {
        lower: y.lower(f.s(), 1.0)?,
        upper: y.upper(-f.s_conj(), 1.0)?,
    })
}

/// `(Y_L(s,c), Y_U(s,c))`; an infinite `c` gives the full Mellin transform
/// in the first slot.
pub fn mellin_partial<P: PartialMellin + ?Sized>(y: &P, s: Complex64, c: f64) -> Result<(Complex64, Complex64)> {
    if c == f64::INFINITY {
        return Ok((y.lower(s, 1.0)? + y.upper(s, 1.0)?, ZERO));
    }
    Ok((y.lower(s, c)?, y.upper(s, c)?))
}

/// `(∂^m/∂s^m Y, ∂^m/∂s*^m Y) = (∫_0^1 (ln t)^m y t^{s−1}dt, ∫_1^∞ (−ln t)^m y t^{−s*−1}dt)`.
pub fn fst_s_derivative<F>(y: F, f: ComplexFrequency, m: u32, cfg: &QuadratureConfig) -> Result<FstValue>
where
    F: Fn(f64) -> Complex64,
{
    // In u = ∓ln t both weights become u^m.
    let lower = ScaleFunction::new(|t: f64| y(t) * (-t.ln()).powi(m as i32), *cfg).lower(f.s(), 1.0)?;
    let upper = ScaleFunction::new(|t: f64| y(t) * t.ln().powi(m as i32), *cfg).upper(-f.s_conj(), 1.0)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(FstValue {
        lower: lower * sign,
        upper: upper * sign,
    })
}

/// Inverse scale transform at `τ` from the line `Re{s} = σ`.
///
/// `lower(s)` returns `Y_L(s,1)` and `upper(s)` returns `Y_U(−s*,1)`.
/// For `τ < 1` the lower line gives `y(τ)`, for `τ > 1` the upper one. At
/// `τ = 1` each line gives half of its one-sided limit; both are formed,
/// checked against each other and summed.
pub fn ifst_numeric<L, U>(lower: L, upper: U, sigma: f64, tau: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    L: Fn(Complex64) -> Result<Complex64>,
    U: Fn(Complex64) -> Result<Complex64>,
{
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(GftError::Domain(format!("τ must be finite and positive, got {tau}")));
    }
    if !sigma.is_finite() {
        return Err(GftError::Domain("σ must be finite".into()));
    }
    let t = -tau.ln();
    let low = || line_inverse(|w| lower(Complex64::new(sigma, w)), t, cfg).map(|v| v * tau.powf(-sigma));
    let up = || line_inverse(|w| upper(Complex64::new(sigma, w)), t, cfg).map(|v| v * tau.powf(sigma));
    if tau < 1.0 {
        return low();
    }
    if tau > 1.0 {
        return up();
    }
    let (a, b) = (low()?, up()?);
    let limit = 10.0 * cfg.abs_tol;
    if (a - b).norm() > limit {
        return Err(GftError::Consistency(format!(
            "lower and upper lines disagree at τ = 1: {} vs {} (limit {limit:e})",
            2.0 * a,
            2.0 * b
        )));
    }
    Ok(a + b)
}

/// `ifst_numeric` with both lines drawn from one signal.
pub fn ifst_of<P: PartialMellin + ?Sized>(y: &P, sigma: f64, tau: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    ifst_numeric(|s| y.lower(s, 1.0), |s| y.upper(-s.conj(), 1.0), sigma, tau, cfg)
}

/// Scale-transform properties.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum FstProperty {
    /// `y(at)`, `a > 0`
    Scale { a: f64 },
    /// `t^m y(t)`
    MulPower { m: f64 },
    /// `y'(t)`; `y1` is `y(1)`.
    Derivative { y1: Option<Complex64> },
    /// `t y'(t)`; `y1` is `y(1)`.
    TDerivative { y1: Option<Complex64> },
}

/// A signal built from a source by scale-transform properties.
#[derive(Clone)]
pub enum FstExpr {
    Source(Arc<dyn PartialMellin + Send + Sync>),
    Scale(f64, Box<FstExpr>),
    MulPower(f64, Box<FstExpr>),
    Derivative(Option<Complex64>, Box<FstExpr>),
}

impl fmt::Debug for FstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FstExpr::Source(_) => write!(f, "Source"),
            FstExpr::Scale(a, e) => write!(f, "Scale({a}, {e:?})"),
            FstExpr::MulPower(m, e) => write!(f, "MulPower({m}, {e:?})"),
            FstExpr::Derivative(y1, e) => write!(f, "Derivative({y1:?}, {e:?})"),
        }
    }
}

impl FstExpr {
    pub fn source<P: PartialMellin + Send + Sync + 'static>(p: P) -> Self {
        FstExpr::Source(Arc::new(p))
    }

    pub fn eval(&self, f: ComplexFrequency) -> Result<FstValue> {
        fst_forward(self, f)
    }

    /// `y(c)` for the derivative boundary term: from the source where known,
    /// otherwise the supplied `y(1)` when `c = 1`.
    fn boundary(&self, supplied: Option<Complex64>, c: f64) -> Result<Complex64> {
        if let Some(v) = self.value(c) {
            return Ok(v);
        }
        match supplied {
            Some(v) if c == 1.0 => Ok(v),
            _ => Err(GftError::Argument(format!(
                "derivative needs the boundary value y({c}); supply y(1) or a signal with known samples"
            ))),
        }
    }
}

impl PartialMellin for FstExpr {
    fn lower(&self, s: Complex64, c: f64) -> Result<Complex64> {
        match self {
            FstExpr::Source(p) => p.lower(s, c),
            FstExpr::Scale(a, e) => Ok(real_pow(*a, -s) * e.lower(s, a * c)?),
            FstExpr::MulPower(m, e) => e.lower(s + m, c),
            FstExpr::Derivative(y1, e) => {
                // ∫_0^c y' τ^{s−1} = y(c)c^{s−1} − (s−1)Y_L(s−1,c)
                let yc = e.boundary(*y1, c)?;
                Ok(yc * real_pow(c, s - 1.0) - (s - 1.0) * e.lower(s - 1.0, c)?)
            }
        }
    }

    fn upper(&self, s: Complex64, c: f64) -> Result<Complex64> {
        match self {
            FstExpr::Source(p) => p.upper(s, c),
            FstExpr::Scale(a, e) => Ok(real_pow(*a, -s) * e.upper(s, a * c)?),
            FstExpr::MulPower(m, e) => e.upper(s + m, c),
            FstExpr::Derivative(y1, e) => {
                let yc = e.boundary(*y1, c)?;
                Ok(-yc * real_pow(c, s - 1.0) - (s - 1.0) * e.upper(s - 1.0, c)?)
            }
        }
    }

    fn value(&self, t: f64) -> Option<Complex64> {
        match self {
            FstExpr::Source(p) => p.value(t),
            FstExpr::Scale(a, e) => e.value(a * t),
            FstExpr::MulPower(m, e) => e.value(t).map(|v| v * t.powf(*m)),
            FstExpr::Derivative(..) => None,
        }
    }
}

impl<P: PartialMellin + ?Sized> PartialMellin for Arc<P> {
    fn lower(&self, s: Complex64, c: f64) -> Result<Complex64> {
        (**self).lower(s, c)
    }

    fn upper(&self, s: Complex64, c: f64) -> Result<Complex64> {
        (**self).upper(s, c)
    }

    fn value(&self, t: f64) -> Option<Complex64> {
        (**self).value(t)
    }
}

/// Applies one property. Boundary values are looked up lazily, so a
/// missing `y(1)` surfaces as an argument error at evaluation time when the
/// source cannot supply it.
pub fn fst_apply_property(expr: FstExpr, op: FstProperty) -> Result<FstExpr> {
    Ok(match op {
        FstProperty::Scale { a } => {
            if !(a > 0.0 && a.is_finite()) {
                return Err(GftError::Constraint(format!("scale factor must be positive, got {a}")));
            }
            if a == 1.0 {
                expr
            } else {
                FstExpr::Scale(a, Box::new(expr))
            }
        }
        FstProperty::MulPower { m } => {
            if !m.is_finite() {
                return Err(GftError::Constraint("power must be finite".into()));
            }
            FstExpr::MulPower(m, Box::new(expr))
        }
        FstProperty::Derivative { y1 } => {
            check_boundary(&expr, y1)?;
            FstExpr::Derivative(y1, Box::new(expr))
        }
        FstProperty::TDerivative { y1 } => {
            check_boundary(&expr, y1)?;
            FstExpr::MulPower(1.0, Box::new(FstExpr::Derivative(y1, Box::new(expr))))
        }
    })
}

fn check_boundary(expr: &FstExpr, y1: Option<Complex64>) -> Result<()> {
    expr.boundary(y1, 1.0).map(|_| ())
}

/// `∫_{−∞}^{∞} e^{−e^{−t}} e^{−st} dt`, which equals `Γ(s+1)/s = Γ(s)` for
/// `Re{s} > 0`.
pub fn gumbel_laplace(s: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(GftError::Region(format!("the integral needs Re{{s}} > 0, got {s}")));
    }
    let right = integrate_half_line(
        |t| (-(-t).exp()).exp() * (-s * t).exp(),
        0.0,
        OscHint::Angular(s.im),
        cfg,
    )?;
    let left = integrate_half_line(|t| (-t.exp()).exp() * (s * t).exp(), 0.0, OscHint::Angular(s.im), cfg)?;
    Ok(right.value + left.value)
}

/// `∫_0^1 y(τ) τ^{s−1} dτ` directly in `τ`, for cross-checks.
pub fn lower_direct<F: Fn(f64) -> Complex64>(y: F, s: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    integrate_endpoint_singular(|t| y(t) * real_pow(t, s - 1.0), 0.0, 1.0, cfg).map(|e| e.value)
}
