//! Quadrature-based transforms: forward and inverse GFT with polynomial and
//! stretched-exponential weights, the `σ → 0` and `p → 0` limits, periodic
//! and two-dimensional transforms, damped cosine and wavelet pairs.

use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};
use crate::quad::{
    integrate, integrate_endpoint_singular, integrate_half_line, integrate_real_line, richardson_diagonal, Estimate,
    OscHint, QuadratureConfig,
};
use crate::signal::{ComplexFrequency, PeriodicSignal, TimeDomain};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Weight `|t|^p e^{−σ|t|^q}`; `(0, 1)` is the plain transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub p: f64,
    pub q: f64,
}

impl Default for WeightSpec {
    fn default() -> Self {
        WeightSpec { p: 0.0, q: 1.0 }
    }
}

impl WeightSpec {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let w = WeightSpec { p, q };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 0.0 && self.p.is_finite() && self.q >= 0.0 && self.q.is_finite()) {
            return Err(GftError::Constraint(format!(
                "weight exponents must satisfy p >= 0 and q >= 0, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        Ok(())
    }

    /// Weight at `t ≥ 0`.
    fn at(&self, t: f64, sigma: f64) -> f64 {
        let poly = if self.p == 0.0 { 1.0 } else { t.powf(self.p) };
        let damp = if self.q == 1.0 { t } else { t.powf(self.q) };
        poly * (-sigma * damp).exp()
    }
}

/// Records the first sample point where an integrand was not finite.
struct Guard(Cell<Option<f64>>);

impl Guard {
    fn new() -> Self {
        Guard(Cell::new(None))
    }

    fn pass(&self, v: Complex64, t: f64) -> Complex64 {
        if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            if self.0.get().is_none() {
                self.0.set(Some(t));
            }
            ZERO
        }
    }

    fn check(&self) -> Result<()> {
        match self.0.get() {
            Some(t) => Err(GftError::Domain(format!("integrand is not finite at {t}"))),
            None => Ok(()),
        }
    }
}

/// `∫_0^reach h` (or `∫_0^∞` when `reach` is infinite).
fn half_line<F: FnMut(f64) -> Complex64>(
    mut h: F,
    reach: f64,
    osc: OscHint,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if reach <= 0.0 {
        return Ok(Estimate {
            value: ZERO,
            error: 0.0,
        });
    }
    if reach.is_infinite() {
        return integrate_half_line(h, 0.0, osc, cfg);
    }
    let head = osc.panel_cap().map_or(1.0, |c| (4.0 * c).min(1.0)).min(reach);
    let first = integrate_endpoint_singular(&mut h, 0.0, head, cfg)?;
    if head >= reach {
        return Ok(first);
    }
    Ok(first + integrate(&mut h, head, reach, osc.panel_cap(), cfg)?)
}

fn reach_of(lo: f64, hi: f64) -> f64 {
    lo.abs().max(hi.abs())
}

/// Weighted transform `∫ x(t)|t|^p e^{−σ|t|^q} e^{−jωt} dt`.
///
/// Both half-lines are folded onto `[0, ∞)`, so an odd singularity such as
/// `1/t` cancels between the two sides before it reaches the quadrature.
pub fn gft_forward<X: TimeDomain + ?Sized>(
    x: &X,
    f: ComplexFrequency,
    w: WeightSpec,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    w.validate()?;
    cfg.validate()?;
    let (lo, hi) = x.support();
    let guard = Guard::new();
    let h = |t: f64| {
        let e = Complex64::from_polar(1.0, -f.omega * t);
        let v = (x.value(t) * e + x.value(-t) * e.conj()) * w.at(t, f.sigma);
        guard.pass(v, t)
    };
    let est = half_line(h, reach_of(lo, hi), OscHint::Angular(f.omega), cfg)?;
    guard.check()?;
    Ok(est.value)
}

/// The complementary and Laplace half-line integrals, separately.
pub fn clt_lt_split<X: TimeDomain + ?Sized>(
    x: &X,
    f: ComplexFrequency,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    cfg.validate()?;
    let (lo, hi) = x.support();
    let guard = Guard::new();
    let osc = OscHint::Angular(f.omega);
    let clt = half_line(
        |t| guard.pass(x.value(-t) * (-f.s_conj() * t).exp(), -t),
        (-lo).max(0.0),
        osc,
        cfg,
    )?;
    let lt = half_line(
        |t| guard.pass(x.value(t) * (-f.s() * t).exp(), t),
        hi.max(0.0),
        osc,
        cfg,
    )?;
    guard.check()?;
    Ok((clt.value, lt.value))
}

/// `x(t) = e^{σ|t|}/(2π) ∫ X(σ, ω) e^{jωt} dω`.
///
/// `spectrum` is called as `spectrum(σ, ω)`.
pub fn igft_reconstruct<S>(spectrum: S, sigma: f64, t: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    S: Fn(f64, f64) -> Result<Complex64>,
{
    cfg.validate()?;
    let failure = Cell::new(None);
    let guard = Guard::new();
    let h = |w: f64| {
        let e = Complex64::from_polar(1.0, w * t);
        let v = match (spectrum(sigma, w), spectrum(sigma, -w)) {
            (Ok(a), Ok(b)) => a * e + b * e.conj(),
            (Err(err), _) | (_, Err(err)) => {
                if failure.take().is_none() {
                    failure.set(Some(err));
                }
                ZERO
            }
        };
        guard.pass(v, w)
    };
    let est = integrate_half_line(h, 0.0, OscHint::Angular(t), cfg)?;
    if let Some(err) = failure.take() {
        return Err(err);
    }
    guard.check()?;
    Ok(est.value * (sigma * t.abs()).exp() / (2.0 * PI))
}

/// Synthesis from one part on its own half-line: the Laplace part `X(s)`
/// for `t > 0` and the complementary part `𝔛(s*)` for `t < 0`.
///
/// At `t = 0` each one-sided inverse converges to half the jump, so the
/// value is doubled and the Laplace branch gives `x(0⁺)`; use
/// [`igft_split_at_zero`] for both one-sided values.
pub fn igft_split<L, C>(lt: L, clt: C, sigma: f64, t: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    L: Fn(Complex64) -> Result<Complex64>,
    C: Fn(Complex64) -> Result<Complex64>,
{
    if t >= 0.0 {
        let v = line_inverse(|w| lt(Complex64::new(sigma, w)), t, cfg)?;
        let scale = if t == 0.0 { 2.0 } else { (sigma * t).exp() };
        Ok(v * scale)
    } else {
        let v = line_inverse(|w| clt(Complex64::new(sigma, -w)), t, cfg)?;
        Ok(v * (-sigma * t).exp())
    }
}

/// `(x(0⁺), x(0⁻))` from the two one-sided syntheses.
pub fn igft_split_at_zero<L, C>(lt: L, clt: C, sigma: f64, cfg: &QuadratureConfig) -> Result<(Complex64, Complex64)>
where
    L: Fn(Complex64) -> Result<Complex64>,
    C: Fn(Complex64) -> Result<Complex64>,
{
    let right = line_inverse(|w| lt(Complex64::new(sigma, w)), 0.0, cfg)? * 2.0;
    let left = line_inverse(|w| clt(Complex64::new(sigma, -w)), 0.0, cfg)? * 2.0;
    Ok((right, left))
}

/// Value at `t = 0` from both syntheses, with a consistency check.
pub fn igft_value_at_zero<L, C>(lt: L, clt: C, sigma: f64, tol: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    L: Fn(Complex64) -> Result<Complex64>,
    C: Fn(Complex64) -> Result<Complex64>,
{
    let (right, left) = igft_split_at_zero(lt, clt, sigma, cfg)?;
    if (right - left).norm() > tol * (1.0 + right.norm()) {
        return Err(GftError::Consistency(format!(
            "one-sided syntheses disagree at t = 0: {right} from the right, {left} from the left"
        )));
    }
    Ok((right + left) / 2.0)
}

/// `(1/2π) ∫ F(ω) e^{jωt} dω` by folding onto `ω ≥ 0`.
pub(crate) fn line_inverse<F>(spec: F, t: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    cfg.validate()?;
    let failure = Cell::new(None);
    let h = |w: f64| {
        let e = Complex64::from_polar(1.0, w * t);
        match (spec(w), spec(-w)) {
            (Ok(a), Ok(b)) => a * e + b * e.conj(),
            (Err(err), _) | (_, Err(err)) => {
                if failure.take().is_none() {
                    failure.set(Some(err));
                }
                ZERO
            }
        }
    };
    let est = integrate_half_line(h, 0.0, OscHint::Angular(t), cfg)?;
    if let Some(err) = failure.take() {
        return Err(err);
    }
    Ok(est.value / (2.0 * PI))
}

/// Ladder `σ_k = σ0·2^{−k}` used by [`ft_limit_numeric`].
pub fn sigma_ladder(sigma0: f64, levels: usize) -> Vec<f64> {
    (0..levels).map(|k| sigma0 * 0.5f64.powi(k as i32)).collect()
}

/// `σ → 0` limit of the transform at `ω` by Richardson extrapolation on a
/// geometric ladder `σ0·2^{−k}`, `k < levels`.
///
/// When the extrapolants grow monotonically by more than a factor 10 the
/// limit is a distribution, reported as [`GftError::Distributional`].
pub fn ft_limit_numeric<X: TimeDomain + ?Sized>(
    x: &X,
    omega: f64,
    sigma0: f64,
    levels: usize,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if !(sigma0 > 0.0 && sigma0.is_finite()) {
        return Err(GftError::Constraint(format!("ladder start must be > 0, got {sigma0}")));
    }
    if levels < 2 {
        return Err(GftError::Constraint("the sigma ladder needs at least 2 levels".into()));
    }
    let values = sigma_ladder(sigma0, levels)
        .into_iter()
        .map(|s| gft_forward(x, ComplexFrequency::new(s, omega)?, WeightSpec::default(), cfg))
        .collect::<Result<Vec<_>>>()?;
    let diag = richardson_diagonal(&values, 2.0);
    let norms: Vec<f64> = diag.iter().map(|d| d.norm()).collect();
    let growing = norms.windows(2).all(|w| w[1] > w[0]);
    if growing && norms[norms.len() - 1] > 10.0 * norms[0] {
        return Err(GftError::Distributional(format!(
            "extrapolants grow from {:.3e} to {:.3e} as sigma -> 0 at omega = {omega}",
            norms[0],
            norms[norms.len() - 1]
        )));
    }
    Ok(diag[diag.len() - 1])
}

/// Rational (Bulirsch–Stoer) extrapolation of `ys` sampled at `xs` to `x = 0`.
pub fn rational_extrapolate(xs: &[f64], ys: &[Complex64]) -> Result<Complex64> {
    let n = xs.len();
    if n == 0 || ys.len() != n {
        return Err(GftError::Argument(
            "extrapolation needs matching, non-empty samples".into(),
        ));
    }
    // table[i][k], with the implicit column k = −1 equal to zero
    let mut table: Vec<Vec<Complex64>> = vec![vec![ZERO; n]; n];
    for i in 0..n {
        table[i][0] = ys[i];
    }
    for k in 1..n {
        for i in k..n {
            let diff = table[i][k - 1] - table[i - 1][k - 1];
            let prev = if k >= 2 { table[i - 1][k - 2] } else { ZERO };
            let gap = table[i][k - 1] - prev;
            let den = if gap == ZERO {
                Complex64::new(xs[i - k] / xs[i] - 1.0, 0.0)
            } else {
                (1.0 - diff / gap) * (xs[i - k] / xs[i]) - 1.0
            };
            table[i][k] = if den == ZERO {
                table[i][k - 1]
            } else {
                table[i][k - 1] + diff / den
            };
        }
    }
    Ok(table[n - 1][n - 1])
}

/// `p → 0` limit of the `|t|^p`-weighted transform at `σ = 0`, by rational
/// extrapolation over the supplied ladder of `p` values.
pub fn weighted_limit_p<X: TimeDomain + ?Sized>(
    x: &X,
    omega: f64,
    p_ladder: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if p_ladder.len() < 2 || p_ladder.iter().any(|&p| !(p > 0.0)) {
        return Err(GftError::Constraint(
            "the p ladder needs at least 2 positive values".into(),
        ));
    }
    let f = ComplexFrequency::new(0.0, omega)?;
    let values = p_ladder
        .iter()
        .map(|&p| gft_forward(x, f, WeightSpec::new(p, 1.0)?, cfg))
        .collect::<Result<Vec<_>>>()?;
    rational_extrapolate(p_ladder, &values)
}

/// Transform of a periodic signal from one period, valid for `σ > 0`:
/// `e^{−s*T}/(1−e^{−s*T}) ∫_0^T x e^{s*t} + 1/(1−e^{−sT}) ∫_0^T x e^{−st}`.
pub fn periodic_gft(px: &PeriodicSignal, f: ComplexFrequency, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    if f.sigma <= 0.0 {
        return Err(GftError::Region(format!(
            "periodic transform needs Re{{s}} > 0, got sigma = {}",
            f.sigma
        )));
    }
    let period = px.period();
    let (s, sc) = (f.s(), f.s_conj());
    let cap = OscHint::Angular(f.omega).panel_cap();
    let guard = Guard::new();
    let i_clt = integrate(
        |t| guard.pass(px.period_value(t) * (sc * t).exp(), t),
        0.0,
        period,
        cap,
        cfg,
    )?;
    let i_lt = integrate(
        |t| guard.pass(px.period_value(t) * (-s * t).exp(), t),
        0.0,
        period,
        cap,
        cfg,
    )?;
    guard.check()?;
    let ec = (-sc * period).exp();
    let el = (-s * period).exp();
    Ok(ec / (1.0 - ec) * i_clt.value + i_lt.value / (1.0 - el))
}

/// Two-dimensional transform with damping `e^{−σ(|x1|+|x2|)}`, by iterated
/// quadrature.
pub fn md_gft_2d<G>(g: G, sigma: f64, omega1: f64, omega2: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    G: Fn(f64, f64) -> Complex64,
{
    cfg.validate()?;
    let inner_f = ComplexFrequency::new(sigma, omega2)?;
    let failure = Cell::new(None);
    let inner = |x1: f64| -> Complex64 {
        let row = |x2: f64| g(x1, x2);
        match gft_forward(&row, inner_f, WeightSpec::default(), cfg) {
            Ok(v) => v,
            Err(e) => {
                if failure.take().is_none() {
                    failure.set(Some(e));
                }
                ZERO
            }
        }
    };
    let h = |t: f64| {
        let e = Complex64::from_polar(1.0, -omega1 * t);
        (inner(t) * e + inner(-t) * e.conj()) * (-sigma * t).exp()
    };
    let est = integrate_half_line(h, 0.0, OscHint::Angular(omega1), cfg)?;
    if let Some(err) = failure.take() {
        return Err(err);
    }
    Ok(est.value)
}

/// `∫ x1(τ) x2(t − τ) dτ`.
pub fn time_convolution<X1, X2>(x1: &X1, x2: &X2, t: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    X1: TimeDomain + ?Sized,
    X2: TimeDomain + ?Sized,
{
    let guard = Guard::new();
    let h = |tau: f64| guard.pass(x1.value(tau) * x2.value(t - tau), tau);
    let est = integrate_real_line(h, OscHint::None, cfg)?;
    guard.check()?;
    Ok(est.value)
}

/// `(1/2π) ∫ X1(ν) X2(ω − ν) dν`.
pub fn frequency_convolution<F1, F2>(x1: F1, x2: F2, omega: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F1: Fn(f64) -> Result<Complex64>,
    F2: Fn(f64) -> Result<Complex64>,
{
    let failure = Cell::new(None);
    let h = |nu: f64| match (x1(nu), x2(omega - nu)) {
        (Ok(a), Ok(b)) => a * b,
        (Err(e), _) | (_, Err(e)) => {
            if failure.take().is_none() {
                failure.set(Some(e));
            }
            ZERO
        }
    };
    let est = integrate_real_line(h, OscHint::None, cfg)?;
    if let Some(err) = failure.take() {
        return Err(err);
    }
    Ok(est.value / (2.0 * PI))
}

fn positive_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(GftError::Region(format!("damping needs sigma > 0, got {sigma}")))
    }
}

/// Damped cosine transform `√(2/π) ∫_0^∞ x(t) e^{−σt} cos(ωt) dt`.
pub fn damped_fct<X: TimeDomain + ?Sized>(x: &X, sigma: f64, omega: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    positive_sigma(sigma)?;
    cfg.validate()?;
    let (_, hi) = x.support();
    let guard = Guard::new();
    let h = |t: f64| guard.pass(x.value(t) * ((-sigma * t).exp() * (omega * t).cos()), t);
    let est = half_line(h, hi.max(0.0), OscHint::Angular(omega), cfg)?;
    guard.check()?;
    Ok(est.value * (2.0 / PI).sqrt())
}

/// Inverse damped cosine transform at `t ≥ 0`:
/// `√(2/π) e^{σt} ∫_0^∞ X_c(ω) cos(ωt) dω`.
pub fn damped_ifct<S>(xc: S, sigma: f64, t: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    S: Fn(f64) -> Result<Complex64>,
{
    positive_sigma(sigma)?;
    if t < 0.0 {
        return Err(GftError::Domain(format!(
            "the cosine pair lives on t >= 0, got t = {t}"
        )));
    }
    let failure = Cell::new(None);
    let h = |w: f64| match xc(w) {
        Ok(v) => v * (w * t).cos(),
        Err(e) => {
            if failure.take().is_none() {
                failure.set(Some(e));
            }
            ZERO
        }
    };
    let est = integrate_half_line(h, 0.0, OscHint::Angular(t), cfg)?;
    if let Some(err) = failure.take() {
        return Err(err);
    }
    Ok(est.value * (2.0 / PI).sqrt() * (sigma * t).exp())
}

type Mother = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Mother wavelet with a lazily computed admissibility constant
/// `Cψ = ∫ |Ψ(ω)|²/|ω| dω`.
#[derive(Clone)]
pub struct WaveletSpec {
    name: String,
    mother: Mother,
    c_psi: Arc<OnceLock<Result<f64>>>,
}

impl fmt::Debug for WaveletSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WaveletSpec").field("name", &self.name).finish()
    }
}

impl WaveletSpec {
    pub fn new(name: impl Into<String>, mother: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        WaveletSpec {
            name: name.into(),
            mother: Arc::new(mother),
            c_psi: Arc::new(OnceLock::new()),
        }
    }

    /// Unit-energy Mexican hat `(2/(√3 π^{1/4}))(1 − t²)e^{−t²/2}`.
    pub fn mexican_hat() -> Self {
        let norm = 2.0 / (3f64.sqrt() * PI.powf(0.25));
        WaveletSpec::new("mexican_hat", move |t: f64| {
            if t.abs() > 60.0 {
                return ZERO;
            }
            Complex64::new(norm * (1.0 - t * t) * (-0.5 * t * t).exp(), 0.0)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mother(&self, t: f64) -> Complex64 {
        (self.mother)(t)
    }

    /// `|a|^{−1/2} ψ((t − b)/a)`
    pub fn daughter(&self, a: f64, b: f64, t: f64) -> Complex64 {
        self.mother((t - b) / a) / a.abs().sqrt()
    }

    /// Fourier transform of the mother wavelet.
    pub fn spectrum(&self, omega: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
        let h = |t: f64| self.mother(t) * Complex64::from_polar(1.0, -omega * t);
        Ok(integrate_real_line(h, OscHint::Angular(omega), cfg)?.value)
    }

    /// `Cψ`, computed once.
    pub fn admissibility(&self) -> Result<f64> {
        self.c_psi.get_or_init(|| self.compute_admissibility()).clone()
    }

    fn compute_admissibility(&self) -> Result<f64> {
        let cfg = QuadratureConfig::with_tol(1e-9, 1e-12);
        let at_zero = self.spectrum(0.0, &cfg)?;
        let energy = integrate_real_line(|t| Complex64::new(self.mother(t).norm_sqr(), 0.0), OscHint::None, &cfg)?
            .value
            .re;
        if at_zero.norm() > 1e-7 * energy.sqrt().max(1e-300) {
            return Err(GftError::Admissibility(format!(
                "wavelet '{}' has nonzero mean ({at_zero}), so the admissibility integral diverges",
                self.name
            )));
        }
        let failure = Cell::new(None);
        let h = |w: f64| {
            if w == 0.0 {
                return ZERO;
            }
            match (self.spectrum(w, &cfg), self.spectrum(-w, &cfg)) {
                (Ok(a), Ok(b)) => Complex64::new((a.norm_sqr() + b.norm_sqr()) / w, 0.0),
                (Err(e), _) | (_, Err(e)) => {
                    if failure.take().is_none() {
                        failure.set(Some(e));
                    }
                    ZERO
                }
            }
        };
        let c = integrate_half_line(h, 0.0, OscHint::None, &cfg)?.value.re;
        if let Some(err) = failure.take() {
            return Err(err);
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(GftError::Admissibility(format!(
                "wavelet '{}' has admissibility constant {c}",
                self.name
            )));
        }
        Ok(c)
    }
}

/// Damped wavelet coefficient `∫ x(t) e^{−σ|t|} ψ*_{a,b}(t) dt`; zero at `a = 0`.
pub fn damped_cwt<X: TimeDomain + ?Sized>(
    x: &X,
    sigma: f64,
    a: f64,
    b: f64,
    psi: &WaveletSpec,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if a == 0.0 {
        return Ok(ZERO);
    }
    // t = b + a·u
    let guard = Guard::new();
    let h = |u: f64| {
        let t = b + a * u;
        guard.pass(x.value(t) * (-sigma * t.abs()).exp() * psi.mother(u).conj(), t)
    };
    let est = integrate_real_line(h, OscHint::None, cfg)?;
    guard.check()?;
    Ok(est.value * a.abs().sqrt())
}

/// Discretization of the inverse wavelet integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CwtGrid {
    pub a_min: f64,
    pub a_max: f64,
    /// Scales, logarithmically spaced, per sign of `a`.
    pub n_a: usize,
    /// Shifts per scale, linearly spaced over `t ± half_width·|a|`.
    pub n_b: usize,
    pub half_width: f64,
}

impl Default for CwtGrid {
    fn default() -> Self {
        CwtGrid {
            a_min: 1.0 / 64.0,
            a_max: 64.0,
            n_a: 64,
            n_b: 64,
            half_width: 6.0,
        }
    }
}

/// Inverse damped wavelet transform at `t`:
/// `e^{σ|t|}/Cψ ∫∫ X(a,b) ψ_{a,b}(t) db da/a²`, over both signs of `a`
/// on the grid. `coeffs` is called as `coeffs(a, b)`.
pub fn damped_icwt<C>(coeffs: C, sigma: f64, t: f64, psi: &WaveletSpec, grid: &CwtGrid) -> Result<Complex64>
where
    C: Fn(f64, f64) -> Result<Complex64>,
{
    if !(grid.a_min > 0.0 && grid.a_max > grid.a_min && grid.n_a >= 2 && grid.n_b >= 2 && grid.half_width > 0.0) {
        return Err(GftError::Constraint(format!("invalid wavelet grid {grid:?}")));
    }
    let c_psi = psi.admissibility()?;
    let (l0, l1) = (grid.a_min.ln(), grid.a_max.ln());
    let dl = (l1 - l0) / (grid.n_a - 1) as f64;
    let mut total = ZERO;
    for i in 0..grid.n_a {
        let a_abs = (l0 + dl * i as f64).exp();
        let db = 2.0 * grid.half_width * a_abs / (grid.n_b - 1) as f64;
        let wa = if i == 0 || i == grid.n_a - 1 { 0.5 } else { 1.0 };
        for sign in [1.0, -1.0] {
            let a = sign * a_abs;
            let mut inner = ZERO;
            for j in 0..grid.n_b {
                let b = t - grid.half_width * a_abs + db * j as f64;
                let wb = if j == 0 || j == grid.n_b - 1 { 0.5 } else { 1.0 };
                inner += coeffs(a, b)? * psi.daughter(a, b, t) * wb;
            }
            // da/a² = d(ln a)/a
            total += inner * db * wa * dl / a_abs;
        }
    }
    Ok(total * (sigma * t.abs()).exp() / c_psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{PeriodSource, SampledSignal, SignalAtom, SignalSpec};
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn f(sigma: f64, omega: f64) -> ComplexFrequency {
        ComplexFrequency::new(sigma, omega).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::with_tol(1e-10, 1e-12)
    }

    fn abs_exp(t: f64) -> Complex64 {
        c((-t.abs()).exp())
    }

    fn step(t: f64) -> Complex64 {
        c(if t >= 0.0 { 1.0 } else { 0.0 })
    }

    #[test]
    fn forward_examples() {
        let v = gft_forward(&abs_exp, f(0.5, 1.0), WeightSpec::default(), &cfg()).unwrap();
        assert!((v - c(3.0 / 3.25)).norm() < 1e-9, "{v}");
        let one = |_t: f64| c(1.0);
        let v = gft_forward(&one, f(1.0, 0.0), WeightSpec::default(), &cfg()).unwrap();
        assert!((v - c(2.0)).norm() < 1e-9, "{v}");
        let inv = |t: f64| c(1.0 / t);
        let v = gft_forward(&inv, f(0.0, 2.0), WeightSpec::new(1.0, 1.0).unwrap(), &cfg()).unwrap();
        assert!((v - Complex64::new(0.0, -1.0)).norm() < 1e-8, "{v}");
    }

    #[test]
    fn weighted_power_matches_gamma_form() {
        // |t|^p e^{−σ|t|} applied to 1/t: Γ(p)[1/s^p − 1/(s*)^p]
        let inv = |t: f64| c(1.0 / t);
        let p = 0.5;
        let pt = f(0.7, 1.3);
        let v = gft_forward(&inv, pt, WeightSpec::new(p, 1.0).unwrap(), &cfg()).unwrap();
        let g = crate::special::gamma(c(p)).unwrap();
        let expected = g * (1.0 / pt.s().powf(p) - 1.0 / pt.s_conj().powf(p));
        assert!((v - expected).norm() < 1e-8, "{v} vs {expected}");
    }

    #[test]
    fn stretched_damping_handles_fast_growth() {
        // e^{t²/2} damped by e^{−|t|²}: ∫ e^{−t²/2} = √(2π) at ω = 0
        let grow = |t: f64| c((0.5 * t * t).exp());
        let v = gft_forward(&grow, f(1.0, 0.0), WeightSpec::new(0.0, 2.0).unwrap(), &cfg()).unwrap();
        assert!((v - c((2.0 * PI).sqrt())).norm() < 1e-8, "{v}");
    }

    #[test]
    fn split_examples() {
        let (a, b) = clt_lt_split(&step, f(1.0, 0.0), &cfg()).unwrap();
        assert!(a.norm() < 1e-12 && (b - c(1.0)).norm() < 1e-9);
        let rstep = |t: f64| c(if t <= 0.0 { 1.0 } else { 0.0 });
        let (a, b) = clt_lt_split(&rstep, f(1.0, 0.0), &cfg()).unwrap();
        assert!((a - c(1.0)).norm() < 1e-9 && b.norm() < 1e-12);
        let (a, b) = clt_lt_split(&abs_exp, f(0.5, 0.0), &cfg()).unwrap();
        assert!((a - c(2.0 / 3.0)).norm() < 1e-9 && (b - c(2.0 / 3.0)).norm() < 1e-9);
        let total = gft_forward(&abs_exp, f(0.5, 0.7), WeightSpec::default(), &cfg()).unwrap();
        let (a, b) = clt_lt_split(&abs_exp, f(0.5, 0.7), &cfg()).unwrap();
        assert!((a + b - total).norm() < 2e-11);
    }

    #[test]
    fn sampled_signal_uses_support() {
        let s = SampledSignal::new(-1.0, 0.5, vec![c(1.0); 5]).unwrap();
        // box on [−1, 1] at ω = 0, σ = 0: area 2
        let v = gft_forward(&s, f(0.0, 0.0), WeightSpec::default(), &cfg()).unwrap();
        assert!((v - c(2.0)).norm() < 1e-9, "{v}");
    }

    #[test]
    fn non_finite_signal_is_reported() {
        let bad = |t: f64| c(if t > 1.0 { f64::NAN } else { 0.0 });
        assert!(matches!(
            gft_forward(&bad, f(1.0, 0.0), WeightSpec::default(), &cfg()),
            Err(GftError::Domain(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        let spec = |s: f64, w: f64| {
            let (sp, sc) = (Complex64::new(s, w), Complex64::new(s, -w));
            Ok(1.0 / (sc + 1.0) + 1.0 / (sp + 1.0))
        };
        let v = igft_reconstruct(spec, 0.5, 1.0, &cfg()).unwrap();
        assert!((v - c((-1.0f64).exp())).norm() < 1e-8, "{v}");

        let u = |s: f64, w: f64| Ok(1.0 / Complex64::new(s, w));
        let v = igft_reconstruct(u, 1.0, 2.0, &cfg()).unwrap();
        assert!((v - c(1.0)).norm() < 1e-7, "{v}");
        let v = igft_reconstruct(u, 1.0, -2.0, &cfg()).unwrap();
        assert!(v.norm() < 1e-7, "{v}");

        let delay = |s: f64, w: f64| Ok((-Complex64::new(s, w)).exp());
        let v = igft_reconstruct(delay, 1.0, 0.3, &QuadratureConfig::with_tol(1e-8, 1e-10)).unwrap();
        assert!(v.norm() < 1e-6, "{v}");
    }

    #[test]
    fn split_synthesis_and_zero_agreement() {
        let lt = |s: Complex64| Ok(1.0 / (s + 1.0));
        let clt = |s: Complex64| Ok(1.0 / (s + 1.0));
        let v = igft_split(lt, clt, 0.5, 1.5, &cfg()).unwrap();
        assert!((v - c((-1.5f64).exp())).norm() < 1e-8);
        let v = igft_split(lt, clt, 0.5, -0.5, &cfg()).unwrap();
        assert!((v - c((-0.5f64).exp())).norm() < 1e-8);
        let v = igft_value_at_zero(lt, clt, 0.5, 1e-6, &cfg()).unwrap();
        assert!((v - c(1.0)).norm() < 1e-8, "{v}");
        // sgn has a jump at 0
        let neg = |s: Complex64| Ok(-1.0 / s);
        let pos = |s: Complex64| Ok(1.0 / s);
        assert!(matches!(
            igft_value_at_zero(pos, neg, 1.0, 1e-6, &cfg()),
            Err(GftError::Consistency(_))
        ));
    }

    #[test]
    fn ft_limit_examples() {
        let v = ft_limit_numeric(&abs_exp, 1.0, 0.125, 4, &cfg()).unwrap();
        assert!((v - c(1.0)).norm() < 1e-4, "{v}");
        let one = |_t: f64| c(1.0);
        let v = ft_limit_numeric(&one, 1.0, 0.125, 4, &cfg()).unwrap();
        assert!(v.norm() < 1e-3, "{v}");
        assert!(matches!(
            ft_limit_numeric(&one, 0.0, 0.125, 4, &cfg()),
            Err(GftError::Distributional(_))
        ));
    }

    #[test]
    fn rational_extrapolation_is_exact_for_rationals() {
        let g = |x: f64| c((1.0 + 2.0 * x) / (1.0 + x));
        let xs = [0.4, 0.2, 0.1];
        let ys: Vec<_> = xs.iter().map(|&x| g(x)).collect();
        let v = rational_extrapolate(&xs, &ys).unwrap();
        assert!((v - c(1.0)).norm() < 1e-12, "{v}");
    }

    #[test]
    fn periodic_examples() {
        let cos = PeriodicSignal::new(
            1.0,
            PeriodSource::Spec(SignalSpec::atom(SignalAtom::Cosine { omega0: 2.0 * PI })),
        )
        .unwrap();
        let v = periodic_gft(&cos, f(1.0, 0.0), &cfg()).unwrap();
        assert!((v - c(2.0 / (1.0 + 4.0 * PI * PI))).norm() < 1e-10, "{v}");
        let one = PeriodicSignal::new(2.5, PeriodSource::Spec(SignalSpec::atom(SignalAtom::Constant))).unwrap();
        let v = periodic_gft(&one, f(1.0, 0.0), &cfg()).unwrap();
        assert!((v - c(2.0)).norm() < 1e-10);
        assert!(matches!(
            periodic_gft(&one, f(0.0, 1.0), &cfg()),
            Err(GftError::Region(_))
        ));
    }

    #[test]
    fn two_dimensional_examples() {
        let loose = QuadratureConfig::with_tol(1e-8, 1e-10);
        let g = |a: f64, b: f64| c((-a.abs() - b.abs()).exp());
        let v = md_gft_2d(g, 0.5, 0.0, 0.0, &loose).unwrap();
        assert!((v - c(16.0 / 9.0)).norm() < 1e-6, "{v}");
        let one = |_: f64, _: f64| c(1.0);
        let v = md_gft_2d(one, 1.0, 0.0, 0.0, &loose).unwrap();
        assert!((v - c(4.0)).norm() < 1e-6, "{v}");
    }

    #[test]
    fn cosine_pair() {
        let one = |_t: f64| c(1.0);
        let v = damped_fct(&one, 1.0, 0.0, &cfg()).unwrap();
        assert!((v - c((2.0 / PI).sqrt())).norm() < 1e-10);
        let v = damped_fct(&one, 1.0, 1.0, &cfg()).unwrap();
        assert!((v - c((2.0 / PI).sqrt() / 2.0)).norm() < 1e-10);
        assert!(matches!(damped_fct(&one, 0.0, 1.0, &cfg()), Err(GftError::Region(_))));
        let x = |t: f64| c((-t).exp());
        let xc = |w: f64| damped_fct(&x, 0.5, w, &cfg());
        let v = damped_ifct(xc, 0.5, 1.0, &QuadratureConfig::with_tol(1e-7, 1e-9)).unwrap();
        assert!((v - c((-1.0f64).exp())).norm() < 1e-4, "{v}");
    }

    #[test]
    fn wavelet_admissibility() {
        let psi = WaveletSpec::mexican_hat();
        let cpsi = psi.admissibility().unwrap();
        assert!((cpsi - 8.0 * PI.sqrt() / 3.0).abs() < 1e-7, "{cpsi}");
        let gauss = WaveletSpec::new("gauss", |t: f64| c((-t * t).exp()));
        assert!(matches!(gauss.admissibility(), Err(GftError::Admissibility(_))));
    }

    #[test]
    fn wavelet_forward_examples() {
        let psi = WaveletSpec::mexican_hat();
        let zero = |_t: f64| c(0.0);
        assert_eq!(damped_cwt(&zero, 1.0, 2.0, 0.3, &psi, &cfg()).unwrap(), c(0.0));
        let one = |_t: f64| c(1.0);
        assert_eq!(damped_cwt(&one, 1.0, 0.0, 0.3, &psi, &cfg()).unwrap(), c(0.0));
        let v = damped_cwt(&one, 1.0, 1.0, 0.0, &psi, &cfg()).unwrap();
        let oracle = integrate_real_line(|t| c((-t.abs()).exp()) * psi.mother(t), OscHint::None, &cfg())
            .unwrap()
            .value;
        assert!((v - oracle).norm() < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn conjugate_symmetry(sigma in 0.1f64..2.0, omega in 0.1f64..5.0, a in 0.2f64..2.0) {
            let x = move |t: f64| c((-a * t.abs()).exp() * (1.0 + 0.5 * t.sin()));
            let p = gft_forward(&x, f(sigma, omega), WeightSpec::default(), &cfg()).unwrap();
            let m = gft_forward(&x, f(sigma, -omega), WeightSpec::default(), &cfg()).unwrap();
            prop_assert!((p - m.conj()).norm() < 1e-9 * (1.0 + p.norm()));
        }

        #[test]
        fn forward_then_inverse(t in -5.0f64..5.0) {
            let loose = QuadratureConfig::with_tol(1e-9, 1e-11);
            let x = |t: f64| c((-t * t).exp());
            let spec = |s: f64, w: f64| gft_forward(&x, ComplexFrequency::new(s, w)?, WeightSpec::default(), &loose);
            let v = igft_reconstruct(spec, 0.5, t, &QuadratureConfig::with_tol(1e-7, 1e-9)).unwrap();
            prop_assert!((v - x(t)).norm() < 1e-4, "t={}: {}", t, v);
        }
    }
}
