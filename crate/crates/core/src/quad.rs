//! Adaptive Gauss–Kronrod quadrature for complex integrands on finite
//! intervals and half-lines, with Wynn-epsilon acceleration for slowly
//! decaying oscillatory tails.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on the odd Kronrod nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Known envelope `|f(t)| ≤ amplitude · e^{−rate·t^exponent}` of a half-line
/// integrand, used to pick a hard truncation point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    pub amplitude: f64,
    pub rate: f64,
    pub exponent: f64,
}

impl TailBound {
    /// Smallest `T` with `amplitude·e^{−rate·T^exponent} ≤ abs_tol`.
    pub fn truncation_point(&self, abs_tol: f64) -> f64 {
        let ratio = self.amplitude / abs_tol;
        if ratio <= 1.0 || self.rate <= 0.0 {
            return 1.0;
        }
        let q = if self.exponent > 0.0 { self.exponent } else { 1.0 };
        (ratio.ln() / self.rate).powf(1.0 / q).max(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub tail_bound: Option<TailBound>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 20_000,
            tail_bound: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(rel_tol: f64, abs_tol: f64) -> Self {
        QuadratureConfig {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(GftError::Constraint("quadrature tolerances must be positive".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(GftError::Constraint("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Quadrature result with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod panel: (value, error estimate, ∫|f|).
pub fn gauss_kronrod15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = fc.norm() * WGK[7];
    let mut fv1 = [ZERO; 7];
    let mut fv2 = [ZERO; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += (f1 + f2) * WGK[j];
        abs_k += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).norm() * WGK[7];
    for j in 0..7 {
        asc += ((fv1[j] - mean).norm() + (fv2[j] - mean).norm()) * WGK[j];
    }
    let value = kronrod * half;
    let resabs = abs_k * half.abs();
    let resasc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        err = f64::INFINITY;
    }
    (value, err, resabs)
}

/// Adaptive integration over `[a, b]`, starting from panels no wider than
/// `max_panel` and bisecting the panel with the largest error.
pub fn integrate<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    max_panel: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate_with_abs(&mut f, a, b, max_panel, cfg).map(|(e, _)| e)
}

fn integrate_with_abs<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    max_panel: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<(Estimate, f64)> {
    if a == b {
        return Ok((
            Estimate {
                value: ZERO,
                error: 0.0,
            },
            0.0,
        ));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(GftError::Domain(
            "finite-interval quadrature needs finite limits".into(),
        ));
    }
    let width = b - a;
    let pieces = match max_panel {
        Some(w) if w > 0.0 && w.is_finite() => ((width.abs() / w).ceil() as usize).clamp(1, 100_000),
        _ => 1,
    };
    let mut heap = BinaryHeap::with_capacity(pieces * 2);
    let mut total = ZERO;
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    for i in 0..pieces {
        let lo = a + width * i as f64 / pieces as f64;
        let hi = if i + 1 == pieces {
            b
        } else {
            a + width * (i + 1) as f64 / pieces as f64
        };
        let (value, error, abs) = gauss_kronrod15(f, lo, hi);
        total += value;
        total_err += error;
        total_abs += abs;
        heap.push(Panel {
            a: lo,
            b: hi,
            value,
            error,
            abs,
        });
    }
    let mut count = pieces;
    loop {
        if total_err <= cfg.target(total) {
            break;
        }
        let worst = match heap.peek() {
            Some(p) => *p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        let tiny = (worst.b - worst.a).abs() <= 64.0 * f64::EPSILON * (worst.a.abs() + worst.b.abs());
        if count >= cfg.max_subdivisions.max(pieces) || tiny || !worst.error.is_finite() && tiny {
            return Err(GftError::convergence(total, total_err));
        }
        heap.pop();
        let (v1, e1, r1) = gauss_kronrod15(f, worst.a, mid);
        let (v2, e2, r2) = gauss_kronrod15(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        total_abs += r1 + r2 - worst.abs;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            abs: r1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            abs: r2,
        });
        count += 1;
        if count % 64 == 0 {
            // Re-sum to keep the running totals free of drift.
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(GftError::convergence(total, f64::INFINITY));
    }
    Ok((
        Estimate {
            value: total,
            error: total_err,
        },
        total_abs,
    ))
}

/// Integral over `[a, b]` with the substitution `t = a + (b−a)u²`, which
/// tames an integrable power singularity at `a`.
pub fn integrate_endpoint_singular<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate_endpoint_singular_abs(&mut f, a, b, None, cfg).map(|(e, _)| e)
}

fn integrate_endpoint_singular_abs<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    max_panel: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<(Estimate, f64)> {
    let w = b - a;
    let mut g = |u: f64| {
        let t = a + w * u * u;
        if u == 0.0 {
            return ZERO;
        }
        f(t) * (2.0 * w * u)
    };
    // In u the oscillation is compressed near u = 1, so cap panels in u by
    // the same number of periods as the t-panels would have.
    let cap = max_panel.map(|p| (p / w.abs()).min(1.0) * 0.5);
    integrate_with_abs(&mut g, 0.0, 1.0, cap, cfg)
}

/// Below this angular frequency a half-period is too long for chunked
/// summation and the tail is treated as non-oscillatory.
const MIN_TAIL_OMEGA: f64 = 1e-6;

/// How the integrand oscillates; the half-line driver uses this to pick a
/// tail strategy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OscHint {
    /// No explicit oscillating factor.
    None,
    /// Contains a factor like `e^{±jωt}`, `cos(ωt)` or `sin(ωt)`.
    Angular(f64),
}

impl OscHint {
    fn omega(self) -> f64 {
        match self {
            OscHint::None => 0.0,
            OscHint::Angular(w) => w.abs(),
        }
    }

    /// Panel width that resolves the oscillation: `π/(4|ω|)`.
    pub fn panel_cap(self) -> Option<f64> {
        let w = self.omega();
        if w > 0.0 {
            Some(PI / (4.0 * w))
        } else {
            None
        }
    }
}

/// `∫_a^∞ f(t) dt`.
///
/// With a declared [`TailBound`] the integral is truncated at the envelope
/// crossing point. Otherwise non-oscillatory integrands use doubling
/// intervals until both the contribution and `∫|f|` of the last interval
/// drop below `abs_tol`, and oscillatory integrands are summed over
/// half-periods with Wynn-epsilon acceleration of the partial sums (which
/// also assigns Abel values to bounded non-decaying oscillations).
pub fn integrate_half_line<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    osc: OscHint,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    let cap = osc.panel_cap();
    let head = cap.map_or(1.0, |c| (4.0 * c).min(1.0));

    if let Some(bound) = cfg.tail_bound {
        let end = a + bound.truncation_point(cfg.abs_tol);
        let first_end = (a + head).min(end);
        let (first, _) = integrate_endpoint_singular_abs(&mut f, a, first_end, cap, cfg)?;
        let rest = integrate(&mut f, first_end, end, cap, cfg)?;
        return Ok(first + rest);
    }

    let (first, _) = integrate_endpoint_singular_abs(&mut f, a, a + head, cap, cfg)?;
    let start = a + head;
    match osc {
        OscHint::None => doubling_tail(&mut f, start, first, cfg),
        OscHint::Angular(w) if w.abs() < MIN_TAIL_OMEGA => doubling_tail(&mut f, start, first, cfg),
        OscHint::Angular(w) => oscillatory_tail(&mut f, start, w.abs(), first, cfg),
    }
}

fn doubling_tail<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    start: f64,
    head: Estimate,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let mut acc = head;
    let mut lo = start;
    let mut len = 1.0f64.max(start.abs());
    let mut quiet = 0;
    for _ in 0..400 {
        let hi = lo + len;
        let (piece, abs) = integrate_with_abs(f, lo, hi, None, cfg)?;
        acc = acc + piece;
        if piece.value.norm() < cfg.abs_tol && abs < cfg.abs_tol {
            quiet += 1;
            if quiet >= 2 {
                acc.error += abs;
                return Ok(acc);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        len *= 2.0;
        if !lo.is_finite() {
            break;
        }
    }
    Err(GftError::convergence(acc.value, f64::INFINITY))
}

fn oscillatory_tail<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    start: f64,
    omega: f64,
    head: Estimate,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let half_period = PI / omega;
    let cap = Some(half_period / 4.0);
    let mut sums: Vec<Complex64> = Vec::with_capacity(256);
    let mut running = head.value;
    let mut err_acc = head.error;
    let mut quiet = 0;
    let mut extrapolated: Vec<Complex64> = Vec::new();
    let mut first_mag = None::<f64>;
    let mut growth = 0usize;
    let mut last_mag = 0.0;
    const MAX_CHUNKS: usize = 20_000;
    const WINDOW: usize = 48;
    for k in 0..MAX_CHUNKS {
        let lo = start + k as f64 * half_period;
        let hi = lo + half_period;
        let (piece, abs) = integrate_graded(f, lo, hi, cap, cfg)?;
        running += piece.value;
        err_acc += piece.error;
        sums.push(running);

        let mag = abs;
        let base = *first_mag.get_or_insert(mag.max(f64::MIN_POSITIVE));
        if mag > last_mag * (1.0 + 1e-9) && k > 0 {
            growth += 1;
        } else {
            growth = 0;
        }
        last_mag = mag;
        if growth > 24 && mag > 1e6 * base {
            return Err(GftError::convergence(running, f64::INFINITY));
        }

        if abs < 0.1 * cfg.abs_tol {
            quiet += 1;
            if quiet >= 2 {
                return Ok(Estimate {
                    value: running,
                    error: err_acc + abs,
                });
            }
            continue;
        }
        quiet = 0;
        if sums.len() >= 8 && growth == 0 {
            let lo_idx = sums.len().saturating_sub(WINDOW);
            let e = wynn_epsilon(&sums[lo_idx..]);
            extrapolated.push(e);
            let n = extrapolated.len();
            if n >= 3 {
                let d1 = (extrapolated[n - 1] - extrapolated[n - 2]).norm();
                let d2 = (extrapolated[n - 1] - extrapolated[n - 3]).norm();
                let spread = d1.max(d2);
                if spread <= 0.5 * cfg.target(e) {
                    return Ok(Estimate {
                        value: e,
                        error: err_acc + spread,
                    });
                }
            }
        }
    }
    let value = extrapolated.last().copied().unwrap_or(running);
    Err(GftError::convergence(value, f64::INFINITY))
}

/// `∫_lo^hi` split into pieces of doubling length starting at
/// `max(1, |lo|)`, so that a long interval far wider than the features of
/// the integrand near `lo` is not sampled by a single coarse panel.
fn integrate_graded<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    cap: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<(Estimate, f64)> {
    let mut acc = Estimate {
        value: ZERO,
        error: 0.0,
    };
    let mut abs_total = 0.0;
    let mut a = lo;
    let mut len = 1.0f64.max(lo.abs());
    while a < hi {
        let b = (a + len).min(hi);
        let (piece, abs) = integrate_with_abs(f, a, b, cap, cfg)?;
        acc = acc + piece;
        abs_total += abs;
        a = b;
        len *= 2.0;
    }
    Ok((acc, abs_total))
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns
/// the deepest even-column entry.
pub fn wynn_epsilon(partial_sums: &[Complex64]) -> Complex64 {
    let n = partial_sums.len();
    if n == 0 {
        return ZERO;
    }
    let mut best = partial_sums[n - 1];
    let mut prev = vec![ZERO; n + 1];
    let mut cur = partial_sums.to_vec();
    let mut column = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff.norm() <= 1e-300 {
                return if column % 2 == 0 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + diff.inv());
        }
        column += 1;
        prev = cur;
        cur = next;
        if column % 2 == 0 {
            let candidate = cur[cur.len() - 1];
            if candidate.re.is_finite() && candidate.im.is_finite() {
                best = candidate;
            } else {
                break;
            }
        }
    }
    best
}

/// `∫_{−∞}^{∞} f(t) dt` as two half-line integrals.
pub fn integrate_real_line<F: FnMut(f64) -> Complex64>(
    mut f: F,
    osc: OscHint,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let right = integrate_half_line(&mut f, 0.0, osc, cfg)?;
    let left = integrate_half_line(|t| f(-t), 0.0, osc, cfg)?;
    Ok(right + left)
}

/// Polynomial (Neville) extrapolation to zero of values sampled at
/// `h_0·r^{−k}`; returns the tableau diagonal `T_{k,k}`.
pub fn richardson_diagonal(values: &[Complex64], ratio: f64) -> Vec<Complex64> {
    let n = values.len();
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut diagonal = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![values[i]];
        for j in 1..=i {
            let factor = ratio.powi(j as i32) - 1.0;
            let v = row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / factor;
            row.push(v);
        }
        diagonal.push(row[i]);
        table.push(row);
    }
    diagonal
}
