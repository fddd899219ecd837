//! Gamma-family special functions over complex arguments.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};
use crate::quad::{self, OscHint, QuadratureConfig};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// `Γ(s)` via the Lanczos approximation, reflected for `Re{s} < 0.5`.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(GftError::Pole(format!("gamma has a pole at s = {}", s.re)));
    }
    if s.im == 0.0 && s.re > 0.0 && s.re.fract() == 0.0 && s.re <= 171.0 {
        return Ok(Complex64::new(factorial(s.re as u32 - 1), 0.0));
    }
    Ok(gamma_unchecked(s))
}

fn gamma_unchecked(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        let sin = (s * PI).sin();
        return PI / (sin * gamma_unchecked(1.0 - s));
    }
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `Γ(x)` for real `x`.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

/// `n!` as a float.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient `C(n, k)` as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaKind {
    Lower,
    Upper,
}

/// Partial gamma integrals `Γ_L(s,x) = ∫_0^x e^{−τ}τ^{s−1}dτ` and
/// `Γ_U(s,x) = ∫_x^∞ e^{−τ}τ^{s−1}dτ`.
///
/// The lower function uses the power series; the upper one uses the
/// Lentz continued fraction for `x ≥ max(1, |s| + 1)`, `Γ(s) − Γ_L` or
/// downward recurrence below that, and adaptive quadrature when those
/// routes are unavailable.
pub fn incomplete_gamma(kind: GammaKind, s: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(GftError::Domain(format!(
            "incomplete gamma needs finite x > 0, got {x}"
        )));
    }
    match kind {
        GammaKind::Lower => {
            if s.re <= 0.0 {
                return Err(GftError::Region(format!(
                    "lower incomplete gamma needs Re{{s}} > 0, got {s}"
                )));
            }
            Ok(lower_series(s, x))
        }
        GammaKind::Upper => upper_incomplete(s, x),
    }
}

fn lower_series(s: Complex64, x: f64) -> Complex64 {
    // γ(s,x) = x^s e^{−x} Σ x^n / (s(s+1)…(s+n))
    let mut term = 1.0 / s;
    let mut sum = term;
    for n in 1..2000 {
        term *= x / (s + n as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    Complex64::new(x, 0.0).powc(s) * (-x).exp() * sum
}

fn upper_incomplete(s: Complex64, x: f64) -> Result<Complex64> {
    if x >= 1.0 && (x >= s.norm() + 1.0 || is_nonpositive_integer(s)) {
        if let Some(v) = upper_continued_fraction(s, x) {
            return Ok(v);
        }
        return upper_quadrature(s, x);
    }
    if s.re > 0.0 {
        return Ok(gamma_unchecked(s) - lower_series(s, x));
    }
    if is_nonpositive_integer(s) {
        return upper_quadrature(s, x);
    }
    // Γ(s,x) = (Γ(s+1,x) − x^s e^{−x}) / s, applied downward from Re > 0.
    let steps = (-s.re).floor() as usize + 1;
    let top = s + steps as f64;
    let mut value = gamma_unchecked(top) - lower_series(top, x);
    for k in (0..steps).rev() {
        let sk = s + k as f64;
        value = (value - Complex64::new(x, 0.0).powc(sk) * (-x).exp()) / sk;
    }
    Ok(value)
}

fn upper_continued_fraction(s: Complex64, x: f64) -> Option<Complex64> {
    // Modified Lentz evaluation of
    // Γ(s,x) = e^{−x}x^s / (x+1−s − 1(1−s)/(x+3−s − 2(2−s)/(x+5−s − …)))
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(x + 1.0, 0.0) - s;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let an = -(i as f64) * (Complex64::new(i as f64, 0.0) - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Some((-x).exp() * Complex64::new(x, 0.0).powc(s) * h);
        }
    }
    None
}

/// `∫_x^∞ e^{−τ} τ^{s−1} dτ` by adaptive quadrature.
pub fn upper_quadrature(s: Complex64, x: f64) -> Result<Complex64> {
    let cfg = QuadratureConfig::with_tol(1e-13, 1e-15);
    let sm1 = s - 1.0;
    quad::integrate_half_line(
        |u: f64| {
            let tau = x + u;
            (sm1 * tau.ln() - tau).exp()
        },
        0.0,
        OscHint::None,
        &cfg,
    )
    .map(|e| e.value)
}

/// `∫_0^x e^{−τ} τ^{s−1} dτ` by adaptive quadrature (needs `Re{s} > 0`).
pub fn lower_quadrature(s: Complex64, x: f64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(GftError::Region("lower incomplete gamma needs Re{s} > 0".into()));
    }
    let cfg = QuadratureConfig::with_tol(1e-13, 1e-16);
    let sm1 = s - 1.0;
    quad::integrate_endpoint_singular(
        |tau: f64| {
            if tau == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (sm1 * tau.ln() - tau).exp()
            }
        },
        0.0,
        x,
        &cfg,
    )
    .map(|e| e.value)
}

/// Generalized gamma `G(s) = [e^{jπ(s−1)} + 1]·Γ(s)`.
///
/// Even integers return exactly zero and positive odd integers exactly
/// `2Γ(s)`; negative odd integers are poles.
pub fn generalized_gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re.fract() == 0.0 {
        let n = s.re;
        let even = (n / 2.0).fract() == 0.0;
        if even {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if n < 0.0 {
            return Err(GftError::Pole(format!(
                "generalized gamma has a pole at the negative odd integer {n}"
            )));
        }
        return Ok(gamma(s)? * 2.0);
    }
    let phase = Complex64::from_polar(1.0, PI * (s.re - 1.0)) * (-PI * s.im).exp();
    // e^{jπ(s−1)} with s = a + jb is e^{−πb} e^{jπ(a−1)}
    Ok((phase + 1.0) * gamma(s)?)
}

/// Complementary gamma `Γ_c(s) = e^{jπ(s−1)}Γ(s)`.
pub fn complementary_gamma(s: Complex64) -> Result<Complex64> {
    let phase = Complex64::from_polar(1.0, PI * (s.re - 1.0)) * (-PI * s.im).exp();
    Ok(phase * gamma(s)?)
}

// B_{2k}/(2k)! for k = 1..=10
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
];

/// Riemann zeta `ζ(s)` for `s ≠ 1` by Euler–Maclaurin summation.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(GftError::Pole("zeta has a pole at s = 1".into()));
    }
    if s.re < 0.0 {
        return Err(GftError::Unsupported("zeta is implemented for Re{s} >= 0".into()));
    }
    const N: usize = 24;
    let n = N as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..N {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let n_pow = Complex64::new(n, 0.0).powc(-s);
    sum += n_pow * n / (s - 1.0) + n_pow * 0.5;
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut npow = n_pow / n;
    for (k, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += rising * npow * *coef;
        let a = s + (2 * k + 1) as f64;
        let b = s + (2 * k + 2) as f64;
        rising = rising * a * b;
        npow /= n * n;
    }
    Ok(sum)
}
