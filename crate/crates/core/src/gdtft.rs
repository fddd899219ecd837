//! Discrete-time transform `X(z, z*) = 𝔛(z*) + X(z)` with
//! `𝔛(z*) = Σ_{n≥1} x[−n] (z*)^{−n}` and `X(z) = Σ_{n≥0} x[n] z^{−n}`.
//!
//! Both one-sided parts are stored as sums of rational terms in a local
//! variable `w`: `w = z^{−1}` for the causal part and `w = (z*)^{−1}` for the
//! anticausal part. The Taylor coefficients of the causal part in `w` are
//! `x[0], x[1], …` and those of the anticausal part are `0, x[−1], x[−2], …`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};
use crate::quad::{richardson_diagonal, Estimate};
use crate::rational::Poly;
use crate::signal::{DiscreteFrequency, Orientation, Roc};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Relative size below which a numerator value counts as a common root.
const CANCEL_TOL: f64 = 1e-9;

/// Catalog atom of the discrete-time signal vocabulary. `sgn[0] = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SequenceAtom {
    /// `δ[n − n0]`
    #[serde(rename = "delta")]
    DiracDeltaN { n0: i64 },
    #[serde(rename = "const")]
    ConstantN,
    #[serde(rename = "sgn")]
    SignumN,
    /// `u[n]` or `u[−n]`
    #[serde(rename = "step")]
    UnitStepN {
        #[serde(default)]
        orientation: Orientation,
    },
    /// `a^n`
    #[serde(rename = "geom")]
    GeometricN { a: Complex64 },
    /// `a^{|n|}`, `|a| < 1`
    #[serde(rename = "abs_geom")]
    AbsGeometricN { a: Complex64 },
    #[serde(rename = "cexp")]
    ComplexExpN { omega0: f64 },
    #[serde(rename = "cos")]
    CosineN { omega0: f64 },
    #[serde(rename = "sin")]
    SineN { omega0: f64 },
}

impl SequenceAtom {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SequenceAtom::GeometricN { a } => {
                if !(a.re.is_finite() && a.im.is_finite()) || a == ZERO {
                    return Err(GftError::Constraint(format!(
                        "geometric ratio must be finite and nonzero, got {a}"
                    )));
                }
            }
            SequenceAtom::AbsGeometricN { a } => {
                if !(a.norm() < 1.0) {
                    return Err(GftError::Constraint(format!(
                        "a^|n| needs |a| < 1 for the anticausal sum to converge, got |a| = {}",
                        a.norm()
                    )));
                }
            }
            SequenceAtom::ComplexExpN { omega0 }
            | SequenceAtom::CosineN { omega0 }
            | SequenceAtom::SineN { omega0 }
                if !omega0.is_finite() => {
                    return Err(GftError::Constraint("frequency must be finite".into()));
                }
            _ => {}
        }
        Ok(())
    }

    pub fn sample(&self, n: i64) -> Complex64 {
        let nf = n as f64;
        match *self {
            SequenceAtom::DiracDeltaN { n0 } => {
                if n == n0 {
                    ONE
                } else {
                    ZERO
                }
            }
            SequenceAtom::ConstantN => ONE,
            SequenceAtom::SignumN => Complex64::new(n.signum() as f64, 0.0),
            SequenceAtom::UnitStepN { orientation } => {
                let on = match orientation {
                    Orientation::Forward => n >= 0,
                    Orientation::Reversed => n <= 0,
                };
                if on {
                    ONE
                } else {
                    ZERO
                }
            }
            SequenceAtom::GeometricN { a } => a.powf(nf),
            SequenceAtom::AbsGeometricN { a } => a.powf(nf.abs()),
            SequenceAtom::ComplexExpN { omega0 } => Complex64::from_polar(1.0, omega0 * nf),
            SequenceAtom::CosineN { omega0 } => Complex64::new((omega0 * nf).cos(), 0.0),
            SequenceAtom::SineN { omega0 } => Complex64::new((omega0 * nf).sin(), 0.0),
        }
    }

    /// Closed-form one-sided parts `(𝔛, X)` of the atom.
    fn parts(&self) -> (Vec<ZTerm>, Vec<ZTerm>) {
        let geometric = |a: Complex64| ZTerm::new(Poly::constant(ONE), Poly::new(vec![ONE, -a]), 0);
        match *self {
            SequenceAtom::DiracDeltaN { n0 } => {
                let term = ZTerm::monomial(ONE, n0.unsigned_abs() as i32);
                if n0 >= 0 {
                    (vec![], vec![term])
                } else {
                    (vec![term], vec![])
                }
            }
            SequenceAtom::ConstantN => (vec![geometric(ONE).shifted(1)], vec![geometric(ONE)]),
            SequenceAtom::SignumN => (
                vec![geometric(ONE).shifted(1).scaled(-ONE)],
                vec![geometric(ONE).shifted(1)],
            ),
            SequenceAtom::UnitStepN { orientation } => match orientation {
                Orientation::Forward => (vec![], vec![geometric(ONE)]),
                Orientation::Reversed => (vec![geometric(ONE).shifted(1)], vec![ZTerm::monomial(ONE, 0)]),
            },
            // Σ_{k≥1} a^{−k} w^k = (w/a)/(1 − w/a)
            SequenceAtom::GeometricN { a } => (vec![geometric(1.0 / a).shifted(1).scaled(1.0 / a)], vec![geometric(a)]),
            SequenceAtom::AbsGeometricN { a } => (vec![geometric(a).shifted(1).scaled(a)], vec![geometric(a)]),
            SequenceAtom::ComplexExpN { omega0 } => SequenceAtom::GeometricN {
                a: Complex64::from_polar(1.0, omega0),
            }
            .parts(),
            SequenceAtom::CosineN { omega0 } => {
                let (c, den) = cos_den(omega0);
                (
                    vec![ZTerm::new(Poly::new(vec![ZERO, c, -ONE]), den.clone(), 0)],
                    vec![ZTerm::new(Poly::new(vec![ONE, -c]), den, 0)],
                )
            }
            SequenceAtom::SineN { omega0 } => {
                let (_, den) = cos_den(omega0);
                let s = Complex64::new(omega0.sin(), 0.0);
                (
                    vec![ZTerm::new(Poly::new(vec![ZERO, -s]), den.clone(), 0)],
                    vec![ZTerm::new(Poly::new(vec![ZERO, s]), den, 0)],
                )
            }
        }
    }
}

/// `(cos Ω0, 1 − 2w cos Ω0 + w²)`
fn cos_den(omega0: f64) -> (Complex64, Poly) {
    let c = Complex64::new(omega0.cos(), 0.0);
    (c, Poly::new(vec![ONE, -2.0 * c, ONE]))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceTerm {
    pub coef: Complex64,
    pub atom: SequenceAtom,
}

/// Weighted sum of discrete catalog atoms.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub terms: Vec<SequenceTerm>,
}

impl SequenceSpec {
    pub fn atom(atom: SequenceAtom) -> Self {
        SequenceSpec::zero().with(ONE, atom)
    }

    pub fn zero() -> Self {
        SequenceSpec { terms: Vec::new() }
    }

    pub fn with(mut self, coef: impl Into<Complex64>, atom: SequenceAtom) -> Self {
        self.terms.push(SequenceTerm {
            coef: coef.into(),
            atom,
        });
        self
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            if !(t.coef.re.is_finite() && t.coef.im.is_finite()) {
                return Err(GftError::Constraint("coefficients must be finite".into()));
            }
            t.atom.validate()?;
        }
        Ok(())
    }

    pub fn sample(&self, n: i64) -> Complex64 {
        self.terms.iter().map(|t| t.coef * t.atom.sample(n)).sum()
    }
}

/// Parse a JSON sequence spec (`{"terms":[{"coef":[re,im],"atom":{...}}]}`).
pub fn parse_sequence_spec(text: &str) -> Result<SequenceSpec> {
    let spec: SequenceSpec = serde_json::from_str(text).map_err(|e| GftError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

/// One rational term `w^shift · N(w) / D(w)` with `D(0) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZTerm {
    pub numerator: Poly,
    pub denominator: Poly,
    pub shift: i32,
}

impl ZTerm {
    /// Builds a term; `denominator(0)` must be nonzero.
    pub fn new(numerator: Poly, denominator: Poly, shift: i32) -> Self {
        ZTerm {
            numerator,
            denominator,
            shift,
        }
        .reduced()
    }

    /// `c · w^k`
    pub fn monomial(c: Complex64, k: i32) -> Self {
        ZTerm::new(Poly::constant(c), Poly::constant(ONE), k)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn scaled(&self, c: Complex64) -> ZTerm {
        ZTerm {
            numerator: self.numerator.scale(c),
            ..self.clone()
        }
    }

    /// Multiply by `w^k`.
    pub fn shifted(&self, k: i32) -> ZTerm {
        ZTerm {
            shift: self.shift + k,
            ..self.clone()
        }
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        let d = self.denominator.eval(w);
        if d.norm() == 0.0 {
            return Err(GftError::Pole(format!("w = {w} is a pole")));
        }
        if w == ZERO && self.shift < 0 {
            return Err(GftError::Pole("negative power of w at w = 0".into()));
        }
        Ok(w.powi(self.shift) * self.numerator.eval(w) / d)
    }

    /// Poles in `w`.
    pub fn poles(&self) -> Vec<Complex64> {
        self.denominator.roots()
    }

    /// Laurent coefficients of powers `w^lo … w^hi`.
    pub fn coefficients(&self, lo: i32, hi: i32) -> Vec<Complex64> {
        if hi < lo {
            return Vec::new();
        }
        let len = (hi - self.shift + 1).max(0) as usize;
        let series = series_quotient(&self.numerator, &self.denominator, len);
        (lo..=hi)
            .map(|k| {
                let idx = k - self.shift;
                if idx < 0 {
                    ZERO
                } else {
                    series[idx as usize]
                }
            })
            .collect()
    }

    /// Substitute `w → c·w`.
    fn dilated(&self, c: Complex64) -> ZTerm {
        let stretch = |p: &Poly| {
            let mut f = ONE;
            Poly::new(
                p.coeffs()
                    .iter()
                    .map(|a| {
                        let v = a * f;
                        f *= c;
                        v
                    })
                    .collect(),
            )
        };
        ZTerm::new(
            stretch(&self.numerator).scale(c.powi(self.shift)),
            stretch(&self.denominator),
            self.shift,
        )
    }

    /// Substitute `w → w^k`.
    fn expanded(&self, k: u32) -> ZTerm {
        let spread = |p: &Poly| {
            let mut v = vec![ZERO; p.degree() * k as usize + 1];
            for (i, a) in p.coeffs().iter().enumerate() {
                v[i * k as usize] = *a;
            }
            Poly::new(v)
        };
        ZTerm::new(
            spread(&self.numerator),
            spread(&self.denominator),
            self.shift * k as i32,
        )
    }

    /// `w · d/dw`
    fn euler_derivative(&self) -> ZTerm {
        let (n, d) = (&self.numerator, &self.denominator);
        let s = Complex64::new(self.shift as f64, 0.0);
        let w = Poly::monomial(ONE, 1);
        let cross = n.derivative().mul(d).add(&n.mul(&d.derivative()).scale(-ONE));
        let num = n.mul(d).scale(s).add(&w.mul(&cross));
        ZTerm::new(num, d.mul(d), self.shift)
    }

    fn times(&self, p: &Poly) -> ZTerm {
        ZTerm::new(self.numerator.mul(p), self.denominator.clone(), self.shift)
    }

    fn over(&self, p: &Poly) -> ZTerm {
        ZTerm::new(self.numerator.clone(), self.denominator.mul(p), self.shift)
    }

    /// Moves zero coefficients into the shift, cancels common roots and
    /// scales to `D(0) = 1`.
    fn reduced(mut self) -> ZTerm {
        if self.numerator.is_zero() {
            return ZTerm {
                numerator: Poly::constant(ZERO),
                denominator: Poly::constant(ONE),
                shift: 0,
            };
        }
        let lead_zeros = self.numerator.coeffs().iter().take_while(|c| **c == ZERO).count();
        if lead_zeros > 0 {
            self.numerator = Poly::new(self.numerator.coeffs()[lead_zeros..].to_vec());
            self.shift += lead_zeros as i32;
        }
        'outer: loop {
            if self.denominator.degree() == 0 || self.numerator.degree() == 0 {
                break;
            }
            for r in self.denominator.roots() {
                let scale: f64 = self
                    .numerator
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.norm() * r.norm().powi(k as i32))
                    .sum();
                if self.numerator.eval(r).norm() <= CANCEL_TOL * scale {
                    let factor = Poly::new(vec![-r, ONE]);
                    self.numerator = self.numerator.div_rem(&factor).0;
                    self.denominator = self.denominator.div_rem(&factor).0;
                    continue 'outer;
                }
            }
            break;
        }
        let d0 = self.denominator.coeffs()[0];
        if d0 != ZERO && d0 != ONE {
            self.numerator = self.numerator.scale(1.0 / d0);
            self.denominator = self.denominator.scale(1.0 / d0);
        }
        self
    }
}

/// First `len` Taylor coefficients of `n / d` at `w = 0`.
fn series_quotient(n: &Poly, d: &Poly, len: usize) -> Vec<Complex64> {
    let (nc, dc) = (n.coeffs(), d.coeffs());
    let mut out: Vec<Complex64> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = nc.get(k).copied().unwrap_or(ZERO);
        for j in 1..dc.len().min(k + 1) {
            acc -= dc[j] * out[k - j];
        }
        out.push(acc / dc[0]);
    }
    out
}

fn sum_terms(terms: &[ZTerm], w: Complex64) -> Result<Complex64> {
    terms.iter().map(|t| t.eval(w)).sum()
}

/// `X(z, z*) = 𝔛(z*) + X(z)` as rational terms in `w`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZSpectrumExpr {
    /// Anticausal part, in `w = (z*)^{−1}`.
    pub clt_part: Vec<ZTerm>,
    /// Causal part, in `w = z^{−1}`.
    pub lt_part: Vec<ZTerm>,
    pub roc: Roc,
}

impl ZSpectrumExpr {
    /// Drops zero terms and derives `|z| > r0` from the outermost pole.
    pub fn from_parts(clt_part: Vec<ZTerm>, lt_part: Vec<ZTerm>) -> Self {
        let clt_part: Vec<ZTerm> = clt_part.into_iter().filter(|t| !t.is_zero()).collect();
        let lt_part: Vec<ZTerm> = lt_part.into_iter().filter(|t| !t.is_zero()).collect();
        let r0 = clt_part
            .iter()
            .chain(&lt_part)
            .flat_map(|t| t.poles())
            .map(|p| 1.0 / p.norm())
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
        let roc = match r0 {
            Some(r0) => Roc::OutsideCircle { r0 },
            None => Roc::EntireZPlane,
        };
        ZSpectrumExpr { clt_part, lt_part, roc }
    }

    pub fn zero() -> Self {
        ZSpectrumExpr::from_parts(Vec::new(), Vec::new())
    }

    pub fn plus(&self, other: &ZSpectrumExpr) -> ZSpectrumExpr {
        let mut clt = self.clt_part.clone();
        clt.extend(other.clt_part.iter().cloned());
        let mut lt = self.lt_part.clone();
        lt.extend(other.lt_part.iter().cloned());
        ZSpectrumExpr::from_parts(clt, lt)
    }

    pub fn scaled(&self, c: Complex64) -> ZSpectrumExpr {
        ZSpectrumExpr::from_parts(
            self.clt_part.iter().map(|t| t.scaled(c)).collect(),
            self.lt_part.iter().map(|t| t.scaled(c)).collect(),
        )
    }

    /// `𝔛` at `w = (z*)^{−1}`.
    pub fn eval_clt(&self, w: Complex64) -> Result<Complex64> {
        sum_terms(&self.clt_part, w)
    }

    /// `X` at `w = z^{−1}`.
    pub fn eval_lt(&self, w: Complex64) -> Result<Complex64> {
        sum_terms(&self.lt_part, w)
    }

    /// `𝔛(z*) + X(z)`, checked against the region of convergence.
    pub fn eval(&self, f: DiscreteFrequency) -> Result<Complex64> {
        self.roc.check(f.sigma)?;
        Ok(self.eval_clt(1.0 / f.z_conj())? + self.eval_lt(1.0 / f.z())?)
    }

    /// Sequence samples `x[lo..=hi]` read off the series coefficients.
    pub fn samples(&self, lo: i64, hi: i64) -> Vec<Complex64> {
        (lo..=hi).map(|n| self.sample(n)).collect()
    }

    pub fn sample(&self, n: i64) -> Complex64 {
        let k = n.unsigned_abs() as i32;
        let (terms, k) = if n >= 0 {
            (&self.lt_part, k)
        } else {
            (&self.clt_part, k)
        };
        terms.iter().map(|t| t.coefficients(k, k)[0]).sum()
    }

    fn side_coefficients(terms: &[ZTerm], lo: i32, hi: i32) -> Vec<Complex64> {
        let mut out = vec![ZERO; (hi - lo + 1).max(0) as usize];
        for t in terms {
            for (o, c) in out.iter_mut().zip(t.coefficients(lo, hi)) {
                *o += c;
            }
        }
        out
    }
}

/// Closed-form transform of a sequence spec from the catalog rows.
pub fn gdtft_closed_form(spec: &SequenceSpec) -> Result<ZSpectrumExpr> {
    spec.validate()?;
    let mut clt = Vec::new();
    let mut lt = Vec::new();
    for term in &spec.terms {
        let (c, l) = term.atom.parts();
        clt.extend(c.into_iter().map(|t| t.scaled(term.coef)));
        lt.extend(l.into_iter().map(|t| t.scaled(term.coef)));
    }
    Ok(ZSpectrumExpr::from_parts(clt, lt))
}

/// A discrete-time signal that can be sampled at any index.
pub trait DiscreteSignal {
    fn sample(&self, n: i64) -> Complex64;

    /// Inclusive index range outside of which the signal vanishes.
    fn support(&self) -> Option<(i64, i64)> {
        None
    }
}

impl<F: Fn(i64) -> Complex64> DiscreteSignal for F {
    fn sample(&self, n: i64) -> Complex64 {
        self(n)
    }
}

impl DiscreteSignal for SequenceSpec {
    fn sample(&self, n: i64) -> Complex64 {
        SequenceSpec::sample(self, n)
    }
}

/// Finite sequence `values[k] = x[start + k]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteSequence {
    pub start: i64,
    pub values: Vec<Complex64>,
}

impl DiscreteSignal for FiniteSequence {
    fn sample(&self, n: i64) -> Complex64 {
        let k = n - self.start;
        if k < 0 {
            return ZERO;
        }
        self.values.get(k as usize).copied().unwrap_or(ZERO)
    }

    fn support(&self) -> Option<(i64, i64)> {
        Some((self.start, self.start + self.values.len() as i64 - 1))
    }
}

/// Direct partial sums of both one-sided series, truncated at `|n| ≤ n_max`.
///
/// The error is the geometric tail bound `M q/(1 − q)` where `M` is the
/// largest term in the last window and `q` the per-step decay measured
/// against the previous window. Finite sequences are summed exactly.
pub fn gdtft_numeric<X: DiscreteSignal + ?Sized>(x: &X, f: DiscreteFrequency, n_max: u32) -> Result<Estimate> {
    let term = |n: i64| -> Complex64 {
        // x[n] e^{−σ|n|} e^{−jΩn}
        let v = x.sample(n);
        if v == ZERO {
            ZERO
        } else {
            v * Complex64::from_polar((-f.sigma * n.abs() as f64).exp(), -f.omega * n as f64)
        }
    };
    if let Some((lo, hi)) = x.support() {
        let value: Complex64 = (lo..=hi).map(term).sum();
        return Ok(Estimate { value, error: 0.0 });
    }
    if n_max < 16 {
        return Err(GftError::Constraint(format!("n_max must be at least 16, got {n_max}")));
    }
    let n_max = n_max as i64;
    let window = (n_max / 8).max(2);
    let mut value = ZERO;
    let mut error = 0.0;
    for side in [1i64, -1] {
        let start = if side > 0 { 0 } else { 1 };
        let mut partial = ZERO;
        let mut recent = 0.0f64;
        let mut previous = 0.0f64;
        // run of terms below machine precision relative to the partial sum
        let mut quiet = 0i64;
        let mut quiet_max = 0.0f64;
        let mut settled = false;
        for n in start..=n_max {
            let t = term(side * n);
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(GftError::Domain(format!("non-finite term at n = {}", side * n)));
            }
            partial += t;
            if partial != ZERO && t.norm() <= 1e-18 * partial.norm() {
                quiet += 1;
                quiet_max = quiet_max.max(t.norm());
                if quiet >= QUIET_RUN {
                    settled = true;
                    break;
                }
            } else {
                quiet = 0;
                quiet_max = 0.0;
            }
            if n > n_max - window {
                recent = recent.max(t.norm());
            } else if n > n_max - 2 * window {
                previous = previous.max(t.norm());
            }
        }
        if settled {
            value += partial;
            error += quiet_max * QUIET_RUN as f64;
            continue;
        }
        value += partial;
        if recent == 0.0 {
            continue;
        }
        let negligible = recent <= f64::EPSILON * partial.norm().max(f64::MIN_POSITIVE);
        let q = if previous > 0.0 {
            (recent / previous).powf(1.0 / window as f64)
        } else {
            1.0
        };
        if q >= 1.0 && !negligible {
            return Err(GftError::convergence(value, recent));
        }
        error += if q < 1.0 { recent * q / (1.0 - q) } else { recent };
    }
    Ok(Estimate { value, error })
}

/// Consecutive negligible terms that end a partial sum early.
const QUIET_RUN: i64 = 64;

/// Largest panel count tried by [`igdtft_numeric`].
pub const MAX_PANELS: usize = 1 << 22;

/// Inverse transform `x[n] = e^{σ|n|}(1/2π)∫_{−π}^{π} X(Ω, σ) e^{jΩn} dΩ`.
///
/// The periodic trapezoid rule starts with `panels` nodes and doubles until
/// successive results differ by less than `abs_tol`.
pub fn igdtft_numeric<S>(spectrum: S, sigma: f64, n: i64, panels: usize, abs_tol: f64) -> Result<Complex64>
where
    S: Fn(f64, f64) -> Result<Complex64>,
{
    if panels < 2 {
        return Err(GftError::Constraint(format!("need at least 2 panels, got {panels}")));
    }
    if !(abs_tol > 0.0) {
        return Err(GftError::Constraint(format!(
            "tolerance must be positive, got {abs_tol}"
        )));
    }
    let node = |omega: f64| -> Result<Complex64> {
        let v = spectrum(omega, sigma)? * Complex64::from_polar(1.0, omega * n as f64);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(GftError::Domain(format!("spectrum is not finite at Omega = {omega}")))
        }
    };
    let mut count = panels;
    let mut sum = ZERO;
    for k in 0..count {
        sum += node(-PI + 2.0 * PI * k as f64 / count as f64)?;
    }
    let mut current = sum / count as f64;
    let scale = (sigma * n.abs() as f64).exp();
    while count < MAX_PANELS {
        for k in 0..count {
            sum += node(-PI + 2.0 * PI * (k as f64 + 0.5) / count as f64)?;
        }
        count *= 2;
        let next = sum / count as f64;
        let diff = (next - current).norm() * scale;
        current = next;
        if diff < abs_tol {
            return Ok(current * scale);
        }
    }
    Err(GftError::convergence(current * scale, f64::NAN))
}

/// `σ → 0` value of [`igdtft_numeric`] by Richardson extrapolation on the
/// ladder `σ0·2^{−k}`, `k < levels`.
pub fn igdtft_sigma_limit<S>(
    spectrum: S,
    n: i64,
    sigma0: f64,
    levels: usize,
    panels: usize,
    abs_tol: f64,
) -> Result<Complex64>
where
    S: Fn(f64, f64) -> Result<Complex64>,
{
    if !(sigma0 > 0.0) || levels < 1 {
        return Err(GftError::Constraint("need sigma0 > 0 and at least one level".into()));
    }
    let values = (0..levels)
        .map(|k| igdtft_numeric(&spectrum, sigma0 * 0.5f64.powi(k as i32), n, panels, abs_tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(*richardson_diagonal(&values, 2.0).last().unwrap_or(&ZERO))
}

/// Property transformers for the discrete-time transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum GdtftProperty {
    /// `x[n − m]`
    Delay { m: u32 },
    /// `x[n + m]`
    Advance { m: u32 },
    /// `x[−n]`
    Reverse,
    /// `x[n/k]` on multiples of `k`, zero elsewhere.
    Expand { k: i64 },
    /// `x[n] − x[n − 1]`; a supplied `x[−1]` is checked against the expression.
    FirstDifference { x_minus_1: Option<Complex64> },
    /// `Σ_{k ≤ n} x[k]`
    Accumulate,
    /// `a^{−n} x[n]`
    GeometricModulate { a: Complex64 },
    /// `a^{−|n|} x[n]`
    AbsGeometricModulate { a: Complex64 },
    /// `n^m x[n]`
    MulNPower { m: u32 },
    /// `|n|^m x[n]`
    MulAbsNPower { m: u32 },
}

/// Boundary samples are read off the series of the expression itself, so the
/// correction sums of the shift identities need no extra input.
pub fn apply_gdtft_property(expr: &ZSpectrumExpr, op: &GdtftProperty) -> Result<ZSpectrumExpr> {
    let clt = &expr.clt_part;
    let lt = &expr.lt_part;
    let map = |terms: &[ZTerm], f: &dyn Fn(&ZTerm) -> ZTerm| terms.iter().map(f).collect::<Vec<_>>();
    let out = match *op {
        GdtftProperty::Delay { m } => {
            let m = m as i32;
            // x[−m..−1] sit at w^m..w^1 of the anticausal series
            let tail = ZSpectrumExpr::side_coefficients(clt, 1, m);
            let mut new_clt = map(clt, &|t| t.shifted(-m));
            let mut new_lt = map(lt, &|t| t.shifted(m));
            for (i, c) in tail.iter().enumerate() {
                let j = i as i32 + 1; // x[−j]
                new_clt.push(ZTerm::monomial(-c, j - m));
                new_lt.push(ZTerm::monomial(*c, m - j));
            }
            ZSpectrumExpr::from_parts(new_clt, new_lt)
        }
        GdtftProperty::Advance { m } => {
            let m = m as i32;
            let head = if m > 0 {
                ZSpectrumExpr::side_coefficients(lt, 0, m - 1)
            } else {
                Vec::new()
            };
            let mut new_clt = map(clt, &|t| t.shifted(m));
            let mut new_lt = map(lt, &|t| t.shifted(-m));
            for (k, c) in head.iter().enumerate() {
                let k = k as i32;
                new_lt.push(ZTerm::monomial(-c, k - m));
                new_clt.push(ZTerm::monomial(*c, m - k));
            }
            ZSpectrumExpr::from_parts(new_clt, new_lt)
        }
        GdtftProperty::Reverse => {
            let x0 = ZSpectrumExpr::side_coefficients(lt, 0, 0)[0];
            let mut new_clt = lt.clone();
            new_clt.push(ZTerm::monomial(-x0, 0));
            let mut new_lt = clt.clone();
            new_lt.push(ZTerm::monomial(x0, 0));
            ZSpectrumExpr::from_parts(new_clt, new_lt)
        }
        GdtftProperty::Expand { k } => {
            if k < 1 {
                return Err(GftError::Constraint(format!("expansion factor must be >= 1, got {k}")));
            }
            let k = k as u32;
            ZSpectrumExpr::from_parts(map(clt, &|t| t.expanded(k)), map(lt, &|t| t.expanded(k)))
        }
        GdtftProperty::FirstDifference { x_minus_1 } => {
            let xm1 = ZSpectrumExpr::side_coefficients(clt, 1, 1)[0];
            if let Some(given) = x_minus_1 {
                if (given - xm1).norm() > 1e-9 * (1.0 + xm1.norm()) {
                    return Err(GftError::Consistency(format!(
                        "supplied x[-1] = {given} but the expression gives {xm1}"
                    )));
                }
            }
            // (1 − z*) = (w − 1)/w on the anticausal side, (1 − w) on the causal side
            let mut new_clt = map(clt, &|t| t.times(&Poly::new(vec![-ONE, ONE])).shifted(-1));
            new_clt.push(ZTerm::monomial(xm1, 0));
            let mut new_lt = map(lt, &|t| t.times(&Poly::new(vec![ONE, -ONE])));
            new_lt.push(ZTerm::monomial(-xm1, 0));
            ZSpectrumExpr::from_parts(new_clt, new_lt)
        }
        GdtftProperty::Accumulate => {
            // y[−1] = Σ_{k≤−1} x[k] = 𝔛 at w = 1
            let mut y_minus_1 = ZERO;
            let mut new_clt = Vec::new();
            for t in clt {
                let at_one = t.eval(ONE).map_err(|_| {
                    GftError::Divergent("accumulation needs the anticausal sum to converge at |z| = 1".into())
                })?;
                y_minus_1 += at_one;
                // (𝔛 − y[−1])/(1 − z*) = −w(𝔛 − y[−1])/(1 − w)
                let (n, d) = (&t.numerator, &t.denominator);
                let centered = if t.shift >= 0 {
                    ZTerm::new(n.mul(&w_pow(t.shift)).add(&d.scale(-at_one)), d.clone(), 0)
                } else {
                    ZTerm::new(n.add(&d.mul(&w_pow(-t.shift)).scale(-at_one)), d.clone(), t.shift)
                };
                new_clt.push(centered.over(&Poly::new(vec![ONE, -ONE])).shifted(1).scaled(-ONE));
            }
            let step = Poly::new(vec![ONE, -ONE]);
            let mut new_lt = map(lt, &|t| t.over(&step));
            new_lt.push(ZTerm::new(Poly::constant(y_minus_1), step, 0));
            ZSpectrumExpr::from_parts(new_clt, new_lt)
        }
        GdtftProperty::GeometricModulate { a } => {
            if a == ZERO || !(a.re.is_finite() && a.im.is_finite()) {
                return Err(GftError::Constraint(format!(
                    "modulation base must be finite and nonzero, got {a}"
                )));
            }
            // 𝔛(a^{−1} z*) and X(a z)
            ZSpectrumExpr::from_parts(map(clt, &|t| t.dilated(a)), map(lt, &|t| t.dilated(1.0 / a)))
        }
        GdtftProperty::AbsGeometricModulate { a } => {
            if a == ZERO || !(a.re.is_finite() && a.im.is_finite()) {
                return Err(GftError::Constraint(format!(
                    "modulation base must be finite and nonzero, got {a}"
                )));
            }
            ZSpectrumExpr::from_parts(map(clt, &|t| t.dilated(1.0 / a)), map(lt, &|t| t.dilated(1.0 / a)))
        }
        GdtftProperty::MulNPower { m } | GdtftProperty::MulAbsNPower { m } => {
            // n ↔ w d/dw on the causal side; on the anticausal side n = −k
            let sign = match op {
                GdtftProperty::MulNPower { .. } if m % 2 == 1 => -ONE,
                _ => ONE,
            };
            let mut new_clt = clt.clone();
            let mut new_lt = lt.clone();
            for _ in 0..m {
                new_clt = map(&new_clt, &|t| t.euler_derivative());
                new_lt = map(&new_lt, &|t| t.euler_derivative());
            }
            ZSpectrumExpr::from_parts(map(&new_clt, &|t| t.scaled(sign)), new_lt)
        }
    };
    Ok(out)
}

/// `w^k` for `k ≥ 0`, one otherwise.
fn w_pow(k: i32) -> Poly {
    Poly::monomial(ONE, k.max(0) as usize)
}

/// Convenience: `z` on the unit circle scaled by `e^σ`, as a frequency.
pub fn discrete_frequency_of(z: Complex64) -> Result<DiscreteFrequency> {
    if z == ZERO {
        return Err(GftError::Domain("z = 0 has no frequency".into()));
    }
    DiscreteFrequency::new(z.norm().ln(), z.arg())
}
