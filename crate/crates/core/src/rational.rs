//! Complex polynomials, rational functions, partial fractions and term-wise
//! inversion of one-sided spectra back to signal specs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};
use crate::signal::{GatedAtom, Oscillation, Roc, SignalAtom, SignalSpec};
use crate::special::factorial;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Pole clustering tolerance.
pub const CLUSTER_TOL: f64 = 1e-9;
/// Tolerance for treating two residues as complex conjugates.
pub const CONJUGATE_TOL: f64 = 1e-9;

/// Polynomial with complex coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(pub Vec<Complex64>);

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// `c · v^k`
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut v = vec![ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Poly(vec![ONE]);
        for r in roots {
            p = p.mul(&Poly(vec![-r, ONE]));
        }
        p
    }

    fn trim(&mut self) {
        while self.0.len() > 1 && self.0.last() == Some(&ZERO) {
            self.0.pop();
        }
        if self.0.is_empty() {
            self.0.push(ZERO);
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == ZERO)
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.0.last().unwrap_or(&ZERO)
    }

    pub fn eval(&self, v: Complex64) -> Complex64 {
        self.0.iter().rev().fold(ZERO, |acc, c| acc * v + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly(vec![ZERO]);
        }
        Poly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| *c * k as f64).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|k| self.0.get(k).copied().unwrap_or(ZERO) + other.0.get(k).copied().unwrap_or(ZERO))
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![ZERO; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, den: &Poly) -> (Poly, Poly) {
        let dn = den.degree();
        let lead = den.leading();
        let mut rem = self.0.clone();
        if self.degree() < dn || self.is_zero() {
            return (Poly(vec![ZERO]), self.clone());
        }
        let mut quot = vec![ZERO; self.degree() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dn] / lead;
            quot[k] = c;
            for (j, d) in den.0.iter().enumerate() {
                rem[k + j] -= c * d;
            }
            rem[k + dn] = ZERO;
        }
        rem.truncate(dn.max(1));
        (Poly::new(quot), Poly::new(rem))
    }

    /// Taylor coefficients `p^{(j)}(a)/j!` for `j = 0..n`.
    pub fn taylor_at(&self, a: Complex64, n: usize) -> Vec<Complex64> {
        let mut work = self.0.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            if work.is_empty() {
                out.push(ZERO);
                continue;
            }
            // synthetic division by (v − a): remainder is the value
            let mut acc = ZERO;
            let mut q = vec![ZERO; work.len().saturating_sub(1)];
            for k in (0..work.len()).rev() {
                acc = acc * a + work[k];
                if k > 0 {
                    q[k - 1] = acc;
                }
            }
            out.push(acc);
            work = q;
        }
        out
    }

    /// All roots, via Aberth–Ehrlich iteration followed by Newton polishing.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 || self.is_zero() {
            return Vec::new();
        }
        // factor out roots at zero exactly
        let zeros = self.0.iter().take_while(|c| **c == ZERO).count();
        let p = Poly(self.0[zeros..].to_vec());
        let mut out = vec![ZERO; zeros];
        let m = p.degree();
        if m == 0 {
            return out;
        }
        if m == 1 {
            out.push(-p.0[0] / p.0[1]);
            return out;
        }
        let lead = p.leading();
        let monic: Vec<Complex64> = p.0.iter().map(|c| c / lead).collect();
        let mp = Poly(monic);
        let dp = mp.derivative();
        let radius = 1.0 + mp.0[..m].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..m)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64 + 0.4;
                Complex64::from_polar(0.5 * radius, theta)
            })
            .collect();
        for _ in 0..500 {
            let mut max_step: f64 = 0.0;
            for i in 0..m {
                let pv = mp.eval(z[i]);
                let dv = dp.eval(z[i]);
                if pv == ZERO {
                    continue;
                }
                let ratio = pv / dv;
                let sum: Complex64 = (0..m)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let d = z[i] - z[j];
                        if d == ZERO {
                            ZERO
                        } else {
                            1.0 / d
                        }
                    })
                    .sum();
                let step = ratio / (ONE - ratio * sum);
                if step.is_finite() {
                    z[i] -= step;
                    max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if max_step < 1e-16 {
                break;
            }
        }
        for r in &mut z {
            for _ in 0..3 {
                let dv = dp.eval(*r);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = mp.eval(*r) / dv;
                if !step.is_finite() || step.norm() > 1e-6 * (1.0 + r.norm()) {
                    break;
                }
                *r -= step;
            }
        }
        out.extend(z);
        out
    }
}

/// A pole with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleCluster {
    pub pole: Complex64,
    pub multiplicity: u32,
}

/// Group roots into distinct poles with multiplicities.
///
/// Roots are merged when the polynomial behaves like a `k`-fold root at the
/// cluster mean to within [`CLUSTER_TOL`]: the low Taylor coefficients obey
/// `|a_j| ≤ tol^{k−j} |a_k|`. A computed `k`-fold root scatters by about
/// `ε^{1/k}`, so plain distance alone cannot detect it.
pub fn cluster_roots(poly: &Poly, roots: &[Complex64]) -> Vec<PoleCluster> {
    let mut remaining: Vec<Complex64> = roots.to_vec();
    remaining.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut out = Vec::new();
    while let Some(seed) = remaining.first().copied() {
        // candidates near the seed, nearest first
        let mut idx: Vec<usize> = (0..remaining.len())
            .filter(|&i| (remaining[i] - seed).norm() < 1e-3 * (1.0 + seed.norm()))
            .collect();
        idx.sort_by(|&a, &b| (remaining[a] - seed).norm().total_cmp(&(remaining[b] - seed).norm()));
        let mut chosen = 1;
        let mut center = None;
        for k in (2..=idx.len()).rev() {
            let group: Vec<Complex64> = idx[..k].iter().map(|&i| remaining[i]).collect();
            let mean = group.iter().sum::<Complex64>() / k as f64;
            let close = group
                .iter()
                .all(|g| (g - mean).norm() <= CLUSTER_TOL * (1.0 + mean.norm()));
            if let Some(c) = multiple_root(poly, mean, k) {
                center = Some(c);
            } else if close {
                center = Some(mean);
            }
            if center.is_some() {
                chosen = k;
                break;
            }
        }
        let group: Vec<usize> = idx[..chosen].to_vec();
        let mean = center.unwrap_or(remaining[idx[0]]);
        let mut sorted = group.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        for i in sorted {
            remaining.remove(i);
        }
        out.push(PoleCluster {
            pole: mean,
            multiplicity: chosen as u32,
        });
    }
    out
}

/// Refined center if `poly` has a `k`-fold root near `c`.
fn multiple_root(poly: &Poly, mut c: Complex64, k: usize) -> Option<Complex64> {
    // Newton on p^{(k−1)}, which has a simple root at a k-fold root of p
    for _ in 0..4 {
        let t = poly.taylor_at(c, k + 1);
        if t[k] == ZERO {
            return None;
        }
        let step = t[k - 1] / (t[k] * k as f64);
        if !step.is_finite() {
            return None;
        }
        c -= step;
    }
    let t = poly.taylor_at(c, k + 1);
    let ak = t[k].norm();
    if ak == 0.0 {
        return None;
    }
    let tol = CLUSTER_TOL * (1.0 + c.norm());
    let coef_scale = poly.0.iter().map(|x| x.norm()).fold(0.0, f64::max);
    (0..k)
        .all(|j| {
            let bound = tol.powi((k - j) as i32) * ak;
            // allow for rounding in evaluating the Taylor coefficient
            let noise = 64.0 * f64::EPSILON * coef_scale * (1.0 + c.norm()).powi(poly.degree() as i32);
            t[j].norm() <= bound + noise
        })
        .then_some(c)
}

/// `e^{−v·delay} · num(v)/den(v)` with a monic denominator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub numerator: Poly,
    pub denominator: Poly,
    #[serde(default)]
    pub delay: f64,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Poly, delay: f64) -> Result<Self> {
        if denominator.is_zero() {
            return Err(GftError::Degenerate("zero denominator polynomial".into()));
        }
        if !(delay >= 0.0 && delay.is_finite()) {
            return Err(GftError::Constraint(format!("delay must be >= 0, got {delay}")));
        }
        let lead = denominator.leading();
        Ok(RationalFunction {
            numerator: numerator.scale(1.0 / lead),
            denominator: denominator.scale(1.0 / lead),
            delay,
        })
    }

    pub fn from_real(num: &[f64], den: &[f64], delay: f64) -> Result<Self> {
        RationalFunction::new(Poly::from_real(num), Poly::from_real(den), delay)
    }

    pub fn eval(&self, v: Complex64) -> Result<Complex64> {
        let d = self.denominator.eval(v);
        if d == ZERO {
            return Err(GftError::Pole(format!("denominator vanishes at {v}")));
        }
        Ok((-v * self.delay).exp() * self.numerator.eval(v) / d)
    }
}

/// `residue / (v − pole)^multiplicity`
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialFractionTerm {
    pub residue: Complex64,
    pub pole: Complex64,
    pub multiplicity: u32,
}

/// `e^{−v·delay} [Σ polynomial_k v^k + Σ residue/(v − pole)^multiplicity]`
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct PartialFractionForm {
    pub terms: Vec<PartialFractionTerm>,
    pub polynomial: Vec<Complex64>,
    #[serde(default)]
    pub delay: f64,
}

impl PartialFractionForm {
    pub fn eval(&self, v: Complex64) -> Result<Complex64> {
        let mut acc = Poly(self.polynomial.clone()).eval(v);
        for t in &self.terms {
            let d = v - t.pole;
            if d == ZERO {
                return Err(GftError::Pole(format!("evaluation at the pole {}", t.pole)));
            }
            acc += t.residue / d.powu(t.multiplicity);
        }
        Ok((-v * self.delay).exp() * acc)
    }

    pub fn poles(&self) -> Vec<Complex64> {
        self.terms.iter().map(|t| t.pole).collect()
    }
}

pub fn partial_fractions(r: &RationalFunction) -> PartialFractionForm {
    expand(r, || r.denominator.roots())
}

/// Partial fractions of `r` whose denominator equals the product of `factors`
/// up to a constant. Roots are taken factor by factor.
pub fn partial_fractions_factored(r: &RationalFunction, factors: &[Poly]) -> PartialFractionForm {
    expand(r, || {
        factors
            .iter()
            .filter(|f| f.degree() > 0)
            .flat_map(|f| f.roots())
            .collect()
    })
}

fn expand(r: &RationalFunction, roots: impl FnOnce() -> Vec<Complex64>) -> PartialFractionForm {
    let (quot, rem) = r.numerator.div_rem(&r.denominator);
    let polynomial = if quot.is_zero() { Vec::new() } else { quot.0.clone() };
    let mut terms = Vec::new();
    if !rem.is_zero() && r.denominator.degree() > 0 {
        let clusters = cluster_roots(&r.denominator, &roots());
        for (i, c) in clusters.iter().enumerate() {
            // deflated denominator: product over the other clusters
            let mut others = Poly(vec![ONE]);
            for (j, o) in clusters.iter().enumerate() {
                if i != j {
                    for _ in 0..o.multiplicity {
                        others = others.mul(&Poly(vec![-o.pole, ONE]));
                    }
                }
            }
            let k = c.multiplicity as usize;
            let num_t = rem.taylor_at(c.pole, k);
            let den_t = others.taylor_at(c.pole, k);
            let g = series_divide(&num_t, &den_t);
            for (j, gj) in g.iter().enumerate() {
                if *gj != ZERO {
                    terms.push(PartialFractionTerm {
                        residue: *gj,
                        pole: c.pole,
                        multiplicity: (k - j) as u32,
                    });
                }
            }
        }
    }
    PartialFractionForm {
        terms,
        polynomial,
        delay: r.delay,
    }
}

/// Power series quotient `a/b` truncated to `a.len()` terms.
fn series_divide(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let mut q = vec![ZERO; n];
    for i in 0..n {
        let tail: Complex64 = (0..i).map(|j| q[j] * b.get(i - j).copied().unwrap_or(ZERO)).sum();
        q[i] = (a[i] - tail) / b[0];
    }
    q
}

/// Rightmost-pole region.
pub fn roc_of(form: &PartialFractionForm) -> Roc {
    form.terms
        .iter()
        .map(|t| t.pole.re)
        .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))))
        .map_or(Roc::EntirePlane, |c| Roc::HalfPlane { c })
}

/// Inverse Laplace transform of a one-sided spectrum, supported on `t ≥ 0`.
pub fn invert_lt_part(form: &PartialFractionForm) -> Result<SignalSpec> {
    let causal = causal_inverse(form)?;
    let mut spec = SignalSpec::zero();
    for (coef, atom) in causal {
        spec.push(coef, atom);
    }
    Ok(spec)
}

/// Inverse of a complementary part written in the variable `s*`, supported
/// on `t ≤ 0`: the causal inverse reflected in time.
pub fn invert_clt_part(form: &PartialFractionForm) -> Result<SignalSpec> {
    let causal = causal_inverse(form)?;
    let mut spec = SignalSpec::zero();
    for (coef, atom) in causal {
        let mirrored = match atom {
            SignalAtom::Delta { t0 } => SignalAtom::Delta { t0: -t0 },
            SignalAtom::Gated(g) => SignalAtom::Gated(GatedAtom {
                side: g.side.flipped(),
                ..g
            }),
            other => other,
        };
        spec.push(coef, mirrored);
    }
    Ok(spec)
}

fn causal_inverse(form: &PartialFractionForm) -> Result<Vec<(Complex64, SignalAtom)>> {
    let mut out = Vec::new();
    let poly = Poly::new(form.polynomial.clone());
    if poly.degree() >= 1 && !poly.is_zero() {
        return Err(GftError::Unsupported(
            "polynomial part of degree >= 1 would need derivatives of delta".into(),
        ));
    }
    if !poly.is_zero() {
        out.push((poly.0[0], SignalAtom::Delta { t0: form.delay }));
    }
    let mut used = vec![false; form.terms.len()];
    for i in 0..form.terms.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let t = form.terms[i];
        let k = t.multiplicity;
        let norm = 1.0 / factorial(k - 1);
        let beta = t.pole.im;
        let partner = if beta.abs() > CLUSTER_TOL {
            (0..form.terms.len()).find(|&j| {
                !used[j] && {
                    let u = form.terms[j];
                    u.multiplicity == k
                        && (u.pole - t.pole.conj()).norm() <= CLUSTER_TOL * (1.0 + t.pole.norm())
                        && (u.residue - t.residue.conj()).norm() <= CONJUGATE_TOL * (1.0 + t.residue.norm())
                }
            })
        } else {
            None
        };
        match partner {
            Some(j) => {
                used[j] = true;
                // r e^{(α+jβ)t} + r̄ e^{(α−jβ)t} = e^{αt}[2Re r cos βt − 2Im r sin βt]
                let (r, w) = if beta > 0.0 {
                    (t.residue, beta)
                } else {
                    (form.terms[j].residue, -beta)
                };
                let rate = Complex64::new(t.pole.re, 0.0);
                if r.re != 0.0 {
                    out.push((
                        Complex64::new(2.0 * r.re * norm, 0.0),
                        SignalAtom::Gated(GatedAtom::causal(
                            form.delay,
                            k - 1,
                            rate,
                            Oscillation::Cos { omega: w },
                        )),
                    ));
                }
                if r.im != 0.0 {
                    out.push((
                        Complex64::new(-2.0 * r.im * norm, 0.0),
                        SignalAtom::Gated(GatedAtom::causal(
                            form.delay,
                            k - 1,
                            rate,
                            Oscillation::Sin { omega: w },
                        )),
                    ));
                }
            }
            None => out.push((
                t.residue * norm,
                SignalAtom::Gated(GatedAtom::causal(form.delay, k - 1, t.pole, Oscillation::None)),
            )),
        }
    }
    Ok(out)
}
