//! Closed-form transform pairs, symbolic spectrum expressions and the
//! time/modulation property transformers.
//!
//! A spectrum is held as two term lists: the complementary part `𝔛(s*)`,
//! evaluated at `s* = σ − jω`, and the Laplace part `X(s)`, evaluated at
//! `s = σ + jω`. Each term is a function of a generic variable `v`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};
use crate::signal::{ComplexFrequency, GatedAtom, Orientation, Oscillation, Roc, Side, SignalAtom, SignalSpec};
use crate::special::{binomial, gamma};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const J: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const INTEGER_TOL: f64 = 1e-12;
const AXIS_TOL: f64 = 1e-12;

/// One term of a spectrum in the variable `v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumTerm {
    /// `coef · v^degree`; degree 0 is the constant produced by deltas.
    Monomial { coef: Complex64, degree: u32 },
    /// `coef / (v − pole)^multiplicity`
    RationalPole {
        coef: Complex64,
        pole: Complex64,
        multiplicity: u32,
    },
    /// `coef / (v − center)^exponent`, principal branch.
    FractionalPower {
        coef: Complex64,
        center: Complex64,
        exponent: f64,
    },
    /// `coef · ln(v − center)`, principal branch.
    Logarithm { coef: Complex64, center: Complex64 },
    /// `e^{−v·t0} · inner`
    Delay { t0: f64, inner: Box<SpectrumTerm> },
}

impl SpectrumTerm {
    pub fn unity() -> Self {
        SpectrumTerm::Monomial { coef: ONE, degree: 0 }
    }

    pub fn constant(coef: Complex64) -> Self {
        SpectrumTerm::Monomial { coef, degree: 0 }
    }

    pub fn pole(coef: Complex64, pole: Complex64, multiplicity: u32) -> Self {
        SpectrumTerm::RationalPole {
            coef,
            pole,
            multiplicity,
        }
    }

    pub fn delayed(t0: f64, inner: SpectrumTerm) -> Self {
        if t0 == 0.0 {
            return inner;
        }
        match inner {
            SpectrumTerm::Delay { t0: t1, inner } => SpectrumTerm::Delay { t0: t0 + t1, inner },
            other => SpectrumTerm::Delay {
                t0,
                inner: Box::new(other),
            },
        }
    }

    pub fn coef(&self) -> Complex64 {
        match self {
            SpectrumTerm::Monomial { coef, .. }
            | SpectrumTerm::RationalPole { coef, .. }
            | SpectrumTerm::FractionalPower { coef, .. }
            | SpectrumTerm::Logarithm { coef, .. } => *coef,
            SpectrumTerm::Delay { inner, .. } => inner.coef(),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> SpectrumTerm {
        let mut t = self.clone();
        t.scale_in_place(factor);
        t
    }

    fn scale_in_place(&mut self, factor: Complex64) {
        match self {
            SpectrumTerm::Monomial { coef, .. }
            | SpectrumTerm::RationalPole { coef, .. }
            | SpectrumTerm::FractionalPower { coef, .. }
            | SpectrumTerm::Logarithm { coef, .. } => *coef *= factor,
            SpectrumTerm::Delay { inner, .. } => inner.scale_in_place(factor),
        }
    }

    /// Location whose real part bounds the region of convergence.
    pub fn singularity(&self) -> Option<Complex64> {
        match self {
            SpectrumTerm::Monomial { .. } => None,
            SpectrumTerm::RationalPole { pole, .. } => Some(*pole),
            SpectrumTerm::FractionalPower { center, .. } | SpectrumTerm::Logarithm { center, .. } => Some(*center),
            SpectrumTerm::Delay { inner, .. } => inner.singularity(),
        }
    }

    pub fn eval(&self, v: Complex64) -> Result<Complex64> {
        Ok(match self {
            SpectrumTerm::Monomial { coef, degree } => *coef * v.powu(*degree),
            SpectrumTerm::RationalPole {
                coef,
                pole,
                multiplicity,
            } => {
                let d = v - pole;
                if d == ZERO {
                    return Err(GftError::Pole(format!("evaluation at the pole {pole}")));
                }
                *coef / d.powu(*multiplicity)
            }
            SpectrumTerm::FractionalPower { coef, center, exponent } => {
                let d = v - center;
                if d == ZERO {
                    return Err(GftError::Pole(format!("evaluation at the branch point {center}")));
                }
                *coef / d.powf(*exponent)
            }
            SpectrumTerm::Logarithm { coef, center } => {
                let d = v - center;
                if d == ZERO {
                    return Err(GftError::Pole(format!("evaluation at the branch point {center}")));
                }
                *coef * d.ln()
            }
            SpectrumTerm::Delay { t0, inner } => (-v * *t0).exp() * inner.eval(v)?,
        })
    }

    fn delay_and_core(&self) -> (f64, &SpectrumTerm) {
        match self {
            SpectrumTerm::Delay { t0, inner } => {
                let (d, core) = inner.delay_and_core();
                (d + t0, core)
            }
            other => (0.0, other),
        }
    }

    /// Key identifying like terms (everything except the coefficient).
    fn like(&self, other: &SpectrumTerm) -> bool {
        let (d1, c1) = self.delay_and_core();
        let (d2, c2) = other.delay_and_core();
        if (d1 - d2).abs() > 1e-14 * (1.0 + d1.abs()) {
            return false;
        }
        let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-12 * (1.0 + a.norm());
        match (c1, c2) {
            (SpectrumTerm::Monomial { degree: a, .. }, SpectrumTerm::Monomial { degree: b, .. }) => a == b,
            (
                SpectrumTerm::RationalPole {
                    pole: p1,
                    multiplicity: k1,
                    ..
                },
                SpectrumTerm::RationalPole {
                    pole: p2,
                    multiplicity: k2,
                    ..
                },
            ) => k1 == k2 && close(*p1, *p2),
            (
                SpectrumTerm::FractionalPower {
                    center: c1,
                    exponent: e1,
                    ..
                },
                SpectrumTerm::FractionalPower {
                    center: c2,
                    exponent: e2,
                    ..
                },
            ) => (e1 - e2).abs() < 1e-14 && close(*c1, *c2),
            (SpectrumTerm::Logarithm { center: c1, .. }, SpectrumTerm::Logarithm { center: c2, .. }) => close(*c1, *c2),
            _ => false,
        }
    }

    /// `f(v) ↦ f(v + d)`.
    pub fn shifted(&self, d: Complex64) -> Vec<SpectrumTerm> {
        match self {
            SpectrumTerm::Monomial { coef, degree } => (0..=*degree)
                .map(|k| SpectrumTerm::Monomial {
                    coef: *coef * binomial(*degree, k) * d.powu(*degree - k),
                    degree: k,
                })
                .collect(),
            SpectrumTerm::RationalPole {
                coef,
                pole,
                multiplicity,
            } => vec![SpectrumTerm::pole(*coef, *pole - d, *multiplicity)],
            SpectrumTerm::FractionalPower { coef, center, exponent } => vec![SpectrumTerm::FractionalPower {
                coef: *coef,
                center: *center - d,
                exponent: *exponent,
            }],
            SpectrumTerm::Logarithm { coef, center } => vec![SpectrumTerm::Logarithm {
                coef: *coef,
                center: *center - d,
            }],
            SpectrumTerm::Delay { t0, inner } => {
                let factor = (-d * *t0).exp();
                inner
                    .shifted(d)
                    .into_iter()
                    .map(|t| SpectrumTerm::delayed(*t0, t.scaled(factor)))
                    .collect()
            }
        }
    }

    /// `f(v) ↦ f(v/a)/a` for `a > 0`.
    pub fn time_scaled(&self, a: f64) -> Vec<SpectrumTerm> {
        match self {
            SpectrumTerm::Monomial { coef, degree } => vec![SpectrumTerm::Monomial {
                coef: *coef * a.powi(-(*degree as i32) - 1),
                degree: *degree,
            }],
            SpectrumTerm::RationalPole {
                coef,
                pole,
                multiplicity,
            } => vec![SpectrumTerm::pole(
                *coef * a.powi(*multiplicity as i32 - 1),
                *pole * a,
                *multiplicity,
            )],
            SpectrumTerm::FractionalPower { coef, center, exponent } => vec![SpectrumTerm::FractionalPower {
                coef: *coef * a.powf(*exponent - 1.0),
                center: *center * a,
                exponent: *exponent,
            }],
            SpectrumTerm::Logarithm { coef, center } => vec![
                SpectrumTerm::Logarithm {
                    coef: *coef / a,
                    center: *center * a,
                },
                SpectrumTerm::constant(-*coef * a.ln() / a),
            ],
            SpectrumTerm::Delay { t0, inner } => inner
                .time_scaled(a)
                .into_iter()
                .map(|t| SpectrumTerm::delayed(*t0 / a, t))
                .collect(),
        }
    }

    /// `d/dv f(v)`.
    pub fn derivative(&self) -> Vec<SpectrumTerm> {
        match self {
            SpectrumTerm::Monomial { coef, degree } => {
                if *degree == 0 {
                    vec![]
                } else {
                    vec![SpectrumTerm::Monomial {
                        coef: *coef * *degree as f64,
                        degree: degree - 1,
                    }]
                }
            }
            SpectrumTerm::RationalPole {
                coef,
                pole,
                multiplicity,
            } => vec![SpectrumTerm::pole(
                -*coef * *multiplicity as f64,
                *pole,
                multiplicity + 1,
            )],
            SpectrumTerm::FractionalPower { coef, center, exponent } => vec![SpectrumTerm::FractionalPower {
                coef: -*coef * *exponent,
                center: *center,
                exponent: exponent + 1.0,
            }],
            SpectrumTerm::Logarithm { coef, center } => vec![SpectrumTerm::pole(*coef, *center, 1)],
            SpectrumTerm::Delay { t0, inner } => {
                let mut out: Vec<SpectrumTerm> = inner
                    .derivative()
                    .into_iter()
                    .map(|t| SpectrumTerm::delayed(*t0, t))
                    .collect();
                out.push(SpectrumTerm::delayed(*t0, inner.scaled(Complex64::new(-*t0, 0.0))));
                out
            }
        }
    }

    /// `v · f(v)`.
    pub fn times_v(&self) -> Result<Vec<SpectrumTerm>> {
        Ok(match self {
            SpectrumTerm::Monomial { coef, degree } => vec![SpectrumTerm::Monomial {
                coef: *coef,
                degree: degree + 1,
            }],
            // v/(v−p)^k = 1/(v−p)^{k−1} + p/(v−p)^k
            SpectrumTerm::RationalPole {
                coef,
                pole,
                multiplicity,
            } => {
                let lower = if *multiplicity == 1 {
                    SpectrumTerm::constant(*coef)
                } else {
                    SpectrumTerm::pole(*coef, *pole, multiplicity - 1)
                };
                vec![lower, SpectrumTerm::pole(*coef * *pole, *pole, *multiplicity)]
            }
            SpectrumTerm::FractionalPower { coef, center, exponent } => {
                if *exponent < 1.0 {
                    return Err(GftError::Unsupported(format!(
                        "v·(v−c)^(−{exponent}) leaves a positive fractional power"
                    )));
                }
                vec![
                    SpectrumTerm::FractionalPower {
                        coef: *coef,
                        center: *center,
                        exponent: exponent - 1.0,
                    },
                    SpectrumTerm::FractionalPower {
                        coef: *coef * *center,
                        center: *center,
                        exponent: *exponent,
                    },
                ]
            }
            SpectrumTerm::Logarithm { .. } => {
                return Err(GftError::Unsupported("v·ln(v−c) is outside the term vocabulary".into()))
            }
            SpectrumTerm::Delay { t0, inner } => inner
                .times_v()?
                .into_iter()
                .map(|t| SpectrumTerm::delayed(*t0, t))
                .collect(),
        })
    }

    /// `f(v) / v`.
    pub fn over_v(&self) -> Result<Vec<SpectrumTerm>> {
        Ok(match self {
            SpectrumTerm::Monomial { coef, degree } => {
                if *degree == 0 {
                    vec![SpectrumTerm::pole(*coef, ZERO, 1)]
                } else {
                    vec![SpectrumTerm::Monomial {
                        coef: *coef,
                        degree: degree - 1,
                    }]
                }
            }
            SpectrumTerm::RationalPole {
                coef,
                pole,
                multiplicity,
            } => {
                if *pole == ZERO {
                    vec![SpectrumTerm::pole(*coef, ZERO, multiplicity + 1)]
                } else {
                    // 1/(v(v−p)^k) = (1/p)[1/(v−p)^k − 1/(v(v−p)^{k−1})]
                    let mut out = Vec::new();
                    let mut scale = *coef;
                    for k in (1..=*multiplicity).rev() {
                        scale /= *pole;
                        out.push(SpectrumTerm::pole(scale, *pole, k));
                        scale = -scale;
                    }
                    out.push(SpectrumTerm::pole(scale, ZERO, 1));
                    out
                }
            }
            SpectrumTerm::FractionalPower { coef, center, exponent } => {
                if *center != ZERO {
                    return Err(GftError::Unsupported(
                        "division by v of a shifted fractional power".into(),
                    ));
                }
                vec![SpectrumTerm::FractionalPower {
                    coef: *coef,
                    center: ZERO,
                    exponent: exponent + 1.0,
                }]
            }
            SpectrumTerm::Logarithm { .. } => {
                return Err(GftError::Unsupported("ln(v−c)/v is outside the term vocabulary".into()))
            }
            SpectrumTerm::Delay { t0, inner } => inner
                .over_v()?
                .into_iter()
                .map(|t| SpectrumTerm::delayed(*t0, t))
                .collect(),
        })
    }
}

fn eval_terms(terms: &[SpectrumTerm], v: Complex64) -> Result<Complex64> {
    terms.iter().try_fold(ZERO, |acc, t| Ok(acc + t.eval(v)?))
}

fn roc_of_terms<'a>(terms: impl IntoIterator<Item = &'a SpectrumTerm>) -> Roc {
    let mut c = f64::NEG_INFINITY;
    for t in terms {
        if let Some(p) = t.singularity() {
            c = c.max(p.re);
        }
    }
    if c == f64::NEG_INFINITY {
        Roc::EntirePlane
    } else {
        Roc::HalfPlane { c }
    }
}

/// Merge like terms and drop negligible coefficients.
pub fn normalize_terms(terms: Vec<SpectrumTerm>) -> Vec<SpectrumTerm> {
    let mut out: Vec<SpectrumTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(existing) = out.iter_mut().find(|e| e.like(&t)) {
            let c = t.coef();
            let ec = existing.coef();
            if ec != ZERO {
                existing.scale_in_place((ec + c) / ec);
            } else {
                *existing = t;
            }
        } else {
            out.push(t);
        }
    }
    let scale = out.iter().map(|t| t.coef().norm()).fold(0.0, f64::max);
    out.retain(|t| t.coef().norm() > 1e-13 * scale && t.coef() != ZERO);
    out
}

/// A transform value `𝔛(s*) + X(s)` with its region of convergence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumExpr {
    pub clt_part: Vec<SpectrumTerm>,
    pub lt_part: Vec<SpectrumTerm>,
    pub roc: Roc,
}

impl Default for SpectrumExpr {
    fn default() -> Self {
        SpectrumExpr::zero()
    }
}

impl SpectrumExpr {
    pub fn zero() -> Self {
        SpectrumExpr {
            clt_part: Vec::new(),
            lt_part: Vec::new(),
            roc: Roc::EntirePlane,
        }
    }

    /// Build from parts, deriving the region from the term singularities.
    pub fn from_parts(clt_part: Vec<SpectrumTerm>, lt_part: Vec<SpectrumTerm>) -> Self {
        let clt_part = normalize_terms(clt_part);
        let lt_part = normalize_terms(lt_part);
        let roc = roc_of_terms(clt_part.iter().chain(lt_part.iter()));
        SpectrumExpr { clt_part, lt_part, roc }
    }

    pub fn is_zero(&self) -> bool {
        self.clt_part.is_empty() && self.lt_part.is_empty()
    }

    pub fn plus(&self, other: &SpectrumExpr) -> SpectrumExpr {
        let mut clt = self.clt_part.clone();
        clt.extend(other.clt_part.iter().cloned());
        let mut lt = self.lt_part.clone();
        lt.extend(other.lt_part.iter().cloned());
        let mut out = SpectrumExpr::from_parts(clt, lt);
        out.roc = self.roc.intersect(&other.roc).intersect(&out.roc);
        out
    }

    pub fn scaled(&self, factor: Complex64) -> SpectrumExpr {
        let mut out = SpectrumExpr::from_parts(
            self.clt_part.iter().map(|t| t.scaled(factor)).collect(),
            self.lt_part.iter().map(|t| t.scaled(factor)).collect(),
        );
        out.roc = self.roc.intersect(&out.roc);
        out
    }

    pub fn eval_clt(&self, s_conj: Complex64) -> Result<Complex64> {
        eval_terms(&self.clt_part, s_conj)
    }

    pub fn eval_lt(&self, s: Complex64) -> Result<Complex64> {
        eval_terms(&self.lt_part, s)
    }

    fn map_parts(
        &self,
        clt: impl Fn(&SpectrumTerm) -> Result<Vec<SpectrumTerm>>,
        lt: impl Fn(&SpectrumTerm) -> Result<Vec<SpectrumTerm>>,
    ) -> Result<SpectrumExpr> {
        let mut c = Vec::new();
        for t in &self.clt_part {
            c.extend(clt(t)?);
        }
        let mut l = Vec::new();
        for t in &self.lt_part {
            l.extend(lt(t)?);
        }
        Ok(SpectrumExpr::from_parts(c, l))
    }
}

/// Evaluate `𝔛(s*) + X(s)` at `f`.
pub fn eval_spectrum(expr: &SpectrumExpr, f: ComplexFrequency) -> Result<Complex64> {
    expr.roc.check(f.sigma)?;
    Ok(expr.eval_clt(f.s_conj())? + expr.eval_lt(f.s())?)
}

/// One-sided piece `coef · t^alpha · e^{beta t}` for `t ≥ delay` (shifted by
/// the delay) or an impulse, describing `x(t)` or `x(−t)` on `t > 0`.
#[derive(Clone, Copy, Debug)]
enum HalfPiece {
    Smooth {
        coef: Complex64,
        alpha: f64,
        beta: Complex64,
        delay: f64,
    },
    Impulse {
        coef: Complex64,
        at: f64,
    },
}

fn smooth(coef: Complex64, alpha: f64, beta: Complex64) -> HalfPiece {
    HalfPiece::Smooth {
        coef,
        alpha,
        beta,
        delay: 0.0,
    }
}

/// (anticausal pieces as functions of −t, causal pieces)
fn half_pieces(atom: &SignalAtom) -> (Vec<HalfPiece>, Vec<HalfPiece>) {
    let half = Complex64::new(0.5, 0.0);
    match *atom {
        SignalAtom::Delta { t0 } => {
            let p = HalfPiece::Impulse {
                coef: ONE,
                at: t0.abs(),
            };
            if t0 >= 0.0 {
                (vec![], vec![p])
            } else {
                (vec![p], vec![])
            }
        }
        SignalAtom::Constant => (vec![smooth(ONE, 0.0, ZERO)], vec![smooth(ONE, 0.0, ZERO)]),
        SignalAtom::Signum => (vec![smooth(-ONE, 0.0, ZERO)], vec![smooth(ONE, 0.0, ZERO)]),
        SignalAtom::UnitStep { orientation } => match orientation {
            Orientation::Forward => (vec![], vec![smooth(ONE, 0.0, ZERO)]),
            Orientation::Reversed => (vec![smooth(ONE, 0.0, ZERO)], vec![]),
        },
        SignalAtom::TwoSidedExp { a } => (vec![smooth(ONE, 0.0, a)], vec![smooth(ONE, 0.0, -a)]),
        SignalAtom::AbsExp { a } => (vec![smooth(ONE, 0.0, -a)], vec![smooth(ONE, 0.0, -a)]),
        SignalAtom::ComplexExp { omega0 } => {
            let a = Complex64::new(0.0, -omega0);
            (vec![smooth(ONE, 0.0, a)], vec![smooth(ONE, 0.0, -a)])
        }
        SignalAtom::Cosine { omega0 } => {
            let w = J * omega0;
            let both = vec![smooth(half, 0.0, w), smooth(half, 0.0, -w)];
            (both.clone(), both)
        }
        SignalAtom::Sine { omega0 } => {
            let w = J * omega0;
            let c = 1.0 / (2.0 * J);
            (
                vec![smooth(-c, 0.0, w), smooth(c, 0.0, -w)],
                vec![smooth(c, 0.0, w), smooth(-c, 0.0, -w)],
            )
        }
        SignalAtom::Power { m } => (
            vec![smooth(Complex64::from_polar(1.0, PI * m), m, ZERO)],
            vec![smooth(ONE, m, ZERO)],
        ),
        SignalAtom::AbsPower { m } => (vec![smooth(ONE, m, ZERO)], vec![smooth(ONE, m, ZERO)]),
        SignalAtom::InversePower { m } => (
            vec![smooth(Complex64::from_polar(1.0, -PI * m), -m, ZERO)],
            vec![smooth(ONE, -m, ZERO)],
        ),
        SignalAtom::Gated(g) => {
            let pieces = gated_pieces(&g);
            match g.side {
                Side::Causal => (vec![], pieces),
                Side::Anticausal => (pieces, vec![]),
            }
        }
    }
}

fn gated_pieces(g: &GatedAtom) -> Vec<HalfPiece> {
    let k = g.power as f64;
    let mk = |coef: Complex64, beta: Complex64| HalfPiece::Smooth {
        coef,
        alpha: k,
        beta,
        delay: g.t0,
    };
    match g.oscillation {
        Oscillation::None => vec![mk(ONE, g.rate)],
        Oscillation::Cos { omega } => vec![
            mk(Complex64::new(0.5, 0.0), g.rate + J * omega),
            mk(Complex64::new(0.5, 0.0), g.rate - J * omega),
        ],
        Oscillation::Sin { omega } => {
            let c = 1.0 / (2.0 * J);
            vec![mk(c, g.rate + J * omega), mk(-c, g.rate - J * omega)]
        }
    }
}

fn piece_term(piece: HalfPiece, p: f64) -> Result<Option<SpectrumTerm>> {
    match piece {
        HalfPiece::Impulse { coef, at } => {
            let weight = if p == 0.0 { 1.0 } else { at.powf(p) };
            if weight == 0.0 {
                return Ok(None);
            }
            Ok(Some(SpectrumTerm::delayed(at, SpectrumTerm::constant(coef * weight))))
        }
        HalfPiece::Smooth {
            coef,
            alpha,
            beta,
            delay,
        } => {
            if delay > 0.0 && p != 0.0 {
                return Err(GftError::Unsupported(
                    "a power weight on a delayed one-sided atom has no closed form".into(),
                ));
            }
            let order = alpha + p + 1.0;
            if order <= 0.0 {
                return Err(GftError::Constraint(format!(
                    "half-line transform of t^{alpha} with weight exponent {p} diverges at 0 \
                     (needs exponent sum > -1)"
                )));
            }
            let c = coef * gamma(Complex64::new(order, 0.0))?;
            let rounded = order.round();
            let term = if (order - rounded).abs() < INTEGER_TOL {
                SpectrumTerm::pole(c, beta, rounded as u32)
            } else {
                SpectrumTerm::FractionalPower {
                    coef: c,
                    center: beta,
                    exponent: order,
                }
            };
            Ok(Some(SpectrumTerm::delayed(delay, term)))
        }
    }
}

/// Closed-form transform of a signal spec.
///
/// `weight_p` applies the `|t|^p` weight to every atom; inverse powers
/// `1/t^m` need `p > m − 1`.
pub fn lookup_gft(spec: &SignalSpec, weight_p: Option<f64>) -> Result<SpectrumExpr> {
    spec.validate()?;
    let p = weight_p.unwrap_or(0.0);
    if !(p >= 0.0 && p.is_finite()) {
        return Err(GftError::Constraint(format!("weight exponent p must be >= 0, got {p}")));
    }
    let mut clt = Vec::new();
    let mut lt = Vec::new();
    for term in &spec.terms {
        if let SignalAtom::InversePower { m } = term.atom {
            if p <= m - 1.0 {
                return Err(GftError::Constraint(format!(
                    "1/t^{m} needs a weight exponent p > {}, got p = {p}",
                    m - 1.0
                )));
            }
        }
        let (anti, causal) = half_pieces(&term.atom);
        for piece in anti {
            if let Some(t) = piece_term(piece, p)? {
                clt.push(t.scaled(term.coef));
            }
        }
        for piece in causal {
            if let Some(t) = piece_term(piece, p)? {
                lt.push(t.scaled(term.coef));
            }
        }
    }
    Ok(SpectrumExpr::from_parts(clt, lt))
}

/// Time-domain property applied to a spectrum.
#[derive(Clone, Debug, PartialEq)]
pub enum TimeProperty {
    /// `x(t − sgn(t)·t0)`, `t0 ≥ 0`
    SgnDelay(f64),
    /// `x(a t)`, `a > 0`
    Scale(f64),
    /// `x(−t)`
    Reverse,
    /// `m`-th derivative. `right_ics` are `x(0⁺), x'(0⁺), …`; `left_ics`
    /// default to the same values and only differ for signals with a kink
    /// or jump at the origin.
    Derivative {
        order: u32,
        right_ics: Vec<Complex64>,
        left_ics: Option<Vec<Complex64>>,
    },
    /// `∫_0^t x(τ)dτ`
    RunningIntegral,
}

pub fn apply_time_property(expr: &SpectrumExpr, op: &TimeProperty) -> Result<SpectrumExpr> {
    match op {
        TimeProperty::SgnDelay(t0) => {
            if !(*t0 >= 0.0 && t0.is_finite()) {
                return Err(GftError::Constraint(format!("delay must be >= 0, got {t0}")));
            }
            let wrap = |t: &SpectrumTerm| Ok(vec![SpectrumTerm::delayed(*t0, t.clone())]);
            let mut out = expr.map_parts(wrap, wrap)?;
            out.roc = out.roc.intersect(&expr.roc);
            Ok(out)
        }
        TimeProperty::Scale(a) => {
            if !(*a > 0.0 && a.is_finite()) {
                return Err(GftError::Constraint(format!(
                    "time scale must be > 0 (use reverse for mirrored scaling), got {a}"
                )));
            }
            let f = |t: &SpectrumTerm| Ok(t.time_scaled(*a));
            let mut out = expr.map_parts(f, f)?;
            out.roc = out.roc.intersect(&scale_roc(expr.roc, *a));
            Ok(out)
        }
        TimeProperty::Reverse => Ok(SpectrumExpr {
            clt_part: expr.lt_part.clone(),
            lt_part: expr.clt_part.clone(),
            roc: expr.roc,
        }),
        TimeProperty::Derivative {
            order,
            right_ics,
            left_ics,
        } => derivative_property(expr, *order, right_ics, left_ics.as_deref()),
        TimeProperty::RunningIntegral => {
            let mut clt = Vec::new();
            for t in &expr.clt_part {
                clt.extend(t.over_v()?.into_iter().map(|x| x.scaled(-ONE)));
            }
            let mut lt = Vec::new();
            for t in &expr.lt_part {
                lt.extend(t.over_v()?);
            }
            let mut out = SpectrumExpr::from_parts(clt, lt);
            out.roc = out.roc.intersect(&expr.roc).intersect(&Roc::HalfPlane { c: 0.0 });
            Ok(out)
        }
    }
}

fn scale_roc(roc: Roc, a: f64) -> Roc {
    match roc {
        Roc::HalfPlane { c } => Roc::HalfPlane { c: c * a },
        other => other,
    }
}

fn times_v_power(t: &SpectrumTerm, m: u32) -> Result<Vec<SpectrumTerm>> {
    let mut cur = vec![t.clone()];
    for _ in 0..m {
        let mut next = Vec::new();
        for x in &cur {
            next.extend(x.times_v()?);
        }
        cur = normalize_terms(next);
    }
    Ok(cur)
}

fn derivative_property(
    expr: &SpectrumExpr,
    m: u32,
    right: &[Complex64],
    left: Option<&[Complex64]>,
) -> Result<SpectrumExpr> {
    if m == 0 {
        return Ok(expr.clone());
    }
    let left = left.unwrap_or(right);
    if right.len() != m as usize || left.len() != m as usize {
        return Err(GftError::Argument(format!(
            "derivative of order {m} needs {m} initial values per side"
        )));
    }
    let sign = if m.is_multiple_of(2) { ONE } else { -ONE };
    // 𝔛: (−v)^m 𝔛(v) + Σ_{i=1}^m (−v)^{m−i} x^{(i−1)}(0⁻)
    let mut clt = Vec::new();
    for t in &expr.clt_part {
        clt.extend(times_v_power(t, m)?.into_iter().map(|x| x.scaled(sign)));
    }
    // X: v^m X(v) − Σ_{i=1}^m v^{m−i} x^{(i−1)}(0⁺)
    let mut lt = Vec::new();
    for t in &expr.lt_part {
        lt.extend(times_v_power(t, m)?);
    }
    for i in 1..=m {
        let deg = m - i;
        let neg = if deg.is_multiple_of(2) { ONE } else { -ONE };
        clt.push(SpectrumTerm::Monomial {
            coef: neg * left[(i - 1) as usize],
            degree: deg,
        });
        lt.push(SpectrumTerm::Monomial {
            coef: -right[(i - 1) as usize],
            degree: deg,
        });
    }
    let mut out = SpectrumExpr::from_parts(clt, lt);
    out.roc = out.roc.intersect(&expr.roc);
    Ok(out)
}

/// Modulation-type property applied to a spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModulationProperty {
    /// `e^{−a t} x(t)`
    ExpTwoSided(Complex64),
    /// `e^{−a|t|} x(t)`
    ExpAbs(Complex64),
    /// `t^m x(t)`
    MulPower(u32),
    /// `|t|^m x(t)`
    MulAbsPower(u32),
    /// `x(t)/t`
    DivT,
    /// `x(t)/|t|`
    DivAbsT,
}

pub fn apply_modulation_property(expr: &SpectrumExpr, op: ModulationProperty) -> Result<SpectrumExpr> {
    match op {
        ModulationProperty::ExpTwoSided(a) => expr.map_parts(|t| Ok(t.shifted(-a)), |t| Ok(t.shifted(a))),
        ModulationProperty::ExpAbs(a) => expr.map_parts(|t| Ok(t.shifted(a)), |t| Ok(t.shifted(a))),
        ModulationProperty::MulPower(m) => {
            let lt_sign = if m % 2 == 0 { ONE } else { -ONE };
            let out = expr.map_parts(
                |t| Ok(nth_derivative(t, m)),
                |t| Ok(scale_all(nth_derivative(t, m), lt_sign)),
            )?;
            Ok(keep_roc(out, expr.roc))
        }
        ModulationProperty::MulAbsPower(m) => {
            let sign = if m % 2 == 0 { ONE } else { -ONE };
            let out = expr.map_parts(
                |t| Ok(scale_all(nth_derivative(t, m), sign)),
                |t| Ok(scale_all(nth_derivative(t, m), sign)),
            )?;
            Ok(keep_roc(out, expr.roc))
        }
        ModulationProperty::DivT => {
            let clt = log_antiderivative(&expr.clt_part, -ONE)?;
            let lt = log_antiderivative(&expr.lt_part, ONE)?;
            Ok(keep_roc(SpectrumExpr::from_parts(clt, lt), expr.roc))
        }
        ModulationProperty::DivAbsT => {
            let clt = log_antiderivative(&expr.clt_part, ONE)?;
            let lt = log_antiderivative(&expr.lt_part, ONE)?;
            Ok(keep_roc(SpectrumExpr::from_parts(clt, lt), expr.roc))
        }
    }
}

fn keep_roc(mut out: SpectrumExpr, roc: Roc) -> SpectrumExpr {
    out.roc = out.roc.intersect(&roc);
    out
}

fn scale_all(terms: Vec<SpectrumTerm>, f: Complex64) -> Vec<SpectrumTerm> {
    terms.into_iter().map(|t| t.scaled(f)).collect()
}

fn nth_derivative(t: &SpectrumTerm, m: u32) -> Vec<SpectrumTerm> {
    let mut cur = vec![t.clone()];
    for _ in 0..m {
        cur = normalize_terms(cur.iter().flat_map(|x| x.derivative()).collect());
    }
    cur
}

/// `∫_v^∞ Σ r_i/(u − p_i) du = −Σ r_i ln(v − p_i)` when `Σ r_i = 0`; the
/// result is multiplied by `sign`.
fn log_antiderivative(terms: &[SpectrumTerm], sign: Complex64) -> Result<Vec<SpectrumTerm>> {
    let mut out = Vec::new();
    let mut residue_sum = ZERO;
    let mut scale = 0.0f64;
    for t in terms {
        match t {
            SpectrumTerm::RationalPole {
                coef,
                pole,
                multiplicity: 1,
            } => {
                residue_sum += coef;
                scale = scale.max(coef.norm());
                out.push(SpectrumTerm::Logarithm {
                    coef: -*coef * sign,
                    center: *pole,
                });
            }
            other => {
                return Err(GftError::Unsupported(format!(
                    "division by t needs simple-pole terms only, found {other:?}"
                )))
            }
        }
    }
    if residue_sum.norm() > 1e-12 * scale.max(1.0) {
        return Err(GftError::Unsupported(
            "division by t: residues of a part do not cancel, so x(t)/t is not integrable at 0".into(),
        ));
    }
    Ok(out)
}

/// Coefficient of `δ(ω − location)` in a distributional limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionalAtom {
    pub location: f64,
    pub weight: Complex64,
}

/// Result of the symbolic `σ → 0` limit at one `ω`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FtLimit {
    Finite {
        value: Complex64,
    },
    Distributional {
        atoms: Vec<DistributionalAtom>,
        regular: Complex64,
    },
}

/// `σ → 0` limit of a spectrum at frequency `ω`.
///
/// A simple pole of either part on the imaginary axis contributes
/// `π r δ(ω − ω0)` plus its principal-value term; a matched pair from both
/// parts therefore gives `2π r δ(ω − ω0)` with cancelling regular parts.
/// Higher-order axis poles have no function-valued limit and are reported
/// as divergent, as is an unmatched simple pole evaluated at `ω = ω0`.
pub fn ft_limit_symbolic(expr: &SpectrumExpr, omega: f64) -> Result<FtLimit> {
    if let Roc::HalfPlane { c } = expr.roc {
        if c > AXIS_TOL {
            return Err(GftError::Region(format!(
                "the region Re{{s}} > {c} does not reach the imaginary axis"
            )));
        }
    }
    let mut atoms: Vec<DistributionalAtom> = Vec::new();
    // Principal-value coefficients at each axis location, to detect a
    // singular regular part when ω sits on a pole.
    let mut pv: Vec<(f64, Complex64)> = Vec::new();
    let mut regular = ZERO;
    let mut singular_here = false;

    let parts: [(&[SpectrumTerm], bool); 2] = [(&expr.clt_part, true), (&expr.lt_part, false)];
    for (terms, is_clt) in parts {
        // clt variable: s* = −jω; lt variable: s = jω
        let v = if is_clt {
            Complex64::new(0.0, -omega)
        } else {
            Complex64::new(0.0, omega)
        };
        for term in terms {
            let (delay, core) = term.delay_and_core();
            let on_axis = core.singularity().is_some_and(|p| p.re.abs() <= AXIS_TOL);
            if !on_axis {
                regular += term.eval(v)?;
                continue;
            }
            let p = core.singularity().unwrap_or(ZERO);
            let p = Complex64::new(0.0, p.im);
            // location in ω of the singular point
            let location = if is_clt { -p.im } else { p.im };
            let at_point = (omega - location).abs() <= AXIS_TOL * (1.0 + omega.abs());
            match core {
                SpectrumTerm::RationalPole {
                    coef, multiplicity: 1, ..
                } => {
                    let r = *coef * (-p * delay).exp();
                    push_atom(&mut atoms, location, r * PI);
                    // regular part r/(v − p) = ±r / (j(ω − ω0))
                    let pv_coef = if is_clt { -r } else { r };
                    push_pv(&mut pv, location, pv_coef);
                    if at_point {
                        singular_here = true;
                    } else {
                        regular += term.eval(v)?;
                    }
                }
                SpectrumTerm::RationalPole { multiplicity, .. } => {
                    return Err(GftError::Divergent(format!(
                        "pole of order {multiplicity} on the imaginary axis at ω = {location}; \
                         the limit is not a delta-type distribution"
                    )));
                }
                _ => {
                    if at_point {
                        return Err(GftError::Divergent(format!(
                            "branch point on the imaginary axis at ω = {location}"
                        )));
                    }
                    regular += term.eval(v)?;
                }
            }
        }
    }
    if singular_here {
        let residual = pv
            .iter()
            .filter(|(loc, _)| (omega - loc).abs() <= AXIS_TOL * (1.0 + omega.abs()))
            .map(|(_, c)| *c)
            .sum::<Complex64>();
        if residual.norm() > 1e-12 {
            return Err(GftError::Divergent(format!(
                "unmatched simple pole on the imaginary axis at ω = {omega}"
            )));
        }
    }
    atoms.retain(|a| a.weight.norm() > 1e-14);
    if atoms.is_empty() {
        Ok(FtLimit::Finite { value: regular })
    } else {
        atoms.sort_by(|a, b| a.location.total_cmp(&b.location));
        Ok(FtLimit::Distributional { atoms, regular })
    }
}

fn push_atom(atoms: &mut Vec<DistributionalAtom>, location: f64, weight: Complex64) {
    if let Some(a) = atoms
        .iter_mut()
        .find(|a| (a.location - location).abs() <= AXIS_TOL * (1.0 + location.abs()))
    {
        a.weight += weight;
    } else {
        atoms.push(DistributionalAtom { location, weight });
    }
}

fn push_pv(pv: &mut Vec<(f64, Complex64)>, location: f64, c: Complex64) {
    if let Some(e) = pv
        .iter_mut()
        .find(|(l, _)| (l - location).abs() <= AXIS_TOL * (1.0 + location.abs()))
    {
        e.1 += c;
    } else {
        pv.push((location, c));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn f(sigma: f64, omega: f64) -> ComplexFrequency {
        ComplexFrequency::new(sigma, omega).unwrap()
    }

    fn spec(atom: SignalAtom) -> SignalSpec {
        SignalSpec::atom(atom)
    }

    #[test]
    fn table_examples() {
        let one = lookup_gft(&spec(SignalAtom::Constant), None).unwrap();
        assert_eq!(one.clt_part, vec![SpectrumTerm::pole(ONE, ZERO, 1)]);
        assert_eq!(one.lt_part, vec![SpectrumTerm::pole(ONE, ZERO, 1)]);
        assert_eq!(one.roc, Roc::HalfPlane { c: 0.0 });
        assert!((eval_spectrum(&one, f(1.0, 2.0)).unwrap() - c(0.4)).norm() < 1e-15);

        let d = lookup_gft(&spec(SignalAtom::Delta { t0: 2.0 }), None).unwrap();
        assert!(d.clt_part.is_empty());
        assert_eq!(d.lt_part, vec![SpectrumTerm::delayed(2.0, SpectrumTerm::unity())]);
        assert_eq!(d.roc, Roc::EntirePlane);

        let e = lookup_gft(&spec(SignalAtom::AbsExp { a: c(1.0) }), None).unwrap();
        assert_eq!(e.roc, Roc::HalfPlane { c: -1.0 });
        let v = eval_spectrum(&e, f(0.5, 1.0)).unwrap();
        assert!((v - c(3.0 / 3.25)).norm() < 1e-14);

        let sgn = lookup_gft(&spec(SignalAtom::Signum), None).unwrap();
        assert!((eval_spectrum(&sgn, f(1.0, 1.0)).unwrap() - Complex64::new(0.0, -1.0)).norm() < 1e-15);

        let delta0 = lookup_gft(&spec(SignalAtom::Delta { t0: 0.0 }), None).unwrap();
        assert_eq!(eval_spectrum(&delta0, f(-3.0, 7.0)).unwrap(), ONE);
        assert!(lookup_gft(&SignalSpec::zero(), None).unwrap().is_zero());
    }

    #[test]
    fn table_closed_forms() {
        let pt = f(0.7, -1.3);
        let (s, sc) = (pt.s(), pt.s_conj());
        let w0 = 2.0;
        let cases: Vec<(SignalAtom, Complex64)> = vec![
            (
                SignalAtom::Cosine { omega0: w0 },
                sc / (sc * sc + w0 * w0) + s / (s * s + w0 * w0),
            ),
            (
                SignalAtom::Sine { omega0: w0 },
                -w0 / (sc * sc + w0 * w0) + w0 / (s * s + w0 * w0),
            ),
            (
                SignalAtom::ComplexExp { omega0: w0 },
                1.0 / (sc + J * w0) + 1.0 / (s - J * w0),
            ),
            (
                SignalAtom::TwoSidedExp { a: c(0.3) },
                1.0 / (sc - 0.3) + 1.0 / (s + 0.3),
            ),
            (SignalAtom::Power { m: 2.0 }, 2.0 * (1.0 / sc.powu(3) + 1.0 / s.powu(3))),
            (
                SignalAtom::AbsPower { m: 0.5 },
                gamma(c(1.5)).unwrap() * (1.0 / sc.powf(1.5) + 1.0 / s.powf(1.5)),
            ),
        ];
        for (atom, expected) in cases {
            let e = lookup_gft(&spec(atom), None).unwrap();
            let v = eval_spectrum(&e, pt).unwrap();
            assert!(
                (v - expected).norm() < 1e-13 * (1.0 + expected.norm()),
                "{atom:?}: {v} vs {expected}"
            );
        }
    }

    #[test]
    fn inverse_power_needs_weight() {
        let x = spec(SignalAtom::InversePower { m: 1.0 });
        assert!(matches!(lookup_gft(&x, None), Err(GftError::Constraint(_))));
        let e = lookup_gft(&x, Some(0.5)).unwrap();
        let pt = f(1.0, 2.0);
        let g = gamma(c(0.5)).unwrap();
        let expected = g * (1.0 / pt.s().powf(0.5) - 1.0 / pt.s_conj().powf(0.5));
        assert!((eval_spectrum(&e, pt).unwrap() - expected).norm() < 1e-13);
    }

    #[test]
    fn roc_and_pole_errors() {
        let u = lookup_gft(
            &spec(SignalAtom::UnitStep {
                orientation: Orientation::Forward,
            }),
            None,
        )
        .unwrap();
        assert!(matches!(eval_spectrum(&u, f(0.0, 1.0)), Err(GftError::Region(_))));
        assert!(matches!(u.lt_part[0].eval(ZERO), Err(GftError::Pole(_))));
    }

    #[test]
    fn time_property_examples() {
        let d = lookup_gft(&spec(SignalAtom::Delta { t0: 0.0 }), None).unwrap();
        let shifted = apply_time_property(&d, &TimeProperty::SgnDelay(1.0)).unwrap();
        let row = lookup_gft(&spec(SignalAtom::Delta { t0: 1.0 }), None).unwrap();
        assert_eq!(shifted.lt_part, row.lt_part);

        let u = lookup_gft(
            &spec(SignalAtom::UnitStep {
                orientation: Orientation::Forward,
            }),
            None,
        )
        .unwrap();
        let r = apply_time_property(&u, &TimeProperty::Reverse).unwrap();
        let row = lookup_gft(
            &spec(SignalAtom::UnitStep {
                orientation: Orientation::Reversed,
            }),
            None,
        )
        .unwrap();
        assert_eq!(r, row);

        let e = lookup_gft(&spec(SignalAtom::AbsExp { a: c(1.0) }), None).unwrap();
        let d1 = apply_time_property(
            &e,
            &TimeProperty::Derivative {
                order: 1,
                right_ics: vec![ONE],
                left_ics: None,
            },
        )
        .unwrap();
        assert_eq!(d1.clt_part, vec![SpectrumTerm::pole(ONE, c(-1.0), 1)]);
        assert_eq!(d1.lt_part, vec![SpectrumTerm::pole(-ONE, c(-1.0), 1)]);
    }

    #[test]
    fn scale_matches_rescaled_atom() {
        let e = lookup_gft(&spec(SignalAtom::AbsExp { a: c(1.0) }), None).unwrap();
        let scaled = apply_time_property(&e, &TimeProperty::Scale(2.0)).unwrap();
        let row = lookup_gft(&spec(SignalAtom::AbsExp { a: c(2.0) }), None).unwrap();
        let pt = f(0.3, 0.9);
        assert!((eval_spectrum(&scaled, pt).unwrap() - eval_spectrum(&row, pt).unwrap()).norm() < 1e-14);
        assert_eq!(scaled.roc, Roc::HalfPlane { c: -2.0 });
        assert!(apply_time_property(&e, &TimeProperty::Scale(-1.0)).is_err());
    }

    #[test]
    fn running_integral_of_step() {
        // ∫_0^t u(τ)dτ = t u(t) ↔ 1/s²
        let u = lookup_gft(
            &spec(SignalAtom::UnitStep {
                orientation: Orientation::Forward,
            }),
            None,
        )
        .unwrap();
        let r = apply_time_property(&u, &TimeProperty::RunningIntegral).unwrap();
        assert_eq!(r.lt_part, vec![SpectrumTerm::pole(ONE, ZERO, 2)]);
        // e^{−t}u(t): ∫ = (1 − e^{−t})u(t) ↔ 1/s − 1/(s+1)
        let g = SignalSpec::atom(SignalAtom::Gated(GatedAtom::causal(0.0, 0, c(-1.0), Oscillation::None)));
        let r = apply_time_property(&lookup_gft(&g, None).unwrap(), &TimeProperty::RunningIntegral).unwrap();
        let pt = f(0.5, 0.4);
        let s = pt.s();
        assert!((eval_spectrum(&r, pt).unwrap() - (1.0 / s - 1.0 / (s + 1.0))).norm() < 1e-14);
        assert_eq!(r.roc, Roc::HalfPlane { c: 0.0 });
    }

    #[test]
    fn modulation_examples() {
        let one = lookup_gft(&spec(SignalAtom::Constant), None).unwrap();
        let m = apply_modulation_property(&one, ModulationProperty::ExpAbs(c(1.0))).unwrap();
        assert_eq!(m, lookup_gft(&spec(SignalAtom::AbsExp { a: c(1.0) }), None).unwrap());

        let u = lookup_gft(
            &spec(SignalAtom::UnitStep {
                orientation: Orientation::Forward,
            }),
            None,
        )
        .unwrap();
        let tu = apply_modulation_property(&u, ModulationProperty::MulPower(1)).unwrap();
        assert_eq!(tu.lt_part, vec![SpectrumTerm::pole(ONE, ZERO, 2)]);

        let e = apply_modulation_property(&u, ModulationProperty::ExpTwoSided(c(-1.0))).unwrap();
        assert_eq!(e.lt_part, vec![SpectrumTerm::pole(ONE, c(1.0), 1)]);
        assert_eq!(e.roc, Roc::HalfPlane { c: 1.0 });
    }

    #[test]
    fn div_t_of_sine() {
        // sin(t)/t two-sided: G = ... check against the known limit at σ→0:
        // FT of sin(t)/t is π on |ω|<1.
        let s = lookup_gft(&spec(SignalAtom::Sine { omega0: 1.0 }), None).unwrap();
        let d = apply_modulation_property(&s, ModulationProperty::DivT).unwrap();
        let v = eval_spectrum(&d, f(1e-9, 0.3)).unwrap();
        assert!((v - c(PI)).norm() < 1e-6, "{v}");
        let one = lookup_gft(&spec(SignalAtom::Constant), None).unwrap();
        assert!(apply_modulation_property(&one, ModulationProperty::DivT).is_err());
    }

    #[test]
    fn ft_limit_examples() {
        let one = lookup_gft(&spec(SignalAtom::Constant), None).unwrap();
        match ft_limit_symbolic(&one, 0.0).unwrap() {
            FtLimit::Distributional { atoms, regular } => {
                assert_eq!(atoms.len(), 1);
                assert_eq!(atoms[0].location, 0.0);
                assert!((atoms[0].weight - c(2.0 * PI)).norm() < 1e-14);
                assert_eq!(regular, ZERO);
            }
            other => panic!("{other:?}"),
        }
        let e = lookup_gft(&spec(SignalAtom::AbsExp { a: c(1.0) }), None).unwrap();
        assert_eq!(ft_limit_symbolic(&e, 1.0).unwrap(), FtLimit::Finite { value: c(1.0) });

        let u = lookup_gft(
            &spec(SignalAtom::UnitStep {
                orientation: Orientation::Forward,
            }),
            None,
        )
        .unwrap();
        match ft_limit_symbolic(&u, 2.0).unwrap() {
            FtLimit::Distributional { atoms, regular } => {
                assert!((atoms[0].weight - c(PI)).norm() < 1e-14);
                assert!((regular - 1.0 / Complex64::new(0.0, 2.0)).norm() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(ft_limit_symbolic(&u, 0.0), Err(GftError::Divergent(_))));
        let t = lookup_gft(&spec(SignalAtom::Power { m: 1.0 }), None).unwrap();
        assert!(matches!(ft_limit_symbolic(&t, 1.0), Err(GftError::Divergent(_))));
        let cosine = lookup_gft(&spec(SignalAtom::Cosine { omega0: 3.0 }), None).unwrap();
        match ft_limit_symbolic(&cosine, 3.0).unwrap() {
            FtLimit::Distributional { atoms, .. } => {
                assert_eq!(atoms.len(), 2);
                assert!(atoms.iter().all(|a| (a.weight - c(PI)).norm() < 1e-14));
            }
            other => panic!("{other:?}"),
        }
    }

    fn even_atom() -> impl Strategy<Value = SignalAtom> {
        prop_oneof![
            Just(SignalAtom::Constant),
            (0.1f64..3.0).prop_map(|a| SignalAtom::AbsExp { a: c(a) }),
            (0.1f64..3.0).prop_map(|w| SignalAtom::Cosine { omega0: w }),
            (-0.9f64..3.0).prop_map(|m| SignalAtom::AbsPower { m }),
        ]
    }

    fn any_atom() -> impl Strategy<Value = SignalAtom> {
        prop_oneof![
            even_atom(),
            Just(SignalAtom::Signum),
            (0.1f64..3.0).prop_map(|w| SignalAtom::Sine { omega0: w }),
            (-2.0f64..2.0).prop_map(|w| SignalAtom::ComplexExp { omega0: w }),
            (-0.9f64..3.0).prop_map(|m| SignalAtom::Power { m }),
        ]
    }

    proptest! {
        #[test]
        fn linearity(a in any_atom(), b in any_atom(), ca in -3.0f64..3.0, cb in -3.0f64..3.0,
                     sigma in 0.05f64..3.0, omega in -5.0f64..5.0) {
            let pt = f(sigma, omega);
            let joint = lookup_gft(&SignalSpec::zero().with(ca, a).with(cb, b), None).unwrap();
            let sep = lookup_gft(&spec(a), None).unwrap().scaled(c(ca))
                .plus(&lookup_gft(&spec(b), None).unwrap().scaled(c(cb)));
            let x = eval_spectrum(&joint, pt).unwrap();
            let y = eval_spectrum(&sep, pt).unwrap();
            prop_assert!((x - y).norm() < 1e-10 * (1.0 + y.norm()));
        }

        #[test]
        fn even_and_odd_symmetry(a in even_atom(), w0 in 0.1f64..3.0,
                                 sigma in 0.05f64..3.0, omega in -5.0f64..5.0) {
            let pt = f(sigma, omega);
            let e = lookup_gft(&spec(a), None).unwrap();
            // X(s*) = 𝔛(s*) for even signals
            let lt_at_conj = e.eval_lt(pt.s_conj()).unwrap();
            prop_assert!((lt_at_conj - e.eval_clt(pt.s_conj()).unwrap()).norm() < 1e-10 * (1.0 + lt_at_conj.norm()));
            let o = lookup_gft(&spec(SignalAtom::Sine { omega0: w0 }), None).unwrap();
            let lt_at_conj = o.eval_lt(pt.s_conj()).unwrap();
            prop_assert!((lt_at_conj + o.eval_clt(pt.s_conj()).unwrap()).norm() < 1e-10 * (1.0 + lt_at_conj.norm()));
        }

        #[test]
        fn reversal_is_an_involution(a in any_atom(), sigma in 0.05f64..3.0, omega in -5.0f64..5.0) {
            let pt = f(sigma, omega);
            let e = lookup_gft(&spec(a), None).unwrap();
            let rr = apply_time_property(&apply_time_property(&e, &TimeProperty::Reverse).unwrap(),
                                         &TimeProperty::Reverse).unwrap();
            prop_assert_eq!(eval_spectrum(&rr, pt).unwrap(), eval_spectrum(&e, pt).unwrap());
        }
    }
}
