//! Symbolic signal vocabulary, sampled signals, frequencies and regions of
//! convergence shared by the continuous-time transforms.
//!
//! Conventions: `u(0) = 1` and `sgn(0) = 0`. Powers of negative time use the
//! principal branch, so `t^m` at `t < 0` equals `|t|^m e^{jπm}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GftError, Result};

const J: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Continuous complex frequency `s = σ + jω`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFrequency {
    pub sigma: f64,
    pub omega: f64,
}

impl ComplexFrequency {
    pub fn new(sigma: f64, omega: f64) -> Result<Self> {
        if !sigma.is_finite() || !omega.is_finite() {
            return Err(GftError::Domain(format!(
                "frequency components must be finite (sigma={sigma}, omega={omega})"
            )));
        }
        Ok(ComplexFrequency { sigma, omega })
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.omega)
    }

    pub fn s_conj(&self) -> Complex64 {
        Complex64::new(self.sigma, -self.omega)
    }
}

/// Discrete frequency with `z = e^{σ + jΩ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteFrequency {
    pub sigma: f64,
    #[serde(rename = "Omega")]
    pub omega: f64,
}

impl DiscreteFrequency {
    pub fn new(sigma: f64, omega: f64) -> Result<Self> {
        if !sigma.is_finite() || !omega.is_finite() {
            return Err(GftError::Domain(format!(
                "frequency components must be finite (sigma={sigma}, Omega={omega})"
            )));
        }
        Ok(DiscreteFrequency { sigma, omega })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.sigma.exp(), self.omega)
    }

    pub fn z_conj(&self) -> Complex64 {
        Complex64::from_polar(self.sigma.exp(), -self.omega)
    }

    pub fn radius(&self) -> f64 {
        self.sigma.exp()
    }
}

/// Region of convergence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Roc {
    EntirePlane,
    /// `Re{s} > c`
    HalfPlane {
        c: f64,
    },
    EntireZPlane,
    /// `|z| > r0`
    OutsideCircle {
        r0: f64,
    },
}

impl Roc {
    /// Intersection of two regions of the same kind.
    ///
    /// Panics when a continuous half-plane is intersected with a discrete
    /// circle region; the entire-plane variants act as identity for both.
    pub fn intersect(&self, other: &Roc) -> Roc {
        use Roc::*;
        match (*self, *other) {
            (EntirePlane, r) | (r, EntirePlane) | (EntireZPlane, r) | (r, EntireZPlane) => r,
            (HalfPlane { c: a }, HalfPlane { c: b }) => HalfPlane { c: a.max(b) },
            (OutsideCircle { r0: a }, OutsideCircle { r0: b }) => OutsideCircle { r0: a.max(b) },
            (a, b) => panic!("cannot intersect continuous and discrete regions: {a:?} / {b:?}"),
        }
    }

    /// Whether a damping value lies strictly inside the region.
    pub fn contains_sigma(&self, sigma: f64) -> bool {
        match *self {
            Roc::EntirePlane | Roc::EntireZPlane => true,
            Roc::HalfPlane { c } => sigma > c,
            Roc::OutsideCircle { r0 } => sigma.exp() > r0,
        }
    }

    pub(crate) fn check(&self, sigma: f64) -> Result<()> {
        if self.contains_sigma(sigma) {
            Ok(())
        } else {
            Err(GftError::Region(format!("sigma={sigma} is not inside {self:?}")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, PartialOrd, Ord, Hash)]
#[derive(Default)]
pub enum Orientation {
    #[serde(rename = "+t")]
    #[default]
    Forward,
    #[serde(rename = "-t")]
    Reversed,
}


/// Support side of a gated atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, PartialOrd, Ord, Hash)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Causal,
    Anticausal,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Causal => Side::Anticausal,
            Side::Anticausal => Side::Causal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "osc", rename_all = "snake_case")]
pub enum Oscillation {
    #[default]
    None,
    Cos {
        omega: f64,
    },
    Sin {
        omega: f64,
    },
}

/// One-sided exponential-polynomial atom produced by inversion.
///
/// Causal: `(t−t0)^k e^{rate(t−t0)} osc(t−t0)` for `t ≥ t0`.
/// Anticausal: the mirror image, i.e. the causal expression evaluated at
/// `−t`, supported on `t < −t0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GatedAtom {
    pub side: Side,
    #[serde(default)]
    pub t0: f64,
    #[serde(default)]
    pub power: u32,
    #[serde(default = "zero_complex")]
    pub rate: Complex64,
    #[serde(flatten, default)]
    pub oscillation: Oscillation,
}

fn zero_complex() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl GatedAtom {
    pub fn causal(t0: f64, power: u32, rate: Complex64, oscillation: Oscillation) -> Self {
        GatedAtom {
            side: Side::Causal,
            t0,
            power,
            rate,
            oscillation,
        }
    }

    pub fn anticausal(t0: f64, power: u32, rate: Complex64, oscillation: Oscillation) -> Self {
        GatedAtom {
            side: Side::Anticausal,
            t0,
            power,
            rate,
            oscillation,
        }
    }

    /// Value of the un-gated causal expression at local time `tau ≥ 0`.
    pub(crate) fn local_value(&self, tau: f64) -> Complex64 {
        let poly = if self.power == 0 {
            1.0
        } else {
            tau.powi(self.power as i32)
        };
        let osc = match self.oscillation {
            Oscillation::None => 1.0,
            Oscillation::Cos { omega } => (omega * tau).cos(),
            Oscillation::Sin { omega } => (omega * tau).sin(),
        };
        (self.rate * tau).exp() * (poly * osc)
    }

    pub fn value(&self, t: f64) -> Complex64 {
        match self.side {
            Side::Causal if t >= self.t0 => self.local_value(t - self.t0),
            Side::Anticausal if t < -self.t0 => self.local_value(-t - self.t0),
            _ => Complex64::new(0.0, 0.0),
        }
    }
}

/// Catalog atom of the continuous-time signal vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SignalAtom {
    #[serde(rename = "delta")]
    Delta { t0: f64 },
    #[serde(rename = "const")]
    Constant,
    #[serde(rename = "sgn")]
    Signum,
    #[serde(rename = "step")]
    UnitStep {
        #[serde(default)]
        orientation: Orientation,
    },
    /// `e^{−a t}` on the whole line.
    #[serde(rename = "exp")]
    TwoSidedExp { a: Complex64 },
    /// `e^{−a|t|}`
    #[serde(rename = "abs_exp")]
    AbsExp { a: Complex64 },
    #[serde(rename = "cexp")]
    ComplexExp { omega0: f64 },
    #[serde(rename = "cos")]
    Cosine { omega0: f64 },
    #[serde(rename = "sin")]
    Sine { omega0: f64 },
    /// `t^m`, `m > −1`
    #[serde(rename = "pow")]
    Power { m: f64 },
    /// `|t|^m`, `m > −1`
    #[serde(rename = "abs_pow")]
    AbsPower { m: f64 },
    /// `1/t^m`, `m ≥ 1`
    #[serde(rename = "inv_pow")]
    InversePower { m: f64 },
    #[serde(rename = "gated")]
    Gated(GatedAtom),
}

impl SignalAtom {
    pub fn validate(&self) -> Result<()> {
        let finite = |x: f64, name: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(GftError::Constraint(format!("{name} must be finite")))
            }
        };
        match *self {
            SignalAtom::Delta { t0 } => finite(t0, "delta offset t0"),
            SignalAtom::TwoSidedExp { a } | SignalAtom::AbsExp { a } => {
                finite(a.re, "a")?;
                finite(a.im, "a")
            }
            SignalAtom::ComplexExp { omega0 } | SignalAtom::Cosine { omega0 } | SignalAtom::Sine { omega0 } => {
                finite(omega0, "omega0")
            }
            SignalAtom::Power { m } | SignalAtom::AbsPower { m } => {
                if m.is_finite() && m > -1.0 {
                    Ok(())
                } else {
                    Err(GftError::Constraint(format!("power atom requires m > -1, got {m}")))
                }
            }
            SignalAtom::InversePower { m } => {
                if m.is_finite() && m >= 1.0 {
                    Ok(())
                } else {
                    Err(GftError::Constraint(format!(
                        "inverse power atom requires m >= 1, got {m}"
                    )))
                }
            }
            SignalAtom::Gated(g) => {
                if !(g.t0.is_finite() && g.t0 >= 0.0) {
                    return Err(GftError::Constraint(format!(
                        "gated atom requires finite t0 >= 0, got {}",
                        g.t0
                    )));
                }
                finite(g.rate.re, "rate")?;
                finite(g.rate.im, "rate")?;
                match g.oscillation {
                    Oscillation::None => Ok(()),
                    Oscillation::Cos { omega } | Oscillation::Sin { omega } => finite(omega, "omega"),
                }
            }
            SignalAtom::Constant | SignalAtom::Signum | SignalAtom::UnitStep { .. } => Ok(()),
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, SignalAtom::Delta { .. })
    }

    /// Pointwise value; deltas and `1/t^m` at the origin are undefined.
    pub fn value(&self, t: f64) -> Result<Complex64> {
        let c = |x: f64| Complex64::new(x, 0.0);
        Ok(match *self {
            SignalAtom::Delta { t0 } => {
                if t == t0 {
                    return Err(GftError::Domain(format!(
                        "pointwise value of a delta at its location t={t0}"
                    )));
                }
                c(0.0)
            }
            SignalAtom::Constant => c(1.0),
            SignalAtom::Signum => c(signum(t)),
            SignalAtom::UnitStep { orientation } => match orientation {
                Orientation::Forward => c(if t >= 0.0 { 1.0 } else { 0.0 }),
                Orientation::Reversed => c(if t <= 0.0 { 1.0 } else { 0.0 }),
            },
            SignalAtom::TwoSidedExp { a } => (-a * t).exp(),
            SignalAtom::AbsExp { a } => (-a * t.abs()).exp(),
            SignalAtom::ComplexExp { omega0 } => (J * (omega0 * t)).exp(),
            SignalAtom::Cosine { omega0 } => c((omega0 * t).cos()),
            SignalAtom::Sine { omega0 } => c((omega0 * t).sin()),
            SignalAtom::Power { m } => signed_power(t, m),
            SignalAtom::AbsPower { m } => {
                if t == 0.0 && m < 0.0 {
                    return Err(GftError::Domain("|t|^m with m < 0 at t = 0".into()));
                }
                c(t.abs().powf(m))
            }
            SignalAtom::InversePower { m } => {
                if t == 0.0 {
                    return Err(GftError::Domain("1/t^m at t = 0".into()));
                }
                signed_power(t, -m)
            }
            SignalAtom::Gated(g) => g.value(t),
        })
    }

    /// The atom evaluated at `−t`, expressed as a weighted sum of atoms.
    pub fn reversed(&self) -> Result<Vec<(Complex64, SignalAtom)>> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match *self {
            SignalAtom::Delta { t0 } => vec![(one, SignalAtom::Delta { t0: -t0 })],
            SignalAtom::Constant => vec![(one, SignalAtom::Constant)],
            SignalAtom::Signum => vec![(-one, SignalAtom::Signum)],
            SignalAtom::UnitStep { orientation } => vec![(
                one,
                SignalAtom::UnitStep {
                    orientation: match orientation {
                        Orientation::Forward => Orientation::Reversed,
                        Orientation::Reversed => Orientation::Forward,
                    },
                },
            )],
            SignalAtom::TwoSidedExp { a } => vec![(one, SignalAtom::TwoSidedExp { a: -a })],
            SignalAtom::AbsExp { a } => vec![(one, SignalAtom::AbsExp { a })],
            SignalAtom::ComplexExp { omega0 } => {
                vec![(one, SignalAtom::ComplexExp { omega0: -omega0 })]
            }
            SignalAtom::Cosine { omega0 } => vec![(one, SignalAtom::Cosine { omega0 })],
            SignalAtom::Sine { omega0 } => vec![(-one, SignalAtom::Sine { omega0 })],
            SignalAtom::AbsPower { m } => vec![(one, SignalAtom::AbsPower { m })],
            // (−t)^m = (1 + e^{jπm})|t|^m − t^m, exact for every m
            SignalAtom::Power { m } => mirrored_power(m, SignalAtom::Power { m }, SignalAtom::AbsPower { m }),
            SignalAtom::InversePower { m } => {
                if (m.round() - m).abs() > 1e-12 {
                    return Err(GftError::Unsupported(format!(
                        "time reversal of 1/t^m needs integer m, got {m}"
                    )));
                }
                vec![(Complex64::from_polar(1.0, -PI * m), SignalAtom::InversePower { m })]
            }
            SignalAtom::Gated(g) => vec![(
                one,
                SignalAtom::Gated(GatedAtom {
                    side: g.side.flipped(),
                    ..g
                }),
            )],
        })
    }
}

fn mirrored_power(m: f64, plain: SignalAtom, abs: SignalAtom) -> Vec<(Complex64, SignalAtom)> {
    let phase = Complex64::from_polar(1.0, PI * m);
    if (phase - 1.0).norm() < 1e-12 {
        vec![(Complex64::new(1.0, 0.0), plain)]
    } else {
        vec![(phase + 1.0, abs), (Complex64::new(-1.0, 0.0), plain)]
    }
}

pub(crate) fn signum(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Principal-branch `t^m` for real `t`.
pub(crate) fn signed_power(t: f64, m: f64) -> Complex64 {
    if t >= 0.0 {
        Complex64::new(t.powf(m), 0.0)
    } else {
        Complex64::from_polar((-t).powf(m), PI * m)
    }
}

/// One weighted term of a signal spec.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalTerm {
    pub coef: Complex64,
    pub atom: SignalAtom,
}

/// Weighted sum of catalog atoms. An empty term list is the zero signal.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct SignalSpec {
    pub terms: Vec<SignalTerm>,
}

impl SignalSpec {
    pub fn zero() -> Self {
        SignalSpec { terms: Vec::new() }
    }

    pub fn single(coef: impl Into<Complex64>, atom: SignalAtom) -> Self {
        SignalSpec {
            terms: vec![SignalTerm {
                coef: coef.into(),
                atom,
            }],
        }
    }

    pub fn atom(atom: SignalAtom) -> Self {
        SignalSpec::single(1.0, atom)
    }

    pub fn push(&mut self, coef: impl Into<Complex64>, atom: SignalAtom) -> &mut Self {
        self.terms.push(SignalTerm {
            coef: coef.into(),
            atom,
        });
        self
    }

    pub fn with(mut self, coef: impl Into<Complex64>, atom: SignalAtom) -> Self {
        self.push(coef, atom);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coef == Complex64::new(0.0, 0.0))
    }

    pub fn validate(&self) -> Result<()> {
        for term in &self.terms {
            if !(term.coef.re.is_finite() && term.coef.im.is_finite()) {
                return Err(GftError::Constraint("coefficients must be finite".into()));
            }
            term.atom.validate()?;
        }
        Ok(())
    }

    pub fn scaled(&self, factor: Complex64) -> SignalSpec {
        SignalSpec {
            terms: self
                .terms
                .iter()
                .map(|t| SignalTerm {
                    coef: t.coef * factor,
                    atom: t.atom,
                })
                .collect(),
        }
    }

    pub fn plus(&self, other: &SignalSpec) -> SignalSpec {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().copied());
        SignalSpec { terms }
    }

    pub fn has_deltas(&self) -> bool {
        self.terms.iter().any(|t| t.atom.is_delta())
    }

    /// Delta-free part of the spec.
    pub fn without_deltas(&self) -> SignalSpec {
        SignalSpec {
            terms: self.terms.iter().filter(|t| !t.atom.is_delta()).copied().collect(),
        }
    }

    /// `x(−t)` as a spec.
    pub fn time_reversed(&self) -> Result<SignalSpec> {
        let mut out = SignalSpec::zero();
        for term in &self.terms {
            for (c, atom) in term.atom.reversed()? {
                out.push(term.coef * c, atom);
            }
        }
        Ok(out)
    }

    /// Callable view of the delta-free signal for the quadrature layer.
    pub fn regular(&self) -> Result<RegularSignal<'_>> {
        if self.has_deltas() {
            return Err(GftError::Unsupported(
                "deltas cannot be sampled by quadrature; transform them symbolically".into(),
            ));
        }
        Ok(RegularSignal(self))
    }
}

impl SignalSpec {
    /// Equivalent spec built only from deltas and non-oscillating gated
    /// exponential atoms, with like terms merged, terms below `tol` dropped
    /// and a deterministic order. Values at isolated points (the gate
    /// boundaries) may differ from the original.
    pub fn normalized(&self, tol: f64) -> Result<SignalSpec> {
        let mut parts: Vec<(Complex64, SignalAtom)> = Vec::new();
        for term in &self.terms {
            for (c, atom) in exponential_parts(&term.atom)? {
                parts.push((term.coef * c, atom));
            }
        }
        let mut merged: Vec<(Complex64, SignalAtom)> = Vec::new();
        for (c, atom) in parts {
            match merged.iter_mut().find(|(_, a)| same_atom(a, &atom, tol)) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, atom)),
            }
        }
        merged.retain(|(c, _)| c.norm() > tol);
        merged.sort_by(|a, b| {
            atom_key(&a.1)
                .partial_cmp(&atom_key(&b.1))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut out = SignalSpec::zero();
        for (c, atom) in merged {
            out.push(c, atom);
        }
        Ok(out)
    }

    /// Whether two specs agree term by term after [`SignalSpec::normalized`].
    pub fn approx_eq(&self, other: &SignalSpec, tol: f64) -> Result<bool> {
        Ok(self
            .plus(&other.scaled(Complex64::new(-1.0, 0.0)))
            .normalized(tol)?
            .is_zero_spec())
    }

    /// Merges causal/anticausal gated pairs at `t0 = 0` that together form a
    /// whole-line catalog atom (constant, exponentials, cos, sin). The
    /// two gates partition the line, so the result has the same values.
    pub fn compacted(&self) -> SignalSpec {
        let mut used = vec![false; self.terms.len()];
        let mut out = SignalSpec::zero();
        for i in 0..self.terms.len() {
            if used[i] {
                continue;
            }
            let a = &self.terms[i];
            let found = (0..self.terms.len()).filter(|&j| j != i && !used[j]).find_map(|j| {
                whole_line(a, &self.terms[j])
                    .or_else(|| whole_line(&self.terms[j], a))
                    .map(|t| (j, t))
            });
            match found {
                Some((j, (c, atom))) => {
                    used[i] = true;
                    used[j] = true;
                    out.push(c, atom);
                }
                None => {
                    used[i] = true;
                    out.terms.push(*a);
                }
            }
        }
        out
    }

    fn is_zero_spec(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Whole-line atom equal to `causal + anticausal`, if there is one.
fn whole_line(causal: &SignalTerm, anti: &SignalTerm) -> Option<(Complex64, SignalAtom)> {
    const TOL: f64 = 1e-12;
    let (SignalAtom::Gated(g), SignalAtom::Gated(h)) = (causal.atom, anti.atom) else {
        return None;
    };
    if g.side != Side::Causal
        || h.side != Side::Anticausal
        || g.t0 != 0.0
        || h.t0 != 0.0
        || g.power != 0
        || h.power != 0
    {
        return None;
    }
    let close = |x: Complex64, y: Complex64| (x - y).norm() <= TOL * x.norm().max(y.norm()).max(1.0);
    let zero = Complex64::new(0.0, 0.0);
    let (c1, c2) = (causal.coef, anti.coef);
    let still = close(g.rate, zero) && close(h.rate, zero);
    let atom = match (g.oscillation, h.oscillation) {
        (Oscillation::None, Oscillation::None) => {
            if !close(c1, c2) {
                return None;
            } else if still {
                SignalAtom::Constant
            } else if close(h.rate, -g.rate) {
                if g.rate.re.abs() <= TOL * g.rate.norm() {
                    SignalAtom::ComplexExp { omega0: g.rate.im }
                } else {
                    SignalAtom::TwoSidedExp { a: -g.rate }
                }
            } else if close(h.rate, g.rate) && g.rate.re < 0.0 {
                SignalAtom::AbsExp { a: -g.rate }
            } else {
                return None;
            }
        }
        (Oscillation::Cos { omega: w1 }, Oscillation::Cos { omega: w2 }) if w1 == w2 && still && close(c1, c2) => {
            SignalAtom::Cosine { omega0: w1 }
        }
        (Oscillation::Sin { omega: w1 }, Oscillation::Sin { omega: w2 }) if w1 == w2 && still && close(c2, -c1) => {
            SignalAtom::Sine { omega0: w1 }
        }
        _ => return None,
    };
    Some((c1, atom))
}

fn same_atom(a: &SignalAtom, b: &SignalAtom, tol: f64) -> bool {
    match (a, b) {
        (SignalAtom::Delta { t0: x }, SignalAtom::Delta { t0: y }) => (x - y).abs() <= tol,
        (SignalAtom::Gated(g), SignalAtom::Gated(h)) => {
            g.side == h.side
                && g.power == h.power
                && (g.t0 - h.t0).abs() <= tol
                && (g.rate - h.rate).norm() <= tol * (1.0 + g.rate.norm())
        }
        _ => false,
    }
}

fn atom_key(a: &SignalAtom) -> (u8, f64, u32, f64, f64) {
    match a {
        SignalAtom::Delta { t0 } => (0, *t0, 0, 0.0, 0.0),
        SignalAtom::Gated(g) => (
            if g.side == Side::Causal { 1 } else { 2 },
            g.t0,
            g.power,
            g.rate.re,
            g.rate.im,
        ),
        _ => (3, 0.0, 0, 0.0, 0.0),
    }
}

/// The atom as a sum of deltas and gated `τ^k e^{rate τ}` atoms.
fn exponential_parts(atom: &SignalAtom) -> Result<Vec<(Complex64, SignalAtom)>> {
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let causal =
        |rate: Complex64, power: u32| SignalAtom::Gated(GatedAtom::causal(0.0, power, rate, Oscillation::None));
    let anti =
        |rate: Complex64, power: u32| SignalAtom::Gated(GatedAtom::anticausal(0.0, power, rate, Oscillation::None));
    let zero = Complex64::new(0.0, 0.0);
    let integer = |m: f64| -> Result<u32> {
        if m >= 0.0 && m.fract() == 0.0 {
            Ok(m as u32)
        } else {
            Err(GftError::Unsupported(format!(
                "power {m} has no exponential-polynomial form"
            )))
        }
    };
    Ok(match *atom {
        SignalAtom::Delta { .. } => vec![(one, *atom)],
        SignalAtom::Constant => vec![(one, causal(zero, 0)), (one, anti(zero, 0))],
        SignalAtom::Signum => vec![(one, causal(zero, 0)), (-one, anti(zero, 0))],
        SignalAtom::UnitStep { orientation } => match orientation {
            Orientation::Forward => vec![(one, causal(zero, 0))],
            Orientation::Reversed => vec![(one, anti(zero, 0))],
        },
        // anticausal atoms evaluate their rate at −t
        SignalAtom::TwoSidedExp { a } => vec![(one, causal(-a, 0)), (one, anti(a, 0))],
        SignalAtom::AbsExp { a } => vec![(one, causal(-a, 0)), (one, anti(-a, 0))],
        SignalAtom::ComplexExp { omega0 } => {
            let r = J * omega0;
            vec![(one, causal(r, 0)), (one, anti(-r, 0))]
        }
        SignalAtom::Cosine { omega0 } => {
            let r = J * omega0;
            vec![
                (half, causal(r, 0)),
                (half, causal(-r, 0)),
                (half, anti(r, 0)),
                (half, anti(-r, 0)),
            ]
        }
        SignalAtom::Sine { omega0 } => {
            let r = J * omega0;
            let k = 1.0 / (2.0 * J);
            vec![
                (k, causal(r, 0)),
                (-k, causal(-r, 0)),
                (-k, anti(r, 0)),
                (k, anti(-r, 0)),
            ]
        }
        SignalAtom::Power { m } => {
            let k = integer(m)?;
            let sign = if k % 2 == 0 { one } else { -one };
            vec![(one, causal(zero, k)), (sign, anti(zero, k))]
        }
        SignalAtom::AbsPower { m } => {
            let k = integer(m)?;
            vec![(one, causal(zero, k)), (one, anti(zero, k))]
        }
        SignalAtom::InversePower { m } => {
            return Err(GftError::Unsupported(format!(
                "1/t^{m} has no exponential-polynomial form"
            )))
        }
        SignalAtom::Gated(g) => {
            let with_rate = |rate: Complex64| {
                SignalAtom::Gated(GatedAtom {
                    rate,
                    oscillation: Oscillation::None,
                    ..g
                })
            };
            match g.oscillation {
                Oscillation::None => vec![(one, *atom)],
                Oscillation::Cos { omega } => vec![
                    (half, with_rate(g.rate + J * omega)),
                    (half, with_rate(g.rate - J * omega)),
                ],
                Oscillation::Sin { omega } => {
                    let k = 1.0 / (2.0 * J);
                    vec![(k, with_rate(g.rate + J * omega)), (-k, with_rate(g.rate - J * omega))]
                }
            }
        }
    })
}

/// Parse a JSON signal spec (`{"terms":[{"coef":[re,im],"atom":{...}}]}`).
pub fn parse_signal_spec(text: &str) -> Result<SignalSpec> {
    let spec: SignalSpec = serde_json::from_str(text).map_err(|e| GftError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

/// Evaluate a spec at time `t` (coefficient-weighted sum of atom values).
pub fn evaluate_signal(spec: &SignalSpec, t: f64) -> Result<Complex64> {
    spec.terms.iter().try_fold(Complex64::new(0.0, 0.0), |acc, term| {
        Ok(acc + term.coef * term.atom.value(t)?)
    })
}

/// A function of continuous time that the quadrature layer can sample.
pub trait TimeDomain {
    fn value(&self, t: f64) -> Complex64;

    /// Interval outside of which the function is identically zero.
    fn support(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

impl<F: Fn(f64) -> Complex64> TimeDomain for F {
    fn value(&self, t: f64) -> Complex64 {
        self(t)
    }
}

/// Delta-free [`SignalSpec`] viewed as a callable.
#[derive(Clone, Copy, Debug)]
pub struct RegularSignal<'a>(&'a SignalSpec);

impl TimeDomain for RegularSignal<'_> {
    fn value(&self, t: f64) -> Complex64 {
        evaluate_signal(self.0, t).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

/// Uniformly sampled signal, linearly interpolated between samples and zero
/// outside `[t_start, t_start + (n−1)·dt]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledSignal {
    pub t_start: f64,
    pub dt: f64,
    pub values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(t_start: f64, dt: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(GftError::Constraint(format!("sample spacing must be > 0, got {dt}")));
        }
        if values.is_empty() {
            return Err(GftError::Constraint("sampled signal needs at least one value".into()));
        }
        if !t_start.is_finite() {
            return Err(GftError::Constraint("t_start must be finite".into()));
        }
        Ok(SampledSignal { t_start, dt, values })
    }

    pub fn t_end(&self) -> f64 {
        self.t_start + self.dt * (self.values.len() - 1) as f64
    }
}

impl TimeDomain for SampledSignal {
    fn value(&self, t: f64) -> Complex64 {
        let (lo, hi) = (self.t_start, self.t_end());
        if t < lo || t > hi {
            return Complex64::new(0.0, 0.0);
        }
        if self.values.len() == 1 {
            return self.values[0];
        }
        let x = (t - lo) / self.dt;
        let i = (x.floor() as usize).min(self.values.len() - 2);
        let frac = x - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    fn support(&self) -> (f64, f64) {
        (self.t_start, self.t_end())
    }
}

/// Source for one period of a periodic signal.
#[derive(Clone, Debug, PartialEq)]
pub enum PeriodSource {
    Spec(SignalSpec),
    Sampled(SampledSignal),
}

/// Periodic signal described by its restriction to `[0, T]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSignal {
    period: f64,
    one_period: PeriodSource,
}

impl PeriodicSignal {
    pub fn new(period: f64, one_period: PeriodSource) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(GftError::Constraint(format!("period must be > 0, got {period}")));
        }
        if let PeriodSource::Spec(spec) = &one_period {
            spec.validate()?;
            if spec.has_deltas() {
                return Err(GftError::Unsupported(
                    "periodic signals are integrated numerically; deltas are not allowed".into(),
                ));
            }
        }
        Ok(PeriodicSignal { period, one_period })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn one_period(&self) -> &PeriodSource {
        &self.one_period
    }

    /// Value of the single-period restriction at `t ∈ [0, T]`.
    pub fn period_value(&self, t: f64) -> Complex64 {
        match &self.one_period {
            PeriodSource::Spec(spec) => evaluate_signal(spec, t).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
            PeriodSource::Sampled(s) => s.value(t),
        }
    }
}

impl TimeDomain for PeriodicSignal {
    fn value(&self, t: f64) -> Complex64 {
        self.period_value(t.rem_euclid(self.period))
    }
}
