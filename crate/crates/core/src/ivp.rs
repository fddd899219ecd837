//! Constant-coefficient initial value problems on the whole real line and
//! their discrete-time counterpart.
//!
//! For `Σ a_k x^{(k)} = f` with initial values at `t = 0`, the causal part
//! obeys `P(s) X(s) = F(s) + Σ_k a_k Σ_{i=1}^k s^{k−i} x^{(i−1)}(0)` and the
//! anticausal part obeys
//! `P(−v) 𝔛(v) = F_c(v) − Σ_k a_k Σ_{i=1}^k (−v)^{k−i} x^{(i−1)}(0)`, where
//! `P(s) = Σ a_k s^k`. Both are inverted term by term.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{lookup_gft, SpectrumTerm};
use crate::error::{GftError, Result};
use crate::gdtft::{gdtft_closed_form, SequenceSpec, ZSpectrumExpr, ZTerm};
use crate::rational::{
    invert_clt_part, invert_lt_part, partial_fractions, partial_fractions_factored, PartialFractionForm,
    PartialFractionTerm, Poly, RationalFunction,
};
use crate::signal::{evaluate_signal, SignalAtom, SignalSpec};
use crate::special::binomial;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Relative tolerance for treating a mode as lying on the imaginary axis.
const AXIS_TOL: f64 = 1e-9;

/// `Σ_k a_k x^{(k)}(t) = forcing(t)` with `x^{(i)}(0)` given for `i < M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdeProblem {
    /// `a_M, …, a_1, a_0` (highest order first).
    pub coefficients: Vec<Complex64>,
    #[serde(default)]
    pub forcing: SignalSpec,
    /// `x(0), x'(0), …, x^{(M−1)}(0)`
    pub initial_conditions: Vec<Complex64>,
}

impl OdeProblem {
    pub fn new(coefficients: Vec<Complex64>, forcing: SignalSpec, initial_conditions: Vec<Complex64>) -> Result<Self> {
        let p = OdeProblem {
            coefficients,
            forcing,
            initial_conditions,
        };
        p.validate()?;
        Ok(p)
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coefficients: &[f64], forcing: SignalSpec, initial_conditions: &[f64]) -> Result<Self> {
        OdeProblem::new(
            coefficients.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            forcing,
            initial_conditions.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |c: &Complex64| c.re.is_finite() && c.im.is_finite();
        if self.coefficients.iter().all(|c| *c == ZERO) {
            return Err(GftError::Degenerate(
                "characteristic polynomial is identically zero".into(),
            ));
        }
        if self.coefficients.len() < 2 {
            return Err(GftError::Constraint("the equation must have order at least 1".into()));
        }
        if self.coefficients[0] == ZERO {
            return Err(GftError::Degenerate("leading coefficient a_M must be nonzero".into()));
        }
        if !self.coefficients.iter().chain(&self.initial_conditions).all(finite) {
            return Err(GftError::Constraint(
                "coefficients and initial conditions must be finite".into(),
            ));
        }
        if self.initial_conditions.len() != self.order() {
            return Err(GftError::Constraint(format!(
                "order {} needs {} initial conditions, got {}",
                self.order(),
                self.order(),
                self.initial_conditions.len()
            )));
        }
        self.forcing.validate()
    }

    /// `P(s) = Σ a_k s^k` in ascending order.
    pub fn characteristic(&self) -> Poly {
        Poly::new(self.coefficients.iter().rev().copied().collect())
    }

    /// `Σ_k a_k Σ_{i=1}^k (sign·v)^{k−i} x^{(i−1)}(0)`
    fn initial_polynomial(&self, sign: f64) -> Poly {
        let a: Vec<Complex64> = self.coefficients.iter().rev().copied().collect();
        let mut out = vec![ZERO; self.order().max(1)];
        for (k, ak) in a.iter().enumerate().skip(1) {
            for i in 1..=k {
                let power = k - i;
                out[power] += ak * self.initial_conditions[i - 1] * sign.powi(power as i32);
            }
        }
        Poly::new(out)
    }
}

/// A forcing term `e^{−v·delay} num(v)/den(v)`.
struct Piece {
    delay: f64,
    num: Poly,
    den: Poly,
}

fn rational_piece(term: &SpectrumTerm) -> Result<Piece> {
    Ok(match term {
        SpectrumTerm::Monomial { coef, degree } => Piece {
            delay: 0.0,
            num: Poly::monomial(*coef, *degree as usize),
            den: Poly::constant(ONE),
        },
        SpectrumTerm::RationalPole {
            coef,
            pole,
            multiplicity,
        } => Piece {
            delay: 0.0,
            num: Poly::constant(*coef),
            den: Poly::from_roots(&vec![*pole; *multiplicity as usize]),
        },
        SpectrumTerm::Delay { t0, inner } => {
            let mut p = rational_piece(inner)?;
            p.delay += t0;
            p
        }
        other => {
            return Err(GftError::Unsupported(format!(
                "forcing spectrum term {other:?} is not rational"
            )))
        }
    })
}

fn forcing_pieces(p: &OdeProblem) -> Result<(Vec<Piece>, Vec<Piece>)> {
    let expr = lookup_gft(&p.forcing, None)?;
    let clt = expr.clt_part.iter().map(rational_piece).collect::<Result<Vec<_>>>()?;
    let lt = expr.lt_part.iter().map(rational_piece).collect::<Result<Vec<_>>>()?;
    Ok((clt, lt))
}

/// `P(−v)`
fn reflected(p: &Poly) -> Poly {
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { *c } else { -c })
            .collect(),
    )
}

fn divided(pieces: &[Piece], by: &Poly) -> Result<Vec<PartialFractionForm>> {
    pieces
        .iter()
        .filter(|pc| !pc.num.is_zero())
        .map(|pc| {
            Ok(partial_fractions(&RationalFunction::new(
                pc.num.clone(),
                pc.den.mul(by),
                pc.delay,
            )?))
        })
        .collect()
}

fn collect(
    forms: &[PartialFractionForm],
    invert: fn(&PartialFractionForm) -> Result<SignalSpec>,
) -> Result<SignalSpec> {
    let mut out = SignalSpec::zero();
    for f in forms {
        out = out.plus(&invert(f)?);
    }
    Ok(out)
}

/// Solution valid for all `t`, built from the causal and anticausal
/// transform equations.
///
/// A delta at `t = 0` in the forcing belongs to the causal branch.
pub fn solve_ode_gft(p: &OdeProblem) -> Result<SignalSpec> {
    p.validate()?;
    let (clt_force, lt_force) = forcing_pieces(p)?;
    let char_poly = p.characteristic();

    let mut lt_pieces = lt_force;
    lt_pieces.push(Piece {
        delay: 0.0,
        num: p.initial_polynomial(1.0),
        den: Poly::constant(ONE),
    });
    let causal = collect(&divided(&lt_pieces, &char_poly)?, invert_lt_part)?;

    let mut clt_pieces = clt_force;
    clt_pieces.push(Piece {
        delay: 0.0,
        num: p.initial_polynomial(-1.0).scale(-ONE),
        den: Poly::constant(ONE),
    });
    let anticausal = collect(&divided(&clt_pieces, &reflected(&char_poly))?, invert_clt_part)?;
    Ok(causal.plus(&anticausal).compacted())
}

fn check_half_line(form: &PartialFractionForm, causal: bool) -> Result<()> {
    for t in &form.terms {
        let re = t.pole.re;
        let tol = AXIS_TOL * (1.0 + t.pole.norm());
        let bad = if causal { re > tol } else { re < -tol };
        if bad {
            return Err(GftError::Unsupported(format!(
                "mode e^{{({})t}} grows on the {} half-line, so its Fourier transform there does not exist; use the GFT solver",
                t.pole,
                if causal { "positive" } else { "negative" }
            )));
        }
    }
    Ok(())
}

/// Solution through the half-line Fourier spectra (`s = jω`).
///
/// The anticausal spectrum `𝔛(s) = ∫_{−∞}^0 x(t)e^{−st}dt` satisfies
/// `P(s)𝔛(s) = F_c(s) − Σ_k a_k Σ_i s^{k−i} x^{(i−1)}(0)`, keeping the
/// initial values that cancel against the causal side in the two-sided
/// transform. Problems whose modes grow towards either infinity are refused.
pub fn solve_ode_ft(p: &OdeProblem) -> Result<SignalSpec> {
    p.validate()?;
    let (clt_force, lt_force) = forcing_pieces(p)?;
    let char_poly = p.characteristic();

    let mut lt_pieces = lt_force;
    lt_pieces.push(Piece {
        delay: 0.0,
        num: p.initial_polynomial(1.0),
        den: Poly::constant(ONE),
    });
    let causal_forms = divided(&lt_pieces, &char_poly)?;
    for f in &causal_forms {
        check_half_line(f, true)?;
    }
    let causal = collect(&causal_forms, invert_lt_part)?;

    // anticausal side in s: forcing F_c(−s)·e^{s t0}, initial values with s^{k−i}
    let mut anticausal = SignalSpec::zero();
    let mut s_pieces: Vec<Piece> = clt_force
        .into_iter()
        .map(|pc| Piece {
            delay: pc.delay,
            num: reflected(&pc.num),
            den: reflected(&pc.den),
        })
        .collect();
    s_pieces.push(Piece {
        delay: 0.0,
        num: p.initial_polynomial(1.0).scale(-ONE),
        den: Poly::constant(ONE),
    });
    for pc in s_pieces.iter().filter(|pc| !pc.num.is_zero()) {
        let form = partial_fractions(&RationalFunction::new(pc.num.clone(), pc.den.mul(&char_poly), 0.0)?);
        check_half_line(&form, false)?;
        // back to v = −s for the time-domain reflection
        let in_v = PartialFractionForm {
            terms: form
                .terms
                .iter()
                .map(|t| PartialFractionTerm {
                    residue: if t.multiplicity % 2 == 0 { t.residue } else { -t.residue },
                    pole: -t.pole,
                    multiplicity: t.multiplicity,
                })
                .collect(),
            polynomial: reflected(&Poly::new(form.polynomial.clone())).coeffs().to_vec(),
            delay: pc.delay,
        };
        anticausal = anticausal.plus(&invert_clt_part(&in_v)?);
    }
    Ok(causal.plus(&anticausal).compacted())
}

/// Spacing used for derivative order `k`: `1e-4` up to second order, then
/// growing so that rounding stays below truncation.
fn stencil_step(k: usize) -> f64 {
    if k <= 2 {
        1e-4
    } else {
        10f64.powf(-16.0 / (k as f64 + 2.0))
    }
}

/// Fornberg weights for the `k`-th derivative at 0 on nodes `−r..=r` (unit spacing).
fn central_weights(k: usize, r: i64) -> Vec<f64> {
    let nodes: Vec<f64> = (-r..=r).map(|j| j as f64).collect();
    fornberg_weights(k, &nodes)
}

/// Fornberg weights for the `k`-th derivative at 0 on arbitrary nodes.
fn fornberg_weights(k: usize, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; k + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..n {
        let mn = i.min(k);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for m in (1..=mn).rev() {
                    c[i][m] = c1 * (m as f64 * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for m in (1..=mn).rev() {
                c[j][m] = (c4 * c[j][m] - m as f64 * c[j][m - 1]) / c3;
            }
            c[j][0] *= c4 / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[k]).collect()
}

/// Largest `|Σ a_k x^{(k)}(t) − f(t)|` over the grid, with derivatives from
/// central stencils (five points up to fourth order) and the delta-free part
/// of the forcing. Grid points within `1e-3` of a forcing delta are skipped.
pub fn verify_solution(sol: &SignalSpec, p: &OdeProblem, grid: &[f64]) -> Result<f64> {
    let deltas: Vec<f64> = p
        .forcing
        .terms
        .iter()
        .filter_map(|t| match t.atom {
            SignalAtom::Delta { t0 } => Some(t0),
            _ => None,
        })
        .collect();
    let regular = p.forcing.without_deltas();
    let a: Vec<Complex64> = p.coefficients.iter().rev().copied().collect();
    let x = |t: f64| evaluate_signal(sol, t);
    let mut worst: f64 = 0.0;
    for &t in grid {
        if deltas.iter().any(|d| (t - d).abs() < 1e-3) {
            continue;
        }
        let mut lhs = ZERO;
        for (k, ak) in a.iter().enumerate() {
            if *ak == ZERO {
                continue;
            }
            let d = if k == 0 {
                x(t)?
            } else {
                let r = k.div_ceil(2).max(2) as i64;
                let h = stencil_step(k);
                let w = central_weights(k, r);
                let mut acc = ZERO;
                for (j, wj) in (-r..=r).zip(&w) {
                    acc += x(t + j as f64 * h)? * *wj;
                }
                acc / h.powi(k as i32)
            };
            lhs += ak * d;
        }
        let rhs = evaluate_signal(&regular, t)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// `Σ_{k=0}^K b_k x[n−k] = f[n]` for `n ≥ 0` with `x[−1], …, x[−K]` given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DifferenceProblem {
    /// `b_0, …, b_K`
    pub coefficients: Vec<Complex64>,
    #[serde(default)]
    pub forcing: SequenceSpec,
    /// `x[−1], …, x[−K]`
    pub initial_conditions: Vec<Complex64>,
}

impl DifferenceProblem {
    pub fn new(
        coefficients: Vec<Complex64>,
        forcing: SequenceSpec,
        initial_conditions: Vec<Complex64>,
    ) -> Result<Self> {
        let p = DifferenceProblem {
            coefficients,
            forcing,
            initial_conditions,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |c: &Complex64| c.re.is_finite() && c.im.is_finite();
        match self.coefficients.first() {
            None => return Err(GftError::Constraint("at least b_0 is required".into())),
            Some(b0) if *b0 == ZERO => {
                return Err(GftError::Constraint(
                    "b_0 = 0 leaves x[n] undetermined; normalize the recursion so b_0 != 0".into(),
                ))
            }
            _ => {}
        }
        if !self.coefficients.iter().chain(&self.initial_conditions).all(finite) {
            return Err(GftError::Constraint(
                "coefficients and initial conditions must be finite".into(),
            ));
        }
        let k = self.coefficients.len() - 1;
        if self.initial_conditions.len() != k {
            return Err(GftError::Constraint(format!(
                "{k} initial conditions are required, got {}",
                self.initial_conditions.len()
            )));
        }
        self.forcing.validate()
    }
}

/// `coef · C(n−start+k−1, k−1) · ratio^{n−start}` for `n ≥ start`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricMode {
    pub coef: Complex64,
    pub ratio: Complex64,
    pub multiplicity: u32,
    pub start: u32,
}

impl GeometricMode {
    pub fn value(&self, n: u32) -> Complex64 {
        if n < self.start {
            return ZERO;
        }
        let m = n - self.start;
        let k = self.multiplicity;
        self.coef * binomial(m + k - 1, k - 1) * self.ratio.powu(m)
    }
}

/// Closed-form solution for `n ≥ 0`: geometric modes plus finitely many impulses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DifferenceSolution {
    /// `X(z)` in `w = z^{−1}`.
    pub spectrum: ZSpectrumExpr,
    pub modes: Vec<GeometricMode>,
    /// `(n, coefficient)` pairs.
    pub impulses: Vec<(u32, Complex64)>,
}

impl DifferenceSolution {
    pub fn sample(&self, n: u32) -> Complex64 {
        let modes: Complex64 = self.modes.iter().map(|m| m.value(n)).sum();
        let impulses: Complex64 = self.impulses.iter().filter(|(k, _)| *k == n).map(|(_, c)| c).sum();
        modes + impulses
    }

    /// `x[0..count]`
    pub fn samples(&self, count: u32) -> Vec<Complex64> {
        (0..count).map(|n| self.sample(n)).collect()
    }
}

/// Unilateral `z` algebra: `B(w)X = F(w) − Σ_k b_k Σ_{j=1}^k x[−j] w^{k−j}`
/// with `w = z^{−1}`, inverted by partial fractions in `w`.
pub fn solve_difference(p: &DifferenceProblem) -> Result<DifferenceSolution> {
    p.validate()?;
    let b = Poly::new(p.coefficients.clone());
    let mut ic = vec![ZERO; p.coefficients.len().max(1)];
    for (k, bk) in p.coefficients.iter().enumerate().skip(1) {
        for j in 1..=k {
            ic[k - j] -= bk * p.initial_conditions[j - 1];
        }
    }
    let forcing = gdtft_closed_form(&p.forcing)?;
    let mut pieces: Vec<ZTerm> = forcing.lt_part.clone();
    pieces.push(ZTerm::new(Poly::new(ic), Poly::constant(ONE), 0));

    let mut modes = Vec::new();
    let mut impulses = Vec::new();
    let mut spectrum_terms = Vec::new();
    for term in pieces.iter().filter(|t| !t.is_zero()) {
        if term.shift < 0 {
            return Err(GftError::Unsupported(
                "forcing with a negative power of z^-1 on the causal side".into(),
            ));
        }
        let start = term.shift as u32;
        let den = term.denominator.mul(&b);
        spectrum_terms.push(ZTerm::new(term.numerator.clone(), den.clone(), term.shift));
        let form = partial_fractions_factored(
            &RationalFunction::new(term.numerator.clone(), den, 0.0)?,
            &[term.denominator.clone(), b.clone()],
        );
        for (j, c) in form.polynomial.iter().enumerate() {
            if *c != ZERO {
                impulses.push((start + j as u32, *c));
            }
        }
        for t in &form.terms {
            // r/(w − ρ)^k = r(−1/ρ)^k / (1 − w/ρ)^k
            let ratio = 1.0 / t.pole;
            modes.push(GeometricMode {
                coef: t.residue * (-ratio).powu(t.multiplicity),
                ratio,
                multiplicity: t.multiplicity,
                start,
            });
        }
    }
    Ok(DifferenceSolution {
        spectrum: ZSpectrumExpr::from_parts(Vec::new(), spectrum_terms),
        modes,
        impulses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gdtft::SequenceAtom;
    use crate::signal::{GatedAtom, Oscillation};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.37) / n as f64).collect()
    }

    fn sin_gate(causal: bool, t0: f64, omega: f64) -> SignalAtom {
        let osc = Oscillation::Sin { omega };
        SignalAtom::Gated(if causal {
            GatedAtom::causal(t0, 0, ZERO, osc)
        } else {
            GatedAtom::anticausal(t0, 0, ZERO, osc)
        })
    }

    #[test]
    fn free_oscillator() {
        let p = OdeProblem::from_real(&[1.0, 0.0, 4.0], SignalSpec::zero(), &[1.0, 0.0]).unwrap();
        let sol = solve_ode_gft(&p).unwrap();
        let want = SignalSpec::atom(SignalAtom::Cosine { omega0: 2.0 });
        assert!(sol.approx_eq(&want, 1e-10).unwrap(), "{sol:?}");
        assert!(verify_solution(&sol, &p, &grid(-3.0, 3.0, 60)).unwrap() < 1e-5);
        let ft = solve_ode_ft(&p).unwrap();
        assert!(ft.approx_eq(&sol, 1e-10).unwrap());
    }

    #[test]
    fn delayed_and_advanced_impulses() {
        let fwd = OdeProblem::from_real(
            &[1.0, 0.0, 1.0],
            SignalSpec::atom(SignalAtom::Delta { t0: 1.0 }),
            &[0.0, 0.0],
        )
        .unwrap();
        let sol = solve_ode_gft(&fwd).unwrap();
        assert!(
            sol.approx_eq(&SignalSpec::atom(sin_gate(true, 1.0, 1.0)), 1e-10)
                .unwrap(),
            "{sol:?}"
        );

        let back = OdeProblem::from_real(
            &[1.0, 0.0, 1.0],
            SignalSpec::atom(SignalAtom::Delta { t0: -1.0 }),
            &[0.0, 0.0],
        )
        .unwrap();
        let sol = solve_ode_gft(&back).unwrap();
        // −sin(t+1)u(−t−1) is the mirrored gate sin(−t−1) on t < −1
        assert!(
            sol.approx_eq(&SignalSpec::atom(sin_gate(false, 1.0, 1.0)), 1e-10)
                .unwrap(),
            "{sol:?}"
        );
        for t in [-3.0, -1.5, -0.5, 0.5, 2.0] {
            let want = if t < -1.0 { -(t + 1.0f64).sin() } else { 0.0 };
            assert!((evaluate_signal(&sol, t).unwrap() - c(want)).norm() < 1e-12);
        }
        let g: Vec<f64> = grid(-4.0, 4.0, 80)
            .into_iter()
            .filter(|t| (t.abs() - 1.0).abs() > 0.01)
            .collect();
        assert!(verify_solution(&sol, &back, &g).unwrap() < 1e-5);
    }

    #[test]
    fn ft_route_examples() {
        let p = OdeProblem::from_real(&[1.0, 0.0, 1.0], SignalSpec::zero(), &[0.0, 1.0]).unwrap();
        let sol = solve_ode_ft(&p).unwrap();
        assert!(sol
            .approx_eq(&SignalSpec::atom(SignalAtom::Sine { omega0: 1.0 }), 1e-10)
            .unwrap());

        let zero = OdeProblem::from_real(&[1.0, 3.0, 1.0], SignalSpec::zero(), &[0.0, 0.0]).unwrap();
        assert!(solve_ode_ft(&zero).unwrap().normalized(1e-14).unwrap().terms.is_empty());
        assert!(solve_ode_gft(&zero)
            .unwrap()
            .normalized(1e-14)
            .unwrap()
            .terms
            .is_empty());
    }

    #[test]
    fn first_order_decay_needs_the_gft_route() {
        let p = OdeProblem::from_real(&[1.0, 1.0], SignalSpec::zero(), &[1.0]).unwrap();
        let sol = solve_ode_gft(&p).unwrap();
        for t in [-2.0, -0.3, 0.0, 0.4, 3.0] {
            assert!((evaluate_signal(&sol, t).unwrap() - c((-t).exp())).norm() < 1e-12);
        }
        assert!(matches!(solve_ode_ft(&p), Err(GftError::Unsupported(_))));
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            OdeProblem::from_real(&[0.0, 1.0], SignalSpec::zero(), &[1.0]),
            Err(GftError::Degenerate(_))
        ));
        assert!(matches!(
            OdeProblem::from_real(&[0.0, 0.0], SignalSpec::zero(), &[1.0]),
            Err(GftError::Degenerate(_))
        ));
        assert!(matches!(
            OdeProblem::from_real(&[1.0, 1.0], SignalSpec::zero(), &[]),
            Err(GftError::Constraint(_))
        ));
        let p = OdeProblem::from_real(&[1.0, 1.0], SignalSpec::atom(SignalAtom::AbsPower { m: 0.5 }), &[0.0]).unwrap();
        assert!(matches!(solve_ode_gft(&p), Err(GftError::Unsupported(_))));
    }

    #[test]
    fn verify_detects_wrong_candidate() {
        let p = OdeProblem::from_real(&[1.0, 0.0, 4.0], SignalSpec::zero(), &[1.0, 0.0]).unwrap();
        let wrong = SignalSpec::atom(SignalAtom::Sine { omega0: 1.0 });
        assert!(verify_solution(&wrong, &p, &grid(-3.0, 3.0, 60)).unwrap() > 1.0);
    }

    #[test]
    fn stencil_weights() {
        let w = central_weights(2, 2);
        let want = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        let w4 = central_weights(4, 2);
        for (a, b) in w4.iter().zip([1.0, -4.0, 6.0, -4.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn forced_and_higher_order_problems() {
        // x''' + 2x'' + 3x' + x = cos(2t) + e^{−|t|}, generic ICs
        let forcing = SignalSpec::zero()
            .with(1.0, SignalAtom::Cosine { omega0: 2.0 })
            .with(1.0, SignalAtom::AbsExp { a: c(1.0) });
        let p = OdeProblem::from_real(&[1.0, 2.0, 3.0, 1.0], forcing, &[0.5, -1.0, 2.0]).unwrap();
        let sol = solve_ode_gft(&p).unwrap();
        let g: Vec<f64> = grid(-3.0, 3.0, 40).into_iter().filter(|t| t.abs() > 0.02).collect();
        assert!(verify_solution(&sol, &p, &g).unwrap() < 1e-5);
        // resonant forcing gives a double pole
        let p = OdeProblem::from_real(
            &[1.0, 0.0, 1.0],
            SignalSpec::atom(SignalAtom::Sine { omega0: 1.0 }),
            &[0.0, 0.0],
        )
        .unwrap();
        let sol = solve_ode_gft(&p).unwrap();
        assert!(verify_solution(&sol, &p, &grid(-4.0, 4.0, 50)).unwrap() < 1e-5);
        assert!(solve_ode_ft(&p).unwrap().approx_eq(&sol, 1e-9).unwrap());
    }

    fn branch_limits(sol: &SignalSpec, k: usize) -> (Complex64, Complex64) {
        // one-sided stencils that never touch the other branch
        let h = 1e-2;
        let side = |nodes: Vec<f64>| -> Complex64 {
            let w = fornberg_weights(k, &nodes);
            let s: Complex64 = nodes
                .iter()
                .zip(&w)
                .map(|(x, wj)| evaluate_signal(sol, x * h).unwrap() * *wj)
                .sum();
            s / h.powi(k as i32)
        };
        (
            side((1..=8).map(|j| -(j as f64)).collect()),
            side((0..8).map(|j| j as f64).collect()),
        )
    }

    #[test]
    fn branches_meet_the_initial_values() {
        let forcing = SignalSpec::atom(SignalAtom::Cosine { omega0: 0.5 });
        let p = OdeProblem::from_real(&[1.0, 0.3, 2.0], forcing, &[0.7, -0.4]).unwrap();
        let sol = solve_ode_gft(&p).unwrap();
        for (k, ic) in p.initial_conditions.iter().enumerate() {
            let (l, r) = branch_limits(&sol, k);
            assert!((l - ic).norm() < 1e-4, "k={k}: left {l} vs {ic}");
            assert!((r - ic).norm() < 1e-4, "k={k}: right {r} vs {ic}");
        }
    }

    #[test]
    fn difference_examples() {
        let impulse = SequenceSpec::atom(SequenceAtom::DiracDeltaN { n0: 0 });
        let p = DifferenceProblem::new(vec![c(1.0), c(-0.5)], impulse.clone(), vec![c(0.0)]).unwrap();
        let s = solve_difference(&p).unwrap();
        for n in 0..20 {
            assert!((s.sample(n) - c(0.5f64.powi(n as i32))).norm() < 1e-15);
        }
        let p = DifferenceProblem::new(vec![c(1.0), c(-0.5)], SequenceSpec::zero(), vec![c(2.0)]).unwrap();
        let s = solve_difference(&p).unwrap();
        assert!((s.sample(0) - c(1.0)).norm() < 1e-15);
        assert!((s.sample(5) - c(0.5f64.powi(5))).norm() < 1e-15);

        let p = DifferenceProblem::new(vec![c(1.0)], impulse, vec![]).unwrap();
        let s = solve_difference(&p).unwrap();
        assert_eq!(s.samples(4), vec![c(1.0), ZERO, ZERO, ZERO]);

        assert!(matches!(
            DifferenceProblem::new(vec![c(0.0), c(1.0)], SequenceSpec::zero(), vec![c(1.0)]),
            Err(GftError::Constraint(_))
        ));
    }

    fn recursion(p: &DifferenceProblem, count: usize) -> Vec<Complex64> {
        let k = p.coefficients.len() - 1;
        // history[k + n] = x[n]
        let mut hist: Vec<Complex64> = p.initial_conditions.iter().rev().copied().collect();
        for n in 0..count as i64 {
            let mut acc = p.forcing.sample(n);
            for (j, bj) in p.coefficients.iter().enumerate().skip(1) {
                acc -= bj * hist[k + n as usize - j];
            }
            hist.push(acc / p.coefficients[0]);
        }
        hist[k..].to_vec()
    }

    #[test]
    fn difference_matches_recursion_with_table_forcing() {
        let forcing = SequenceSpec::zero()
            .with(1.0, SequenceAtom::CosineN { omega0: 0.9 })
            .with(2.0, SequenceAtom::DiracDeltaN { n0: 3 })
            .with(
                -0.5,
                SequenceAtom::UnitStepN {
                    orientation: Default::default(),
                },
            )
            .with(1.0, SequenceAtom::AbsGeometricN { a: c(0.6) });
        let p = DifferenceProblem::new(vec![c(1.0), c(-0.9), c(0.2)], forcing, vec![c(1.0), c(-2.0)]).unwrap();
        let s = solve_difference(&p).unwrap();
        let want = recursion(&p, 65);
        for (n, w) in want.iter().enumerate() {
            assert!((s.sample(n as u32) - w).norm() < 1e-12 * (1.0 + w.norm()), "n={n}");
            assert!((s.spectrum.sample(n as i64) - w).norm() < 1e-10 * (1.0 + w.norm()));
        }
    }

    #[test]
    fn random_stable_difference_equations() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let k = rng.gen_range(1..=4);
            let mut roots: Vec<Complex64> = Vec::new();
            while roots.len() < k {
                let r = Complex64::from_polar(rng.gen_range(0.05..0.9), rng.gen_range(-3.1..3.1));
                if roots.iter().all(|q| (q - r).norm() > 0.05) {
                    roots.push(r);
                }
            }
            // B(w) = Π (1 − r w)
            let mut b = Poly::constant(ONE);
            for r in &roots {
                b = b.mul(&Poly::new(vec![ONE, -r]));
            }
            let b0 = Complex64::new(rng.gen_range(0.5..2.0), 0.0);
            let coeffs: Vec<Complex64> = (0..=k).map(|i| b.coeffs()[i] * b0).collect();
            let ics: Vec<Complex64> = (0..k).map(|_| c(rng.gen_range(-2.0..2.0))).collect();
            let forcing = SequenceSpec::atom(SequenceAtom::DiracDeltaN {
                n0: rng.gen_range(0..4),
            });
            let p = DifferenceProblem::new(coeffs, forcing, ics).unwrap();
            let s = solve_difference(&p).unwrap();
            for (n, w) in recursion(&p, 65).iter().enumerate() {
                assert!(
                    (s.sample(n as u32) - w).norm() < 1e-12 * (1.0 + w.norm()),
                    "n={n} {p:?}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn gft_and_ft_agree_on_oscillators(omega in 0.2f64..3.0, x0 in -2.0f64..2.0, v0 in -2.0f64..2.0, t0 in 0.1f64..2.0) {
            let forcing = SignalSpec::zero()
                .with(1.0, SignalAtom::Delta { t0 })
                .with(-0.5, SignalAtom::Delta { t0: -t0 });
            let p = OdeProblem::from_real(&[1.0, 0.0, omega * omega], forcing, &[x0, v0]).unwrap();
            let a = solve_ode_gft(&p).unwrap();
            let b = solve_ode_ft(&p).unwrap();
            prop_assert!(a.approx_eq(&b, 1e-9).unwrap());
        }
    }
}
