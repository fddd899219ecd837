//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line
//! with the measured worst error; the test fails if any criterion fails.

use std::f64::consts::PI;

use gft_core::quad::{integrate, integrate_half_line, OscHint};
use gft_core::special::{gamma, generalized_gamma, incomplete_gamma, GammaKind};
use gft_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn freq(sigma: f64, omega: f64) -> ComplexFrequency {
    ComplexFrequency::new(sigma, omega).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::with_tol(1e-11, 1e-13)
}

struct Outcome {
    detail: String,
    pass: bool,
}

fn within(err: f64, tol: f64) -> Outcome {
    Outcome {
        detail: format!("worst error {err:.3e}, tolerance {tol:.0e}"),
        pass: err.is_finite() && err <= tol,
    }
}

fn all(parts: Vec<(&str, Outcome)>) -> Outcome {
    let pass = parts.iter().all(|(_, o)| o.pass);
    let detail = parts
        .iter()
        .map(|(name, o)| format!("{name}: {}{}", if o.pass { "" } else { "FAILED " }, o.detail))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { detail, pass }
}

fn failed(e: GftError) -> Outcome {
    Outcome {
        detail: format!("error: {e}"),
        pass: false,
    }
}

fn run(id: u32, name: &str, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = std::time::Instant::now();
    let out = f().unwrap_or_else(failed);
    println!(
        "criterion {id:>2} {name}: {} ({}) [{:.1}s]",
        if out.pass { "PASS" } else { "FAIL" },
        out.detail,
        start.elapsed().as_secs_f64()
    );
    out.pass
}

fn signal(spec: &SignalSpec) -> impl Fn(f64) -> Complex64 + '_ {
    move |t| evaluate_signal(spec, t).unwrap()
}

fn table_conformance() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(2024);
    let w0 = 1.5;
    let a = 0.4;
    let b = Complex64::new(0.8, 0.3);
    // (atom, ROC abscissa, closed form from the table)
    type Closed = Box<dyn Fn(Complex64, Complex64) -> Complex64>;
    let rows: Vec<(SignalAtom, f64, Closed)> = vec![
        (SignalAtom::Constant, 0.0, Box::new(|s, sc| 1.0 / sc + 1.0 / s)),
        (SignalAtom::Signum, 0.0, Box::new(|s, sc| -1.0 / sc + 1.0 / s)),
        (
            SignalAtom::UnitStep {
                orientation: Orientation::Forward,
            },
            0.0,
            Box::new(|s, _| 1.0 / s),
        ),
        (
            SignalAtom::UnitStep {
                orientation: Orientation::Reversed,
            },
            0.0,
            Box::new(|_, sc| 1.0 / sc),
        ),
        (
            SignalAtom::TwoSidedExp { a: c(a) },
            a,
            Box::new(move |s, sc| 1.0 / (sc - a) + 1.0 / (s + a)),
        ),
        (
            SignalAtom::AbsExp { a: b },
            -b.re,
            Box::new(move |s, sc| 1.0 / (sc + b) + 1.0 / (s + b)),
        ),
        (
            SignalAtom::ComplexExp { omega0: w0 },
            0.0,
            Box::new(move |s, sc| 1.0 / (sc + Complex64::i() * w0) + 1.0 / (s - Complex64::i() * w0)),
        ),
        (
            SignalAtom::Cosine { omega0: w0 },
            0.0,
            Box::new(move |s, sc| sc / (sc * sc + w0 * w0) + s / (s * s + w0 * w0)),
        ),
        (
            SignalAtom::Sine { omega0: w0 },
            0.0,
            Box::new(move |s, sc| -w0 / (sc * sc + w0 * w0) + w0 / (s * s + w0 * w0)),
        ),
        (
            SignalAtom::Power { m: 2.0 },
            0.0,
            Box::new(|s, sc| 2.0 * (1.0 / sc.powu(3) + 1.0 / s.powu(3))),
        ),
        (
            SignalAtom::Power { m: 1.0 },
            0.0,
            Box::new(|s, sc| -1.0 / (sc * sc) + 1.0 / (s * s)),
        ),
        (
            SignalAtom::AbsPower { m: 0.5 },
            0.0,
            Box::new(|s, sc| gamma(c(1.5)).unwrap() * (1.0 / sc.powf(1.5) + 1.0 / s.powf(1.5))),
        ),
    ];
    let mut worst = 0.0f64;
    for (atom, abscissa, closed) in &rows {
        let spec = SignalSpec::atom(*atom);
        let expr = lookup_gft(&spec, None)?;
        let x = signal(&spec);
        for _ in 0..20 {
            let f = freq(abscissa + rng.gen_range(0.3..2.5), rng.gen_range(-5.0..5.0));
            let want = closed(f.s(), f.s_conj());
            let numeric = gft_forward(&x, f, WeightSpec::default(), &cfg())?;
            let symbolic = eval_spectrum(&expr, f)?;
            let rel = |v: Complex64| (v - want).norm() / want.norm().max(1e-300);
            worst = worst.max(rel(numeric)).max(rel(symbolic));
        }
    }
    Ok(within(worst, 1e-6))
}

fn normalization() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for sigma in [0.1, 1.0, 10.0] {
        let g = |w: f64| c(2.0 * sigma / (sigma * sigma + w * w));
        let half = integrate_half_line(g, 0.0, OscHint::None, &QuadratureConfig::with_tol(1e-12, 1e-13))?;
        worst = worst.max((2.0 * half.value.re - 2.0 * PI).abs());
    }
    Ok(within(worst, 1e-6))
}

fn duality() -> Result<Outcome> {
    let sigma = 1.0;
    let x = move |t: f64| c(sigma / (PI * (sigma * sigma + t * t)));
    let mut worst = 0.0f64;
    for k in 0..21 {
        let omega = -5.0 + 0.5 * k as f64;
        let v = gft_forward(&x, freq(0.0, omega), WeightSpec::default(), &cfg())?;
        worst = worst.max((v - c((-sigma * omega.abs()).exp())).norm());
    }
    Ok(within(worst, 1e-5))
}

fn hilbert_kernel() -> Result<Outcome> {
    let x = |t: f64| c(1.0 / t);
    let mut worst = 0.0f64;
    for omega in [-1.0f64, 1.0] {
        let v = weighted_limit_p(&x, omega, &[0.2, 0.1, 0.05], &QuadratureConfig::with_tol(1e-10, 1e-12))?;
        let want = Complex64::new(0.0, -PI * omega.signum());
        worst = worst.max((v - want).norm());
    }
    Ok(within(worst, 1e-3))
}

fn periodic() -> Result<Outcome> {
    let spec = SignalSpec::atom(SignalAtom::Cosine { omega0: 2.0 * PI });
    let px = PeriodicSignal::new(1.0, PeriodSource::Spec(spec.clone()))?;
    let expr = lookup_gft(&spec, None)?;
    let mut closed_err = 0.0f64;
    let mut direct_err = 0.0f64;
    for k in 0..10 {
        let f = freq(0.5 + 0.15 * k as f64, -6.0 + 1.3 * k as f64);
        let v = periodic_gft(&px, f, &cfg())?;
        closed_err = closed_err.max((v - eval_spectrum(&expr, f)?).norm());
        // ∫_{−40}^{40} cos(2πt) e^{−σ|t|} e^{−jωt} dt folded onto [0, 40]
        let h = |t: f64| {
            let e = Complex64::from_polar(1.0, -f.omega * t);
            (e + e.conj()) * (2.0 * PI * t).cos() * (-f.sigma * t).exp()
        };
        let direct = integrate(h, 0.0, 40.0, Some(0.125), &cfg())?;
        direct_err = direct_err.max((v - direct.value).norm());
    }
    Ok(all(vec![
        ("closed form", within(closed_err, 1e-6)),
        ("40 periods", within(direct_err, 1e-4)),
    ]))
}

fn ivp_reproduction() -> Result<Outcome> {
    let forcing = SignalSpec::zero()
        .with(1.0, SignalAtom::Delta { t0: 1.0 })
        .with(1.0, SignalAtom::Delta { t0: -1.0 });
    // x(0) = a1 = 1, x'(0) = a2·ωc = 1
    let p = OdeProblem::from_real(&[1.0, 0.0, 1.0], forcing, &[1.0, 1.0])?;
    let sol = solve_ode_gft(&p)?;
    let sin_gate = |g: GatedAtom| SignalAtom::Gated(g);
    let de4 = SignalSpec::zero()
        .with(1.0, SignalAtom::Cosine { omega0: 1.0 })
        .with(1.0, SignalAtom::Sine { omega0: 1.0 })
        .with(
            1.0,
            sin_gate(GatedAtom::causal(1.0, 0, c(0.0), Oscillation::Sin { omega: 1.0 })),
        )
        // −sin(t+1)u(−t−1) = sin(−t−1) on t < −1
        .with(
            1.0,
            sin_gate(GatedAtom::anticausal(1.0, 0, c(0.0), Oscillation::Sin { omega: 1.0 })),
        );
    let identical = sol.approx_eq(&de4, 1e-10)?;
    let grid: Vec<f64> = (0..400)
        .map(|i| -4.0 + 8.0 * (i as f64 + 0.5) / 400.0)
        .filter(|t| (t.abs() - 1.0).abs() > 0.02)
        .collect();
    let residual = verify_solution(&sol, &p, &grid)?;
    let ft = solve_ode_ft(&p)?;
    let agrees = ft.approx_eq(&sol, 1e-10)?;
    let flag = |ok: bool| Outcome {
        detail: if ok { "matches".into() } else { "differs".into() },
        pass: ok,
    };
    Ok(all(vec![
        ("closed form", flag(identical)),
        ("residual", within(residual, 1e-5)),
        ("FT route", flag(agrees)),
    ]))
}

fn derivative_property() -> Result<Outcome> {
    let spec = SignalSpec::atom(SignalAtom::AbsExp { a: c(1.0) });
    let expr = lookup_gft(&spec, None)?;
    // Pointwise derivatives of e^{−|t|}; the initial values are one-sided.
    type Case = (u32, Vec<Complex64>, Vec<Complex64>, Box<dyn Fn(f64) -> Complex64>);
    let cases: Vec<Case> = vec![
        (
            1,
            vec![c(1.0)],
            vec![c(1.0)],
            Box::new(|t: f64| c(-t.signum() * (-t.abs()).exp())),
        ),
        (
            2,
            vec![c(1.0), c(-1.0)],
            vec![c(1.0), c(1.0)],
            Box::new(|t: f64| c((-t.abs()).exp())),
        ),
    ];
    let mut worst = 0.0f64;
    for (m, right, left, dx) in cases {
        let d = apply_time_property(
            &expr,
            &TimeProperty::Derivative {
                order: m,
                right_ics: right,
                left_ics: Some(left),
            },
        )?;
        for k in 0..10 {
            let f = freq(0.2 + 0.25 * k as f64, -4.0 + 0.85 * k as f64);
            let q = gft_forward(&dx, f, WeightSpec::default(), &cfg())?;
            worst = worst.max((eval_spectrum(&d, f)? - q).norm());
        }
    }
    Ok(within(worst, 1e-6))
}

fn discrete_rows() -> Vec<SequenceAtom> {
    vec![
        SequenceAtom::DiracDeltaN { n0: 0 },
        SequenceAtom::DiracDeltaN { n0: 2 },
        SequenceAtom::DiracDeltaN { n0: -3 },
        SequenceAtom::ConstantN,
        SequenceAtom::SignumN,
        SequenceAtom::UnitStepN {
            orientation: Orientation::Forward,
        },
        SequenceAtom::UnitStepN {
            orientation: Orientation::Reversed,
        },
        SequenceAtom::GeometricN { a: c(0.7) },
        SequenceAtom::GeometricN {
            a: Complex64::new(0.4, -0.9),
        },
        SequenceAtom::AbsGeometricN { a: c(0.6) },
        SequenceAtom::AbsGeometricN {
            a: Complex64::new(-0.2, 0.5),
        },
        SequenceAtom::ComplexExpN { omega0: 0.9 },
        SequenceAtom::CosineN { omega0: 1.3 },
        SequenceAtom::SineN { omega0: 0.5 },
    ]
}

fn sigma_inside(roc: &Roc, k: usize) -> f64 {
    let r0 = match *roc {
        Roc::OutsideCircle { r0 } => r0,
        _ => 1.0,
    };
    r0.ln().max(0.0) + 0.2 + 0.05 * (k % 5) as f64
}

fn discrete_conformance() -> Result<Outcome> {
    let mut sum_err = 0.0f64;
    let mut trip_err = 0.0f64;
    for atom in discrete_rows() {
        let spec = SequenceSpec::atom(atom);
        let expr = gdtft_closed_form(&spec)?;
        for k in 0..10 {
            let f = DiscreteFrequency::new(sigma_inside(&expr.roc, k), -3.0 + 0.6 * k as f64)?;
            let closed = expr.eval(f)?;
            let direct = gdtft_numeric(&spec, f, 8192)?;
            sum_err = sum_err.max((closed - direct.value).norm() / (1.0 + closed.norm()));
        }
        let sigma = sigma_inside(&expr.roc, 0);
        let x = |omega, sigma| expr.eval(DiscreteFrequency::new(sigma, omega)?);
        for n in -16..=16 {
            let got = igdtft_numeric(x, sigma, n, 32, 1e-10)?;
            trip_err = trip_err.max((got - atom.sample(n)).norm());
        }
    }
    Ok(all(vec![
        ("direct sums", within(sum_err, 1e-8)),
        ("round trip", within(trip_err, 1e-6)),
    ]))
}

fn recursion(p: &DifferenceProblem, count: usize) -> Vec<Complex64> {
    let k = p.coefficients.len() - 1;
    // hist holds x[−K..−1] followed by computed samples.
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

fn difference_equations() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let k = rng.gen_range(1..=4);
        let mut roots: Vec<Complex64> = Vec::new();
        while roots.len() < k {
            let r = Complex64::from_polar(rng.gen_range(0.05..0.9), rng.gen_range(-3.1..3.1));
            if roots.iter().all(|q| (q - r).norm() > 0.05) {
                roots.push(r);
            }
        }
        let mut b = Poly::constant(c(1.0));
        for r in &roots {
            b = b.mul(&Poly::new(vec![c(1.0), -r]));
        }
        let scale = rng.gen_range(0.5..2.0);
        let coeffs: Vec<Complex64> = (0..=k).map(|i| b.coeffs()[i] * scale).collect();
        let ics: Vec<Complex64> = (0..k).map(|_| c(rng.gen_range(-2.0..2.0))).collect();
        let forcing = match rng.gen_range(0..3) {
            0 => SequenceSpec::atom(SequenceAtom::DiracDeltaN {
                n0: rng.gen_range(0..4),
            }),
            1 => SequenceSpec::atom(SequenceAtom::CosineN {
                omega0: rng.gen_range(0.1..3.0),
            }),
            _ => SequenceSpec::atom(SequenceAtom::UnitStepN {
                orientation: Orientation::Forward,
            }),
        };
        let p = DifferenceProblem::new(coeffs, forcing, ics)?;
        let s = solve_difference(&p)?;
        for (n, w) in recursion(&p, 65).iter().enumerate() {
            worst = worst.max((s.sample(n as u32) - w).norm() / (1.0 + w.norm()));
        }
    }
    Ok(within(worst, 1e-12))
}

fn gamma_suite() -> Result<Outcome> {
    let mut completeness = 0.0f64;
    for s in [c(0.5), c(1.0), c(2.5), Complex64::new(1.0, 1.0)] {
        for x in [0.5, 1.0, 3.0] {
            let sum = incomplete_gamma(GammaKind::Lower, s, x)? + incomplete_gamma(GammaKind::Upper, s, x)?;
            completeness = completeness.max((sum - gamma(s)?).norm());
        }
    }
    let g = [
        generalized_gamma(c(1.0))?,
        generalized_gamma(c(2.0))?,
        generalized_gamma(c(3.0))?,
    ];
    let exact = (g[0] - 2.0).norm().max(g[1].norm()).max((g[2] - 4.0).norm());
    let mut blt = 0.0f64;
    for s in [0.5, 1.0, 2.0] {
        let v = gumbel_laplace(c(s), &QuadratureConfig::with_tol(1e-12, 1e-14))?;
        blt = blt.max((v - gamma(c(s + 1.0))? / s).norm());
    }
    Ok(all(vec![
        ("completeness", within(completeness, 1e-10)),
        ("G(1), G(2), G(3)", within(exact, 8.0 * f64::EPSILON)),
        ("bilateral realization", within(blt, 1e-6)),
    ]))
}

fn scale_transform() -> Result<Outcome> {
    let y = ScaleFunction::new(|t: f64| c((-t).exp()), cfg());
    let mut forward = 0.0f64;
    for s in [c(1.0), c(2.0), Complex64::new(1.0, 1.0)] {
        let f = freq(s.re, s.im);
        let v = fst_forward(&y, f)?;
        let want = incomplete_gamma(GammaKind::Lower, s, 1.0)? + incomplete_gamma(GammaKind::Upper, -s.conj(), 1.0)?;
        forward = forward.max((v.total() - want).norm());
    }
    let step = ScaleSpec::atom(ScaleAtom::Step);
    let mut trip = 0.0f64;
    for tau in [0.25, 0.5, 2.0, 4.0] {
        let v = ifst_of(&step, 1.0, tau, &QuadratureConfig::with_tol(1e-8, 1e-9))?;
        trip = trip.max((v - 1.0).norm());
    }
    Ok(all(vec![
        ("forward", within(forward, 1e-8)),
        ("round trip", within(trip, 1e-4)),
    ]))
}

fn moments() -> Result<Outcome> {
    let m2 = cauchy_damped_moment(2, 1.0, &cfg())?;
    let oracle = integrate_half_line(
        |y| c(y * y * (-y).exp() / (1.0 + y * y)),
        0.0,
        OscHint::None,
        &QuadratureConfig::with_tol(1e-13, 1e-15),
    )?
    .value
    .re * 2.0
        / PI;
    let rest = integrate_half_line(
        |y| c((-y).exp() / (1.0 + y * y)),
        0.0,
        OscHint::None,
        &QuadratureConfig::with_tol(1e-13, 1e-15),
    )?
    .value
    .re;
    let identity = 2.0 / PI * (1.0 - rest);
    let moment_err = (m2.value - oracle).abs().max((m2.value - identity).abs());
    let mut odd = 0.0f64;
    for m in [1, 3, 5, 7] {
        for sigma in [0.1, 1.0, 4.0] {
            odd = odd.max(cauchy_damped_moment(m, sigma, &cfg())?.value.abs());
        }
    }
    let laplace = |y: f64| 0.5 * (-y.abs()).exp();
    let series = mgf_series_check(laplace, 0.2, 6, &cfg())?;
    Ok(all(vec![
        ("moment(2,1)", within(moment_err, 1e-8)),
        ("odd moments", within(odd, 0.0)),
        ("mgf series M=6", within(series.max_abs_error, 1e-6)),
    ]))
}

fn convolution() -> Result<Outcome> {
    let (a1, a2) = (1.0, 2.0);
    let spec1 = SignalSpec::atom(SignalAtom::AbsExp { a: c(a1) });
    let spec2 = SignalSpec::atom(SignalAtom::AbsExp { a: c(a2) });
    let e1 = lookup_gft(&spec1, None)?;
    let e2 = lookup_gft(&spec2, None)?;
    let product = lookup_gft(&SignalSpec::atom(SignalAtom::AbsExp { a: c(a1 + a2) }), None)?;
    let cfg = QuadratureConfig::with_tol(1e-10, 1e-12);
    let mut conv1 = 0.0f64;
    for (sigma1, sigma2) in [(0.3, 0.5), (0.0, 0.8), (1.0, 0.25)] {
        let sigma = sigma1 + sigma2;
        for omega in [-2.0, 0.0, 0.7, 3.0] {
            let lhs = eval_spectrum(&product, freq(sigma, omega))?;
            let rhs = frequency_convolution(
                |w| eval_spectrum(&e1, freq(sigma1, w)),
                |w| eval_spectrum(&e2, freq(sigma2, w)),
                omega,
                &cfg,
            )?;
            conv1 = conv1.max((lhs - rhs).norm());
        }
    }
    // x1 ⋆ (x2 e^{−σ|t|}) against the inverse transform of X1(ω,0)·X2(ω,σ).
    let sigma = 0.5;
    let x1 = signal(&spec1);
    let x2d = |t: f64| evaluate_signal(&spec2, t).unwrap() * (-sigma * t.abs()).exp();
    let mut conv2 = 0.0f64;
    for t in [-1.5, -0.2, 0.0, 0.6, 2.0] {
        let direct = time_convolution(&x1, &x2d, t, &cfg)?;
        let spectral = igft_reconstruct(
            |_, w| Ok(eval_spectrum(&e1, freq(0.0, w))? * eval_spectrum(&e2, freq(sigma, w))?),
            0.0,
            t,
            &cfg,
        )?;
        conv2 = conv2.max((direct - spectral).norm());
    }
    Ok(all(vec![
        ("conv1", within(conv1, 1e-4)),
        ("conv2", within(conv2, 1e-4)),
    ]))
}

#[test]
fn acceptance_criteria() {
    let results = [
        run(1, "transform table vs quadrature", table_conformance),
        run(2, "normalization integral", normalization),
        run(3, "Cauchy/Laplace duality", duality),
        run(4, "Hilbert kernel p-limit", hilbert_kernel),
        run(5, "periodic signals", periodic),
        run(6, "IVP reproduction", ivp_reproduction),
        run(7, "derivative property", derivative_property),
        run(8, "discrete table and inversion", discrete_conformance),
        run(9, "difference equations", difference_equations),
        run(10, "gamma suite", gamma_suite),
        run(11, "scale transform", scale_transform),
        run(12, "damped moments", moments),
        run(13, "convolution properties", convolution),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
