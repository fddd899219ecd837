//! Flows that cross module boundaries: JSON specs in, transforms, solvers
//! and inversions out.

use gft_core::*;

fn freq(sigma: f64, omega: f64) -> ComplexFrequency {
    ComplexFrequency::new(sigma, omega).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::with_tol(1e-10, 1e-12)
}

#[test]
fn signal_json_through_catalog_quadrature_and_inverse() {
    let spec = parse_signal_spec(
        r#"{"terms":[
            {"coef":[2,0],"atom":{"kind":"abs_exp","a":[1.5,0]}},
            {"coef":[0,1],"atom":{"kind":"gated","side":"causal","power":1,"rate":[-1,0],"osc":"sin","omega":2.0}}
        ]}"#,
    )
    .unwrap();
    let expr = lookup_gft(&spec, None).unwrap();
    let x = spec.regular().unwrap();
    for (s, w) in [(0.5, -1.0), (1.0, 0.0), (2.0, 3.5)] {
        let closed = eval_spectrum(&expr, freq(s, w)).unwrap();
        let numeric = gft_forward(&x, freq(s, w), WeightSpec::default(), &cfg()).unwrap();
        assert!((closed - numeric).norm() < 1e-8 * (1.0 + closed.norm()));
    }
    let spectrum = |s: f64, w: f64| eval_spectrum(&expr, freq(s, w));
    for t in [-2.0, -0.3, 0.8, 3.0] {
        let back = igft_reconstruct(spectrum, 0.5, t, &cfg()).unwrap();
        let want = evaluate_signal(&spec, t).unwrap();
        assert!((back - want).norm() < 1e-6, "t = {t}: {back} vs {want}");
    }
}

#[test]
fn forced_ode_from_json_solves_and_ft_route_refuses_growing_modes() {
    // x'' + 3x' + 2x = e^{−|t|}, x(0) = 0, x'(0) = 1
    let forcing = parse_signal_spec(r#"{"terms":[{"coef":[1,0],"atom":{"kind":"abs_exp","a":[1,0]}}]}"#).unwrap();
    let p = OdeProblem::from_real(&[1.0, 3.0, 2.0], forcing, &[0.0, 1.0]).unwrap();
    let gft = solve_ode_gft(&p).unwrap();
    let grid: Vec<f64> = (0..80).map(|i| -2.0 + 4.0 * (i as f64 + 0.5) / 80.0).collect();
    assert!(verify_solution(&gft, &p, &grid).unwrap() < 1e-5);

    let text = serde_json::to_string(&gft).unwrap();
    let again = parse_signal_spec(&text).unwrap();
    assert!(again.approx_eq(&gft, 1e-12).unwrap());

    // the modes e^{−t}, e^{−2t} grow on t < 0, so the Fourier route refuses
    assert!(matches!(solve_ode_ft(&p), Err(GftError::Unsupported(_))));
}

#[test]
fn difference_solution_spectrum_inverts_to_its_samples() {
    let forcing = parse_sequence_spec(r#"{"terms":[{"coef":[1,0],"atom":{"kind":"cos","omega0":0.7}}]}"#).unwrap();
    let coeffs = vec![Complex64::new(1.0, 0.0), Complex64::new(-0.9, 0.0), Complex64::new(0.2, 0.0)];
    let ics = vec![Complex64::new(1.0, 0.0), Complex64::new(-0.5, 0.0)];
    let p = DifferenceProblem::new(coeffs, forcing, ics).unwrap();
    let sol = solve_difference(&p).unwrap();

    let mut prev = [Complex64::new(1.0, 0.0), Complex64::new(-0.5, 0.0)];
    for n in 0..12u32 {
        let x = (0.7 * n as f64).cos() + 0.9 * prev[0] - 0.2 * prev[1];
        let got = sol.sample(n);
        assert!((got - x).norm() < 1e-12);
        prev = [Complex64::new(x.re, 0.0), prev[0]];
    }

    // r0 = 1 for the cosine forcing, so σ = 0.2 lies inside |z| > r0
    let spectrum = |o: f64, s: f64| sol.spectrum.eval(DiscreteFrequency::new(s, o)?);
    for n in [0i64, 3, 7] {
        let back = igdtft_numeric(spectrum, 0.2, n, 64, 1e-11).unwrap();
        assert!((back - sol.sample(n as u32)).norm() < 1e-8);
    }
}

#[test]
fn scale_spec_matches_sampled_function_and_round_trips() {
    let spec = parse_scale_spec(
        r#"{"terms":[{"coef":[1,0],"atom":{"kind":"exp","a":2.0}},{"coef":[0.5,0],"atom":{"kind":"step"}}]}"#,
    )
    .unwrap();
    let sampled = ScaleFunction::new(
        |t: f64| Complex64::new((-2.0 * t).exp() + 0.5, 0.0),
        QuadratureConfig::with_tol(1e-11, 1e-13),
    );
    // the step makes Y_U converge only for Re(−s*) < 0
    for (s, w) in [(0.5, 0.0), (1.5, -2.0)] {
        let a = fst_forward(&spec, freq(s, w)).unwrap().total();
        let b = fst_forward(&sampled, freq(s, w)).unwrap().total();
        assert!((a - b).norm() < 1e-8, "{a} vs {b}");
    }
    for tau in [0.5, 2.0] {
        let back = ifst_of(&spec, 1.0, tau, &cfg()).unwrap();
        assert!((back.re - ((-2.0 * tau).exp() + 0.5)).abs() < 1e-4);
    }
}
