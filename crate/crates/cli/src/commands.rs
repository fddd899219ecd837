//! Subcommand implementations.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::Path;

use gft_core::special::{complementary_gamma, gamma, generalized_gamma, incomplete_gamma, GammaKind};
use gft_core::{
    cauchy_damped_moment, check_pdf, damped_cwt, damped_fct, eval_spectrum, fst_forward, ft_limit_numeric,
    ft_limit_symbolic, gdtft_closed_form, gdtft_numeric, gft_forward, ifst_of, igdtft_numeric, igft_reconstruct,
    lookup_gft, md_gft_2d, mgf_eval, parse_scale_spec, parse_sequence_spec, parse_signal_spec, periodic_gft,
    solve_difference, solve_ode_ft, solve_ode_gft, Complex64, ComplexFrequency, DifferenceProblem, DiscreteFrequency,
    OdeProblem, PeriodSource, PeriodicSignal, QuadratureConfig, SequenceSpec, SignalSpec, TimeDomain, WaveletSpec,
    WeightSpec,
};
use serde_json::json;

use crate::output::{pair, Table};
use crate::{Cli, CliError, Command, GammaChoice, Pdf, Route};

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn signal(path: &Path) -> Result<SignalSpec> {
    Ok(parse_signal_spec(&read(path)?)?)
}

fn sequence(path: &Path) -> Result<SequenceSpec> {
    Ok(parse_sequence_spec(&read(path)?)?)
}

fn json_out<W: Write, T: serde::Serialize + ?Sized>(out: &mut W, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

/// `(σ, ω)` pairs, σ outermost.
fn grid<'a>(sigma: &'a [f64], omega: &'a [f64]) -> impl Iterator<Item = (f64, f64)> + 'a {
    sigma.iter().flat_map(move |&s| omega.iter().map(move |&w| (s, w)))
}

pub fn run<W: Write>(cli: &Cli, mut out: W) -> Result<()> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be a positive number, got {}",
            cli.tol
        )));
    }
    let cfg = QuadratureConfig::with_tol(cli.tol, cli.tol);
    let fmt = cli.format;
    match &cli.command {
        Command::Catalog { spec, discrete, p } => {
            if *discrete {
                json_out(&mut out, &gdtft_closed_form(&sequence(spec)?)?)
            } else {
                json_out(&mut out, &lookup_gft(&signal(spec)?, *p)?)
            }
        }
        Command::Gft {
            spec,
            grid: g,
            p,
            q,
            numeric,
        } => {
            let x = signal(spec)?;
            let q_val = q.unwrap_or(1.0);
            let mut table = Table::new(out, fmt, &["sigma", "omega"])?;
            if *numeric || q_val != 1.0 {
                let w = WeightSpec::new(p.unwrap_or(0.0), q_val)?;
                let xr = x.regular()?;
                for (s, o) in grid(&g.sigma.0, &g.omega.0) {
                    table.row(&[s, o], gft_forward(&xr, ComplexFrequency::new(s, o)?, w, &cfg)?)?;
                }
            } else {
                let expr = lookup_gft(&x, *p)?;
                for (s, o) in grid(&g.sigma.0, &g.omega.0) {
                    table.row(&[s, o], eval_spectrum(&expr, ComplexFrequency::new(s, o)?)?)?;
                }
            }
            Ok(table.finish()?)
        }
        Command::Igft { spec, sigma, t } => {
            let expr = lookup_gft(&signal(spec)?, None)?;
            let spectrum = |s: f64, w: f64| eval_spectrum(&expr, ComplexFrequency::new(s, w)?);
            let mut table = Table::new(out, fmt, &["sigma", "t"])?;
            for &tt in &t.0 {
                table.row(&[*sigma, tt], igft_reconstruct(spectrum, *sigma, tt, &cfg)?)?;
            }
            Ok(table.finish()?)
        }
        Command::FtLimit {
            spec,
            omega,
            sigma,
            ladder,
            symbolic,
        } => {
            let x = signal(spec)?;
            if *symbolic {
                let expr = lookup_gft(&x, None)?;
                let limits = omega
                    .0
                    .iter()
                    .map(|&w| Ok(json!({ "omega": w, "limit": ft_limit_symbolic(&expr, w)? })))
                    .collect::<Result<Vec<_>>>()?;
                return json_out(&mut out, &limits);
            }
            let xr = x.regular()?;
            let mut table = Table::new(out, fmt, &["sigma", "omega"])?;
            for &w in &omega.0 {
                table.row(&[0.0, w], ft_limit_numeric(&xr, w, *sigma, *ladder, &cfg)?)?;
            }
            Ok(table.finish()?)
        }
        Command::Periodic { spec, period, grid: g } => {
            let px = PeriodicSignal::new(*period, PeriodSource::Spec(signal(spec)?))?;
            let mut table = Table::new(out, fmt, &["sigma", "omega"])?;
            for (s, o) in grid(&g.sigma.0, &g.omega.0) {
                table.row(&[s, o], periodic_gft(&px, ComplexFrequency::new(s, o)?, &cfg)?)?;
            }
            Ok(table.finish()?)
        }
        Command::Gdtft {
            spec,
            grid: g,
            numeric,
            n_max,
        } => {
            let x = sequence(spec)?;
            let mut table = Table::new(out, fmt, &["sigma", "Omega"])?;
            if *numeric {
                for (s, o) in grid(&g.sigma.0, &g.omega.0) {
                    table.row(&[s, o], gdtft_numeric(&x, DiscreteFrequency::new(s, o)?, *n_max)?.value)?;
                }
            } else {
                let expr = gdtft_closed_form(&x)?;
                for (s, o) in grid(&g.sigma.0, &g.omega.0) {
                    table.row(&[s, o], expr.eval(DiscreteFrequency::new(s, o)?)?)?;
                }
            }
            Ok(table.finish()?)
        }
        Command::Igdtft { spec, sigma, n, panels } => {
            let expr = gdtft_closed_form(&sequence(spec)?)?;
            let spectrum = |o: f64, s: f64| expr.eval(DiscreteFrequency::new(s, o)?);
            let mut table = Table::new(out, fmt, &["sigma", "n"])?;
            for &k in &n.0 {
                table.row(
                    &[*sigma, k as f64],
                    igdtft_numeric(spectrum, *sigma, k, *panels, cfg.abs_tol)?,
                )?;
            }
            Ok(table.finish()?)
        }
        Command::Ivp {
            order,
            coeffs,
            ic,
            forcing,
            route,
        } => {
            if let Some(m) = order {
                if coeffs.0.len() != m + 1 {
                    return Err(CliError::Usage(format!(
                        "order {m} needs {} coefficients, got {}",
                        m + 1,
                        coeffs.0.len()
                    )));
                }
            }
            let forcing = forcing.as_deref().map(signal).transpose()?.unwrap_or_default();
            let p = OdeProblem::new(coeffs.0.clone(), forcing, ic.0.clone())?;
            let sol = match route {
                Route::Gft => solve_ode_gft(&p)?,
                Route::Ft => solve_ode_ft(&p)?,
            };
            json_out(&mut out, &sol)
        }
        Command::Diffeq {
            coeffs,
            ic,
            forcing,
            samples,
        } => {
            let forcing = forcing.as_deref().map(sequence).transpose()?.unwrap_or_default();
            let ic = ic.as_ref().map(|c| c.0.clone()).unwrap_or_default();
            let sol = solve_difference(&DifferenceProblem::new(coeffs.0.clone(), forcing, ic)?)?;
            match samples {
                Some(count) => json_out(&mut out, &json!({ "solution": sol, "samples": sol.samples(*count) })),
                None => json_out(&mut out, &json!({ "solution": sol })),
            }
        }
        Command::Fst {
            spec,
            sigma,
            omega,
            tau,
        } => {
            let y = parse_scale_spec(&read(spec)?)?;
            if let Some(tau) = tau {
                let mut table = Table::new(out, fmt, &["sigma", "tau"])?;
                for (s, t) in grid(&sigma.0, &tau.0) {
                    table.row(&[s, t], ifst_of(&y, s, t, &cfg)?)?;
                }
                return Ok(table.finish()?);
            }
            let omega = omega.as_ref().map(|o| o.0.as_slice()).unwrap_or_default();
            let mut table = Table::new(out, fmt, &["sigma", "omega"])?;
            for (s, o) in grid(&sigma.0, omega) {
                table.row(&[s, o], fst_forward(&y, ComplexFrequency::new(s, o)?)?.total())?;
            }
            Ok(table.finish()?)
        }
        Command::Gamma { s, kind, x } => {
            let split = || x.ok_or_else(|| CliError::Usage("--x is required for the incomplete functions".into()));
            for &v in &s.0 {
                let value = match kind {
                    GammaChoice::Gamma => gamma(v)?,
                    GammaChoice::Generalized => generalized_gamma(v)?,
                    GammaChoice::Complementary => complementary_gamma(v)?,
                    GammaChoice::Lower => incomplete_gamma(GammaKind::Lower, v, split()?)?,
                    GammaChoice::Upper => incomplete_gamma(GammaKind::Upper, v, split()?)?,
                };
                writeln!(out, "{}", pair(value))?;
            }
            out.flush()?;
            Ok(())
        }
        Command::Moments { m, pdf, sigma, omega } => {
            if let Some(orders) = m {
                let mut table = Table::new(out, fmt, &["m", "sigma"])?;
                for &k in &orders.0 {
                    let k =
                        u32::try_from(k).map_err(|_| CliError::Usage(format!("moment order must be >= 0, got {k}")))?;
                    for &s in &sigma.0 {
                        let r = cauchy_damped_moment(k, s, &cfg)?;
                        table.row(&[k as f64, s], Complex64::new(r.value, 0.0))?;
                    }
                }
                return Ok(table.finish()?);
            }
            let density = density(pdf.expect("clap enforces --m or --pdf"));
            check_pdf(&density, &cfg)?;
            let omega = omega.as_ref().map(|o| o.0.clone()).unwrap_or_else(|| vec![0.0]);
            let mut table = Table::new(out, fmt, &["sigma", "omega"])?;
            for (s, o) in grid(&sigma.0, &omega) {
                table.row(&[s, o], mgf_eval(&density, ComplexFrequency::new(s, o)?, &cfg)?)?;
            }
            Ok(table.finish()?)
        }
        Command::Cwt { spec, sigma, a, b } => {
            let x = signal(spec)?;
            let xr = x.regular()?;
            let psi = WaveletSpec::mexican_hat();
            let mut table = Table::new(out, fmt, &["a", "b"])?;
            for (aa, bb) in grid(&a.0, &b.0) {
                table.row(&[aa, bb], damped_cwt(&xr, *sigma, aa, bb, &psi, &cfg)?)?;
            }
            Ok(table.finish()?)
        }
        Command::Fct { spec, grid: g } => {
            let x = signal(spec)?;
            let xr = x.regular()?;
            let mut table = Table::new(out, fmt, &["sigma", "omega"])?;
            for (s, o) in grid(&g.sigma.0, &g.omega.0) {
                table.row(&[s, o], damped_fct(&xr, s, o, &cfg)?)?;
            }
            Ok(table.finish()?)
        }
        Command::Md2 {
            spec,
            spec2,
            sigma,
            omega,
            omega2,
        } => {
            let (x1, x2) = (signal(spec)?, signal(spec2)?);
            let (r1, r2) = (x1.regular()?, x2.regular()?);
            let g = |t1: f64, t2: f64| r1.value(t1) * r2.value(t2);
            let mut table = Table::new(out, fmt, &["sigma", "omega1", "omega2"])?;
            for &s in &sigma.0 {
                for (o1, o2) in grid(&omega.0, &omega2.0) {
                    table.row(&[s, o1, o2], md_gft_2d(g, s, o1, o2, &cfg)?)?;
                }
            }
            Ok(table.finish()?)
        }
    }
}

fn density(pdf: Pdf) -> impl Fn(f64) -> f64 {
    move |y: f64| match pdf {
        Pdf::Laplace => 0.5 * (-y.abs()).exp(),
        Pdf::Gauss => (-0.5 * y * y).exp() / (2.0 * PI).sqrt(),
        Pdf::Cauchy => 1.0 / (PI * (1.0 + y * y)),
    }
}
