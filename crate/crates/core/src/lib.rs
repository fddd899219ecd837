//! Generalized Fourier transform toolkit.
//!
//! The transform of a signal `x(t)` is split into a complementary Laplace
//! part `𝔛(s*)` over negative time and a unilateral Laplace part `X(s)` over
//! positive time, with `s = σ + jω`. The crate provides a symbolic catalog
//! of transform pairs and properties, a quadrature engine, rational-function
//! inversion, initial-value-problem solvers in continuous and discrete time,
//! the discrete-time transform, the Fourier scale transform, incomplete and
//! generalized gamma functions and damped moments.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod error;
pub mod gdtft;
pub mod ivp;
pub mod moments;
pub mod numeric;
pub mod quad;
pub mod rational;
pub mod scale;
pub mod signal;
pub mod special;

pub use catalog::{
    apply_modulation_property, apply_time_property, eval_spectrum, ft_limit_symbolic, lookup_gft, DistributionalAtom,
    FtLimit, ModulationProperty, SpectrumExpr, SpectrumTerm, TimeProperty,
};
pub use error::{GftError, Result};
pub use gdtft::{
    apply_gdtft_property, gdtft_closed_form, gdtft_numeric, igdtft_numeric, igdtft_sigma_limit, parse_sequence_spec,
    DiscreteSignal, FiniteSequence, GdtftProperty, SequenceAtom, SequenceSpec, SequenceTerm, ZSpectrumExpr, ZTerm,
};
pub use ivp::{
    solve_difference, solve_ode_ft, solve_ode_gft, verify_solution, DifferenceProblem, DifferenceSolution,
    GeometricMode, OdeProblem,
};
pub use moments::{cauchy_damped_moment, check_pdf, mgf_eval, mgf_series_check, MgfSeriesReport, MomentReport};
pub use num_complex::Complex64;
pub use numeric::{
    clt_lt_split, damped_cwt, damped_fct, damped_icwt, damped_ifct, frequency_convolution, ft_limit_numeric,
    gft_forward, igft_reconstruct, igft_split, igft_value_at_zero, md_gft_2d, periodic_gft, rational_extrapolate,
    time_convolution, weighted_limit_p, CwtGrid, WaveletSpec, WeightSpec,
};
pub use quad::{Estimate, QuadratureConfig, TailBound};
pub use rational::{
    invert_clt_part, invert_lt_part, partial_fractions, partial_fractions_factored, roc_of, PartialFractionForm,
    PartialFractionTerm, Poly, RationalFunction,
};
pub use scale::{
    fst_apply_property, fst_forward, fst_s_derivative, gumbel_laplace, ifst_numeric, ifst_of, mellin_partial,
    parse_scale_spec, FstExpr, FstProperty, FstValue, PartialMellin, ScaleAtom, ScaleFunction, ScaleSpec, ScaleTerm,
};
pub use signal::{
    evaluate_signal, parse_signal_spec, ComplexFrequency, DiscreteFrequency, GatedAtom, Orientation, Oscillation,
    PeriodSource, PeriodicSignal, Roc, SampledSignal, Side, SignalAtom, SignalSpec, SignalTerm, TimeDomain,
};
