#![allow(dead_code)]

use gupnoise_core::model::{derive_params, gup_convert};
use gupnoise_core::spectra::{coeff_ledger, LedgerMode};
use gupnoise_core::spectra::s0_terms;
use gupnoise_core::{presets, Constants, Derived, Experiment, Gup, Ledger};
use gupnoise_oracles::quadrature::{integrate_adaptive, integrate_to_infinity};

pub fn consts() -> Constants {
    Constants::codata2018()
}

pub fn rel_err(actual: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        return actual.abs();
    }
    ((actual - expected) / expected).abs()
}

#[track_caller]
pub fn assert_rel(actual: f64, expected: f64, tol: f64) {
    let err = rel_err(actual, expected);
    assert!(err <= tol, "actual {actual:e} vs expected {expected:e}: relative error {err:e} > {tol:e}");
}

pub fn preset(name: &str) -> Experiment {
    presets::by_name(name).expect("known preset")
}

pub fn derived(exp: &Experiment) -> Derived {
    derive_params(exp, &consts()).expect("valid parameters")
}

pub fn ledger(exp: &Experiment, mode: LedgerMode) -> Ledger {
    coeff_ledger(exp, &derived(exp), &consts(), mode).expect("ledger")
}

pub fn gup(alpha0: f64, gamma0: f64) -> Gup {
    gup_convert(alpha0, gamma0, &consts()).expect("non-negative")
}

/// Heavily damped oscillator (Q = 1) for Fourier checks up to 100 Omega.
pub fn quadrature_fixture() -> Experiment {
    let mut exp = preset("purdy");
    exp.name = "quadrature-fixture".into();
    exp.omega_m = 1.0e6;
    exp.damping = 1.0e6;
    exp.quality_factor = 1.0;
    exp.kappa = 5.0e5;
    exp
}

/// Moderately damped oscillator with a slow cavity, so every ledger term is alive.
pub fn adjudication_fixture() -> Experiment {
    let mut exp = preset("purdy");
    exp.name = "adjudication-fixture".into();
    exp.omega_m = 1.0e6;
    exp.damping = 1.0e5;
    exp.quality_factor = 10.0;
    exp.kappa = 5.0e5;
    exp
}

pub fn log_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| min * (max / min).powf(k as f64 / (points - 1) as f64))
        .collect()
}

/// Low-Q oscillator with a cavity faster than the mechanics, cheap to simulate.
pub fn simulation_fixture() -> Experiment {
    let mut exp = preset("purdy");
    exp.name = "simulation-fixture".into();
    exp.omega_m = 1.0e4;
    exp.damping = 2.0e3;
    exp.quality_factor = 5.0;
    exp.kappa = 2.0e4;
    exp
}

/// ∫S_thermal dω/2π over the whole line, with panels around the resonance.
pub fn thermal_variance_by_quadrature(exp: &Experiment, d: &Derived) -> f64 {
    let thermal = |w: f64| s0_terms(w, exp, d).thermal;
    let (omega_m, rho) = (exp.omega_m, exp.damping);
    let far = 10.0 * omega_m;
    let mut breakpoints: Vec<f64> =
        [0.0, omega_m - 20.0 * rho, omega_m - rho, omega_m, omega_m + rho, omega_m + 20.0 * rho, far]
            .into_iter()
            .filter(|&b| (0.0..=far).contains(&b))
            .collect();
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();
    let body = integrate_adaptive(&thermal, &breakpoints, 1e-9, 0.0);
    let tail = integrate_to_infinity(&thermal, far, omega_m, 1e-9, 0.0);
    (body.integral.value + tail.integral.value) / std::f64::consts::PI
}
