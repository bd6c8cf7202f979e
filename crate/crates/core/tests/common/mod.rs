#![allow(dead_code)]

use gupnoise_core::model::derive_params;
use gupnoise_core::{presets, Constants, Derived, Experiment};

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

pub fn consts() -> Constants {
    Constants::codata2018()
}

pub fn preset(name: &str) -> (Experiment, Derived) {
    let exp: Experiment = presets::by_name(name).expect("known preset");
    let derived = derive_params(&exp, &consts()).expect("presets are valid");
    (exp, derived)
}

/// A moderately damped oscillator far from every preset, handy for identity checks.
pub fn synthetic(kappa_over_omega: f64) -> Experiment {
    let mut exp: Experiment = presets::purdy();
    exp.name = "synthetic".into();
    exp.omega_m = 1.0e6;
    exp.damping = 2.0e3;
    exp.quality_factor = 500.0;
    exp.kappa = kappa_over_omega * exp.omega_m;
    exp
}
