#![allow(clippy::excessive_precision)]

mod common;

use common::{assert_rel, consts, preset};
use gupnoise_core::model::{
    derive_params, effective_temperature, effective_temperature_steady_state, gup_convert, Eigenvalues, GupParams,
};
use gupnoise_core::{presets, Error, Experiment, Df64, Real};

// Reference values below come from an independent 50-digit evaluation of the same
// definitions (exact h and k_B, ħ = h/2π).

#[test]
fn constants_are_consistent() {
    let c = consts();
    for v in [c.hbar, c.h, c.k_b, c.c, c.planck_mass] {
        assert!(v > 0.0);
    }
    assert_rel(c.h, 2.0 * std::f64::consts::PI * c.hbar, 1e-12);
    assert_rel(c.planck_momentum(), 6.5248, 1e-4);
}

#[test]
fn aligo_finesse_matches_quoted_value() {
    let (exp, d) = preset("aligo");
    assert_rel(d.finesse, exp.finesse_quoted, 1e-2);
    assert_rel(d.finesse, 49.258670693223150558, 1e-14);
}

#[test]
fn finesse_of_tabletop_presets() {
    assert_rel(preset("purdy").1.finesse, 33036.086276418907667, 1e-14);
    assert_rel(preset("teufel").1.finesse, 354603081.19519075251, 1e-14);
}

#[test]
fn aligo_eigenvalues() {
    let (_, d) = preset("aligo");
    assert_rel(d.rho0, 5e-7, 1e-15);
    assert_rel(d.omega0, 4.15, 1e-13);
    assert_eq!(d.lambda_plus.re, -d.rho0);
    assert_eq!(d.lambda_plus.im, d.omega0);
    assert_eq!(d.lambda_minus, d.lambda_plus.conj());
}

#[test]
fn eigenvalue_identities_hold_for_presets() {
    for name in presets::PRESET_NAMES {
        let (exp, d) = preset(name);
        assert_rel(d.omega0 * d.omega0 + d.rho0 * d.rho0, exp.omega_m * exp.omega_m, 1e-12);
        let sum = d.lambda_plus + d.lambda_minus;
        let prod = d.lambda_plus * d.lambda_minus;
        assert_rel(sum.re, -exp.damping, 1e-15);
        assert_eq!(sum.im, 0.0);
        assert_rel(prod.re, exp.omega_m * exp.omega_m, 1e-12);
        assert!(prod.im.abs() <= 1e-12 * prod.re);
    }
}

#[test]
fn undamped_oscillator_has_imaginary_eigenvalues() {
    let eig = Eigenvalues::new(4.15_f64, 0.0).unwrap();
    assert_eq!(eig.rho0, 0.0);
    assert_eq!(eig.omega0, 4.15);
    assert_eq!((eig.lambda_plus.re, eig.lambda_plus.im), (0.0, 4.15));
    assert_eq!((eig.lambda_minus.re, eig.lambda_minus.im), (0.0, -4.15));
}

#[test]
fn overdamped_input_is_rejected() {
    let mut exp: Experiment = presets::aligo();
    exp.damping = 2.0 * exp.omega_m;
    assert!(matches!(derive_params(&exp, &consts()), Err(Error::Overdamped { .. })));
    assert!(matches!(Eigenvalues::new(1.0_f64, 2.5), Err(Error::Overdamped { .. })));
}

#[test]
fn invalid_fields_are_domain_errors() {
    let base: Experiment = presets::teufel();
    type Mutation = fn(&mut Experiment);
    let cases: [(&str, Mutation); 5] = [
        ("mass", |e| e.mass = 0.0),
        ("kappa", |e| e.kappa = -1.0),
        ("temperature", |e| e.temperature = -1.0),
        ("cavity_length", |e| e.cavity_length = f64::NAN),
        ("power", |e| e.power = f64::INFINITY),
    ];
    for (field, mutate) in cases {
        let mut exp = base.clone();
        mutate(&mut exp);
        match derive_params(&exp, &consts()) {
            Err(Error::Domain { field: f, .. }) => assert_eq!(f, field),
            other => panic!("{field}: expected a domain error, got {other:?}"),
        }
    }
}

#[test]
fn quality_factor_consistency() {
    let purdy: Experiment = presets::purdy();
    assert!(purdy.quality_factor_consistent());
    assert_rel(purdy.quality_factor * purdy.damping / purdy.omega_m, 1.0, 1e-2);
    // the quoted aLIGO Q is 320 times Ω/ρ
    let aligo: Experiment = presets::aligo();
    assert!(!aligo.quality_factor_consistent());
}

#[test]
fn radiative_heating_per_preset() {
    let c = consts();
    let expected = [
        ("aligo", 1.4720475867631869190e-24),
        ("purdy", 2.7503289085419631466e-24),
        ("teufel", 3.0241034341251486121e-21),
    ];
    for (name, radiative) in expected {
        let (exp, d) = preset(name);
        let kbt = c.k_b * exp.temperature;
        assert_rel(effective_temperature(&exp, &d, &c) - kbt, radiative, 1e-9);
        assert_rel(d.kbt_eff, kbt + radiative, 1e-14);
    }
    // aLIGO: heating is negligible against k_B·300 K; Teufel: it dominates k_B·40 mK
    let (aligo, d) = preset("aligo");
    assert!(d.kbt_eff / (c.k_b * aligo.temperature) - 1.0 < 1e-3);
    let (teufel, d) = preset("teufel");
    assert!(d.kbt_eff > 5.0 * c.k_b * teufel.temperature);
}

#[test]
fn zero_power_leaves_bath_temperature() {
    let c = consts();
    let mut exp: Experiment = presets::purdy();
    exp.power = 0.0;
    let d = derive_params(&exp, &c).unwrap();
    assert_eq!(effective_temperature(&exp, &d, &c), c.k_b * exp.temperature);
    assert_eq!(d.kbt_eff, d.kbt);
}

#[test]
fn both_effective_temperature_forms_agree() {
    let c = consts();
    for name in presets::PRESET_NAMES {
        let (exp, d) = preset(name);
        let a = effective_temperature(&exp, &d, &c);
        let b = effective_temperature_steady_state(&exp, &d, &c);
        assert_rel(b, a, 1e-10);
    }
}

#[test]
fn steady_moments_are_positive_and_near_equipartition() {
    for name in presets::PRESET_NAMES {
        let (exp, d) = preset(name);
        assert!(d.x0_sq > 0.0 && d.p0_sq > 0.0 && d.photon_amp_sq > 0.0 && d.kbt_eff > 0.0);
        let potential = exp.mass * exp.omega_m * exp.omega_m * d.x0_sq / 2.0;
        let kinetic = d.p0_sq / (2.0 * exp.mass);
        assert!(
            ((kinetic - potential) / potential).abs() <= 10.0 * exp.damping / exp.kappa,
            "{name}: kinetic {kinetic:e} potential {potential:e}"
        );
    }
}

#[test]
fn gup_conversion_examples() {
    let c = consts();
    let zero = gup_convert(0.0, 0.0, &c).unwrap();
    assert_eq!(zero, GupParams::zero());
    let g = gup_convert(0.0, 1e20, &c).unwrap();
    assert_rel(g.gamma, 2.35e18, 2e-3);
    let a = gup_convert(1.234e10, 0.0, &c).unwrap();
    let back = GupParams::from_si(a.alpha, a.gamma, &c).unwrap();
    assert_rel(back.alpha0, 1.234e10, 1e-12);
    assert!(matches!(gup_convert(-1.0, 0.0, &c), Err(Error::Domain { field: "alpha0", .. })));
    assert!(matches!(gup_convert(0.0, -1.0, &c), Err(Error::Domain { field: "gamma0", .. })));
}

#[test]
fn double_double_agrees_with_f64() {
    let c = gupnoise_core::ConstantsDd::codata2018();
    let exp: gupnoise_core::ExperimentDd = presets::teufel();
    let d = derive_params(&exp, &c).unwrap();
    let (_, d64) = preset("teufel");
    assert_rel(d.kbt_eff.to_f64_lossy(), d64.kbt_eff, 1e-14);
    assert_rel(d.x0_sq.to_f64_lossy(), d64.x0_sq, 1e-13);
    assert_rel(d.finesse.to_f64_lossy(), 354603081.19519075251, 1e-15);
    let _: Df64 = d.omega0;
}
