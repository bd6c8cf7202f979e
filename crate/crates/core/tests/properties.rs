mod common;

use common::{consts, rel_err};
use gupnoise_core::bounds::{solve_bound, solve_from_coefficients, Constraint};
use gupnoise_core::model::{
    derive_params, effective_temperature, effective_temperature_steady_state, gup_convert, GupParams,
};
use gupnoise_core::spectra::{
    coeff_ledger, delta_s_coefficients, delta_s_full, delta_s_resonance, s0, FrequencyGrid, GridScale, LedgerMode,
};
use gupnoise_core::{presets, Experiment};
use proptest::prelude::*;

const CASES: u32 = 1000;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn any_preset() -> impl Strategy<Value = Experiment> {
    prop::sample::select(presets::PRESET_NAMES.to_vec()).prop_map(|n| presets::by_name(n).unwrap())
}

/// A preset with every field rescaled by up to a decade, kept underdamped and κ > ρ.
fn perturbed_preset() -> impl Strategy<Value = Experiment> {
    (any_preset(), prop::array::uniform8(log_uniform(0.1, 10.0)), log_uniform(1e-4, 0.5)).prop_map(
        |(mut exp, f, damping_ratio)| {
            exp.temperature *= f[0];
            exp.omega_m *= f[1];
            exp.damping = damping_ratio.min(exp.damping * f[2] / exp.omega_m) * exp.omega_m;
            exp.drive_frequency *= f[3];
            exp.cavity_length *= f[4];
            exp.kappa = (exp.kappa * f[5]).max(10.0 * exp.damping);
            exp.mass *= f[6];
            exp.power *= f[7];
            exp
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn eigenfrequencies_recombine(exp in perturbed_preset()) {
        let d = derive_params(&exp, &consts()).unwrap();
        let lhs = d.omega0 * d.omega0 + d.rho0 * d.rho0;
        prop_assert!(rel_err(lhs, exp.omega_m * exp.omega_m) <= 1e-12);
        prop_assert_eq!(d.rho0, exp.damping / 2.0);
    }

    #[test]
    fn effective_temperature_forms_agree(exp in perturbed_preset()) {
        let c = consts();
        let d = derive_params(&exp, &c).unwrap();
        let direct = effective_temperature(&exp, &d, &c);
        let steady = effective_temperature_steady_state(&exp, &d, &c);
        prop_assert!(rel_err(steady, direct) <= 1e-10);
    }

    #[test]
    fn equipartition_when_kappa_dominates(exp in perturbed_preset()) {
        let d = derive_params(&exp, &consts()).unwrap();
        let potential = exp.mass * exp.omega_m * exp.omega_m * d.x0_sq / 2.0;
        let kinetic = d.p0_sq / (2.0 * exp.mass);
        prop_assert!(((kinetic - potential) / potential).abs() <= 10.0 * exp.damping / exp.kappa);
    }

    #[test]
    fn gup_conversion_round_trips(alpha0 in log_uniform(1e-3, 1e40), gamma0 in log_uniform(1e-3, 1e80)) {
        let c = consts();
        let g = gup_convert(alpha0, gamma0, &c).unwrap();
        let back = GupParams::from_si(g.alpha, g.gamma, &c).unwrap();
        prop_assert!(rel_err(back.alpha0, alpha0) <= 1e-12);
        prop_assert!(rel_err(back.gamma0, gamma0) <= 1e-12);
    }

    #[test]
    fn s0_is_even(exp in perturbed_preset(), ratio in log_uniform(1e-3, 1e3)) {
        let d = derive_params(&exp, &consts()).unwrap();
        let w = ratio * exp.omega_m;
        prop_assert_eq!(s0(w, &exp, &d), s0(-w, &exp, &d));
        prop_assert!(s0(w, &exp, &d) > 0.0);
    }

    #[test]
    fn delta_s_is_bilinear(
        exp in any_preset(),
        ratio in log_uniform(0.1, 10.0),
        alpha0 in log_uniform(1e5, 1e20),
        gamma0 in log_uniform(1e10, 1e40),
        mode in prop::sample::select(vec![LedgerMode::Exact, LedgerMode::ApproxKappaGgRho, LedgerMode::WhiteNoise]),
    ) {
        let c = consts();
        let d = derive_params(&exp, &c).unwrap();
        let ledger = coeff_ledger(&exp, &d, &c, mode).unwrap();
        let w = ratio * exp.omega_m;
        let alpha_only = gup_convert(alpha0, 0.0, &c).unwrap();
        let gamma_only = gup_convert(0.0, gamma0, &c).unwrap();
        let both = gup_convert(2.0 * alpha0, 3.0 * gamma0, &c).unwrap();
        // recover the coefficients from two evaluations, then predict a third
        let c_alpha = delta_s_full(w, &alpha_only, &ledger, &exp, &d) / (alpha_only.alpha * alpha_only.alpha);
        let c_gamma = delta_s_full(w, &gamma_only, &ledger, &exp, &d) / gamma_only.gamma;
        let predicted = c_alpha * both.alpha * both.alpha + c_gamma * both.gamma;
        let actual = delta_s_full(w, &both, &ledger, &exp, &d);
        let scale = (c_alpha * both.alpha * both.alpha).abs() + (c_gamma * both.gamma).abs();
        prop_assert!((actual - predicted).abs() <= 1e-10 * scale, "{actual:e} vs {predicted:e}");
    }

    #[test]
    fn resonance_value_depends_only_on_damping(
        exp in perturbed_preset(),
        alpha0 in log_uniform(1e5, 1e20),
        gamma0 in log_uniform(1e10, 1e40),
        f in prop::array::uniform6(log_uniform(1e-3, 1e3)),
    ) {
        let c = consts();
        let gup = gup_convert(alpha0, gamma0, &c).unwrap();
        let mut other = exp.clone();
        other.mass *= f[0];
        other.temperature *= f[1];
        other.kappa *= f[2];
        other.power *= f[3];
        other.cavity_length *= f[4];
        other.drive_frequency *= f[5];
        prop_assert_eq!(delta_s_resonance(&gup, &exp, &c), delta_s_resonance(&gup, &other, &c));
    }

    #[test]
    fn bounds_saturate(
        exp in any_preset(),
        ratio in 1.0..4.0_f64,
        joint_ratio in 1.0..20.0_f64,
        gamma_only in any::<bool>(),
    ) {
        let c = consts();
        let d = derive_params(&exp, &c).unwrap();
        let ledger = coeff_ledger(&exp, &d, &c, LedgerMode::Exact).unwrap();
        let w = ratio * exp.omega_m;
        let constraint = if gamma_only { Constraint::GammaOnly } else { Constraint::Joint { ratio: joint_ratio } };
        // some frequencies above resonance have no bound; those are skipped
        if let Ok(b) = solve_bound(&exp, &c, w, constraint, LedgerMode::Exact) {
            let gup = GupParams::from_si(b.alpha_max, b.gamma_max, &c).unwrap();
            let value = delta_s_full(w, &gup, &ledger, &exp, &d);
            prop_assert!(rel_err(value, b.s0_at) <= 1e-6, "{value:e} vs {:e}", b.s0_at);
        }
    }

    #[test]
    fn tightening_s0_never_loosens_a_bound(
        exp in any_preset(),
        ratio in 1.0..4.0_f64,
        shrink in 1e-6..1.0_f64,
    ) {
        let c = consts();
        let d = derive_params(&exp, &c).unwrap();
        let ledger = coeff_ledger(&exp, &d, &c, LedgerMode::Exact).unwrap();
        let w = ratio * exp.omega_m;
        let co = delta_s_coefficients(w, &ledger, &exp, &d);
        let s = s0(w, &exp, &d);
        for constraint in [Constraint::joint_default(), Constraint::GammaOnly] {
            let loose = solve_from_coefficients("p", w, co, s, constraint, LedgerMode::Exact, &c);
            let tight = solve_from_coefficients("p", w, co, shrink * s, constraint, LedgerMode::Exact, &c);
            if let (Ok(loose), Ok(tight)) = (loose, tight) {
                prop_assert!(tight.alpha0_max <= loose.alpha0_max);
                prop_assert!(tight.gamma0_max <= loose.gamma0_max);
            }
        }
    }

    #[test]
    fn grids_are_strictly_increasing(
        min in log_uniform(1e-3, 1e6),
        span in log_uniform(1.0001, 1e4),
        points in 1usize..2000,
        log in any::<bool>(),
    ) {
        let scale = if log { GridScale::Log } else { GridScale::Linear };
        let grid = FrequencyGrid { min, max: min * span, points, scale }.points::<f64>().unwrap();
        prop_assert_eq!(grid.len(), points);
        prop_assert_eq!(grid[0], min);
        prop_assert!(grid.windows(2).all(|w| w[1] > w[0]));
    }
}
