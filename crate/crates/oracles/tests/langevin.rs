mod common;

use common::*;
use gupnoise_core::model::GupParams;
use gupnoise_core::Error;
use gupnoise_oracles::langevin::{max_step, simulate_langevin, simulate_trajectory, Scheme, SimConfig};

fn config(exp: &gupnoise_core::Experiment, n_traj: usize, seed: u64, scheme: Scheme) -> SimConfig {
    SimConfig::minimal(exp, n_traj, seed, scheme)
}

#[test]
fn undriven_oscillator_stays_at_rest() {
    let mut exp = simulation_fixture();
    exp.temperature = 0.0;
    exp.power = 0.0;
    for scheme in [Scheme::ExactOuHybrid, Scheme::EulerMaruyama] {
        let traj = simulate_trajectory(&exp, &gup(1e19, 1e38), &consts(), &config(&exp, 1, 3, scheme), 0).unwrap();
        assert!(!traj.position.is_empty());
        assert!(traj.position.iter().all(|&x| x == 0.0));
        assert_eq!(traj.x0_sq, 0.0);
        assert_eq!(traj.p0_sq, 0.0);
        assert!(traj.force_products.iter().all(|&f| f == 0.0));
    }
}

#[test]
fn radiation_force_autocovariance_matches_ou_form() {
    let exp = simulation_fixture();
    let result = simulate_langevin(&exp, &gup(0.0, 0.0), &consts(), &config(&exp, 32, 11, Scheme::ExactOuHybrid)).unwrap();
    assert_eq!(result.force_autocovariance.len(), 3);
    for lag in &result.force_autocovariance {
        let sigmas = lag.measured.sigmas_from(lag.expected);
        assert!(sigmas <= 3.0, "lag {:e} s: {:?} vs {:e} ({sigmas:.2} sigma)", lag.lag, lag.measured, lag.expected);
    }
}

#[test]
fn thermal_only_run_reaches_equipartition() {
    let mut exp = simulation_fixture();
    exp.power = 0.0;
    let d = derived(&exp);
    let mut cfg = config(&exp, 32, 5, Scheme::ExactOuHybrid);
    cfg.duration *= 4.0;
    let result = simulate_langevin(&exp, &gup(0.0, 0.0), &consts(), &cfg).unwrap();
    let m = exp.mass;
    let expected_x = d.kbt / (m * exp.omega_m * exp.omega_m);
    assert!(result.x0_sq.sigmas_from(expected_x) <= 3.0, "{:?} vs {expected_x:e}", result.x0_sq);
    assert!(result.p0_sq.sigmas_from(m * d.kbt) <= 3.0, "{:?} vs {:e}", result.p0_sq, m * d.kbt);
}

#[test]
fn simulated_spectrum_matches_mechanical_spectrum() {
    use gupnoise_core::spectra::s0_terms;
    let exp = simulation_fixture();
    let d = derived(&exp);
    let result = simulate_langevin(&exp, &gup(0.0, 0.0), &consts(), &config(&exp, 32, 21, Scheme::ExactOuHybrid)).unwrap();
    assert!(result.psd.mean_psd.iter().all(|&s| s >= 0.0));
    assert!(result.psd.stderr_psd.iter().all(|s| s.is_finite()));
    let (mut inside, mut total) = (0, 0);
    for (i, &w) in result.psd.freq_bins.iter().enumerate() {
        if w < exp.omega_m / 4.0 || w > 4.0 * exp.omega_m {
            continue;
        }
        let expected = s0_terms(w, &exp, &d).mechanical();
        total += 1;
        if (result.psd.mean_psd[i] - expected).abs() <= 3.0 * result.psd.stderr_psd[i] {
            inside += 1;
        }
    }
    assert!(total >= 10);
    assert!(inside as f64 >= 0.95 * total as f64, "{inside}/{total} bins within 3 sigma");
}

#[test]
fn euler_maruyama_bias_is_first_order() {
    // Explicit Euler on an OU process of rate κ/2 inflates its stationary variance
    // by 1/(1 − κdt/4); the exact update has no such bias.
    let mut exp = simulation_fixture();
    exp.damping = 1.0e4;
    exp.quality_factor = 1.0;
    let base = max_step(&exp);
    let measure = |scheme, dt: f64| {
        let mut cfg = config(&exp, 32, 17, scheme);
        cfg.dt = dt;
        cfg.duration = 1.0;
        simulate_langevin(&exp, &gup(0.0, 0.0), &consts(), &cfg).unwrap().force_autocovariance[0]
    };
    let mut biases = Vec::new();
    for dt in [base, base / 4.0] {
        let lag = measure(Scheme::EulerMaruyama, dt);
        let inflation = 1.0 / (1.0 - exp.kappa * dt / 4.0);
        assert!(lag.measured.sigmas_from(lag.expected * inflation) <= 3.5, "dt {dt:e}: {lag:?}");
        biases.push((lag.measured.mean / lag.expected - 1.0, lag.measured.stderr / lag.expected));
    }
    let (coarse, coarse_err) = biases[0];
    let (fine, fine_err) = biases[1];
    assert!(coarse > 4.0 * coarse_err, "coarse bias {coarse:e} not resolved");
    assert!(fine < coarse / 2.0 + 3.0 * fine_err);
    let exact = measure(Scheme::ExactOuHybrid, base);
    assert!(exact.measured.sigmas_from(exact.expected) <= 3.5, "{exact:?}");
}

#[test]
fn identical_seeds_give_identical_output_on_any_pool() {
    let exp = simulation_fixture();
    let cfg = config(&exp, 6, 99, Scheme::ExactOuHybrid);
    let g = gup(1e19, 1e38);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| simulate_langevin(&exp, &g, &consts(), &cfg).unwrap())
    };
    let single = run(1);
    let multi = run(3);
    assert_eq!(single, multi);
    let mut other = cfg.clone();
    other.seed = 100;
    let reseeded = simulate_langevin(&exp, &g, &consts(), &other).unwrap();
    assert_ne!(single.psd.mean_psd, reseeded.psd.mean_psd);
}

#[test]
fn gup_correction_leaves_unperturbed_motion_alone() {
    let exp = simulation_fixture();
    let cfg = config(&exp, 1, 8, Scheme::ExactOuHybrid);
    let free = simulate_trajectory(&exp, &gup(0.0, 0.0), &consts(), &cfg, 0).unwrap();
    let perturbed = simulate_trajectory(&exp, &gup(1e30, 1e60), &consts(), &cfg, 0).unwrap();
    assert_eq!(free.x0_sq, perturbed.x0_sq);
    assert_eq!(free.p0_sq, perturbed.p0_sq);
    assert_ne!(free.position, perturbed.position);
}

#[test]
fn invalid_configurations_are_rejected() {
    let exp = simulation_fixture();
    let g = gup(0.0, 0.0);
    let good = config(&exp, 2, 1, Scheme::ExactOuHybrid);
    assert!(good.validate(&exp).is_ok());

    let mut coarse = good.clone();
    coarse.dt = 2.0 * max_step(&exp);
    let mut short = good.clone();
    short.duration = 10.0 / (exp.damping / 2.0);
    let mut empty = good.clone();
    empty.n_traj = 0;
    let mut negative = good.clone();
    negative.burn_in = -1.0;
    for cfg in [coarse, short, empty, negative] {
        assert!(matches!(simulate_langevin(&exp, &g, &consts(), &cfg), Err(Error::Config(_))), "{cfg:?}");
    }
    assert!("runge_kutta".parse::<Scheme>().is_err());
    for scheme in [Scheme::EulerMaruyama, Scheme::ExactOuHybrid] {
        assert_eq!(scheme.as_str().parse::<Scheme>().unwrap(), scheme);
    }
}

#[test]
fn overflow_reports_the_step() {
    let exp = simulation_fixture();
    // α² overflows, so the quartic source is infinite from the first kick.
    let g = GupParams { alpha: 1e200, gamma: 0.0, alpha0: 0.0, gamma0: 0.0 };
    let cfg = config(&exp, 1, 2, Scheme::EulerMaruyama);
    match simulate_trajectory(&exp, &g, &consts(), &cfg, 0) {
        Err(Error::NonFinite { step }) => assert!(step < (cfg.burn_in_steps() + cfg.recorded_steps()) as u64),
        other => panic!("expected a non-finite error, got {other:?}"),
    }
}
