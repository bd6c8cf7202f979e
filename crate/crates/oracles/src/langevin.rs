//! Stochastic simulation of the oscillator driven by thermal and radiation forces,
//! together with the first-order GUP correction to its motion.
//!
//! The state is integrated in units of X = √(k_BT′/(mΩ²)) so that position,
//! momentum and force are all of order one.

use gupnoise_core::model::{derive_params, DerivedParams, ExperimentParams, GupParams, PhysicalConstants};
use gupnoise_core::{Error, Result};
use nalgebra::{Matrix2, Matrix3, Matrix6, SymmetricEigen, Vector2, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::psd::{PsdEstimate, Welch};

/// The step must resolve the fastest rate at least this many times over.
pub const STEPS_PER_FASTEST_TIME: f64 = 20.0;
/// Minimum run length in units of 1/ρ₀.
pub const MIN_DECAY_TIMES: f64 = 50.0;
/// Minimum Welch segment length in units of 1/ρ₀.
pub const MIN_SEGMENT_DECAY_TIMES: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// First-order explicit update of every component.
    EulerMaruyama,
    /// Exact Gaussian update of (x₀, p₀, f_rad); trapezoidal GUP correction.
    ExactOuHybrid,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::EulerMaruyama => "euler_maruyama",
            Scheme::ExactOuHybrid => "exact_ou_hybrid",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler_maruyama" => Ok(Scheme::EulerMaruyama),
            "exact_ou_hybrid" => Ok(Scheme::ExactOuHybrid),
            other => Err(Error::Config(format!("unknown scheme {other:?} (expected euler_maruyama or exact_ou_hybrid)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Step (s).
    pub dt: f64,
    /// Recorded time per trajectory after burn-in (s).
    pub duration: f64,
    pub n_traj: usize,
    pub seed: u64,
    pub scheme: Scheme,
    /// Discarded time at the start of each trajectory (s).
    pub burn_in: f64,
}

/// Largest step allowed for an experiment: min(1/κ, 1/Ω, 1/ρ)/20.
pub fn max_step(exp: &ExperimentParams<f64>) -> f64 {
    let mut fastest = exp.kappa.max(exp.omega_m);
    if exp.damping > 0.0 {
        fastest = fastest.max(exp.damping);
    }
    1.0 / (fastest * STEPS_PER_FASTEST_TIME)
}

impl SimConfig {
    /// The shortest run the invariants allow, with ten decay times of burn-in.
    pub fn minimal(exp: &ExperimentParams<f64>, n_traj: usize, seed: u64, scheme: Scheme) -> Self {
        let rho0 = exp.damping / 2.0;
        Self {
            dt: max_step(exp),
            duration: MIN_DECAY_TIMES / rho0,
            n_traj,
            seed,
            scheme,
            burn_in: 10.0 / rho0,
        }
    }

    pub fn validate(&self, exp: &ExperimentParams<f64>) -> Result<()> {
        let limit = max_step(exp);
        if !(self.dt > 0.0 && self.dt <= limit * (1.0 + 1e-12)) {
            return Err(Error::Config(format!("dt = {:e} s must be positive and at most {limit:e} s", self.dt)));
        }
        let rho0 = exp.damping / 2.0;
        let shortest = MIN_DECAY_TIMES / rho0;
        if !self.duration.is_finite() || self.duration < shortest * (1.0 - 1e-12) {
            return Err(Error::Config(format!(
                "duration = {:e} s must be at least 50/rho0 = {shortest:e} s",
                self.duration
            )));
        }
        if self.n_traj == 0 {
            return Err(Error::Config("n_traj must be at least 1".into()));
        }
        if !(self.burn_in >= 0.0 && self.burn_in.is_finite()) {
            return Err(Error::Config(format!("burn_in = {} s must be non-negative", self.burn_in)));
        }
        Ok(())
    }

    pub fn recorded_steps(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }

    pub fn burn_in_steps(&self) -> usize {
        (self.burn_in / self.dt).round() as usize
    }
}

/// Ensemble mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moment {
    pub mean: f64,
    pub stderr: f64,
}

impl Moment {
    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        if samples.len() < 2 {
            return Moment { mean, stderr: f64::INFINITY };
        }
        let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0);
        Moment { mean, stderr: (var / n).sqrt() }
    }

    /// |mean − expected| in units of the standard error.
    pub fn sigmas_from(&self, expected: f64) -> f64 {
        let gap = (self.mean - expected).abs();
        if gap == 0.0 {
            0.0
        } else {
            gap / self.stderr
        }
    }
}

/// Radiation-force autocovariance at one lag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagCovariance {
    /// Lag actually used, a whole number of steps (s).
    pub lag: f64,
    pub steps: usize,
    pub measured: Moment,
    /// ħ²G²𝒜²·e^{−κ·lag/2}
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// PSD of x₀ + δx.
    pub psd: PsdEstimate,
    /// Time-averaged x₀² (m²).
    pub x0_sq: Moment,
    /// Time-averaged p₀² (kg²m²/s²).
    pub p0_sq: Moment,
    /// Radiation-force autocovariance at lags 0, 2/κ and 4/κ.
    pub force_autocovariance: Vec<LagCovariance>,
}

/// Lags at which the radiation-force autocovariance is measured, in units of 1/κ.
pub const FORCE_LAGS_OVER_KAPPA: [f64; 3] = [0.0, 2.0, 4.0];

/// Output of a single trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// x₀ + δx after burn-in (m).
    pub position: Vec<f64>,
    pub x0_sq: f64,
    pub p0_sq: f64,
    /// Time-averaged f(t)f(t−lag) for each of the force lags (N²).
    pub force_products: Vec<f64>,
}

/// Everything a trajectory needs, fixed once per run.
struct Dynamics {
    scheme: Scheme,
    dt: f64,
    scale: f64,
    /// Momentum and force scales: p = mΩX·p̃, f = mΩ²X·f̃.
    p_scale: f64,
    f_scale: f64,
    drift: Matrix3<f64>,
    propagator: Matrix3<f64>,
    noise_factor: Matrix3<f64>,
    /// √(diffusion) per component, for the explicit scheme.
    noise_amplitude: Vector3<f64>,
    /// Source coefficients for the GUP correction in scaled units.
    cubic: f64,
    quartic: f64,
    damping: f64,
    mass: f64,
    gup_active: bool,
    lag_steps: Vec<usize>,
}

impl Dynamics {
    fn new(
        exp: &ExperimentParams<f64>,
        derived: &DerivedParams<f64>,
        gup: &GupParams<f64>,
        consts: &PhysicalConstants<f64>,
        cfg: &SimConfig,
    ) -> Self {
        let (omega, rho, kappa, m) = (exp.omega_m, exp.damping, exp.kappa, exp.mass);
        let thermal_scale = (derived.kbt_eff / (m * omega * omega)).sqrt();
        let scale = if thermal_scale > 0.0 { thermal_scale } else { (consts.hbar / (m * omega)).sqrt() };
        let p_scale = m * omega * scale;
        let f_scale = m * omega * omega * scale;

        let drift = Matrix3::new(0.0, omega, 0.0, -omega, -rho, omega, 0.0, 0.0, -kappa / 2.0);
        // Thermal force intensity 2k_BTρm; radiation force variance F enters as κF.
        let q_p = 2.0 * derived.kbt * rho * m / (p_scale * p_scale);
        let q_f = kappa * derived.radiation_force_variance / (f_scale * f_scale);
        let diffusion = Matrix3::from_diagonal(&Vector3::new(0.0, q_p, q_f));
        let (propagator, covariance) = van_loan(&drift, &diffusion, cfg.dt);

        let lag_steps = FORCE_LAGS_OVER_KAPPA.iter().map(|l| (l / kappa / cfg.dt).round() as usize).collect();
        Self {
            scheme: cfg.scheme,
            dt: cfg.dt,
            scale,
            p_scale,
            f_scale,
            drift,
            propagator,
            noise_factor: symmetric_sqrt(&covariance),
            noise_amplitude: Vector3::new(0.0, q_p.sqrt(), q_f.sqrt()),
            cubic: gup.alpha,
            quartic: gup.alpha * gup.alpha + 2.0 * gup.gamma,
            damping: rho,
            mass: m,
            gup_active: gup.alpha != 0.0 || gup.gamma != 0.0,
            lag_steps,
        }
    }

    /// Source of the correction system in scaled units, given the scaled momentum p̃.
    fn source(&self, p_scaled: f64) -> Vector2<f64> {
        let p = p_scaled * self.p_scale;
        let p2 = p * p;
        let p3 = p2 * p;
        let sx = (-3.0 * self.cubic * p2 + 2.0 * self.quartic * p3) / self.mass;
        let sp = 3.0 * self.cubic * self.damping * p2 - 2.0 * self.quartic * self.damping * p3;
        Vector2::new(sx / self.scale, sp / self.p_scale)
    }

    fn run(&self, index: usize, seed: u64, burn_in: usize, recorded: usize) -> Result<Trajectory> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let mut normal = || -> f64 { StandardNormal.sample(&mut rng) };

        let mut state = Vector3::zeros();
        let mut correction = Vector2::zeros();
        let mut source = Vector2::zeros();
        let phi2: Matrix2<f64> = self.propagator.fixed_view::<2, 2>(0, 0).into_owned();
        let m2: Matrix2<f64> = self.drift.fixed_view::<2, 2>(0, 0).into_owned();
        let sqrt_dt = self.dt.sqrt();

        let max_lag = self.lag_steps.iter().copied().max().unwrap_or(0);
        let mut history = vec![0.0; max_lag + 1];
        let mut position = Vec::with_capacity(recorded);
        let (mut x_sq, mut p_sq) = (0.0, 0.0);
        let mut products = vec![0.0; self.lag_steps.len()];
        let mut product_counts = vec![0usize; self.lag_steps.len()];

        let total = burn_in + recorded;
        for step in 0..total {
            let xi = Vector3::new(normal(), normal(), normal());
            let next = match self.scheme {
                Scheme::ExactOuHybrid => self.propagator * state + self.noise_factor * xi,
                Scheme::EulerMaruyama => {
                    state + self.drift * state * self.dt + self.noise_amplitude.component_mul(&xi) * sqrt_dt
                }
            };
            if self.gup_active {
                let next_source = self.source(next[1]);
                correction = match self.scheme {
                    Scheme::ExactOuHybrid => {
                        phi2 * correction + (phi2 * source + next_source) * (self.dt / 2.0)
                    }
                    Scheme::EulerMaruyama => correction + (m2 * correction + source) * self.dt,
                };
                source = next_source;
            }
            state = next;
            if !(state.iter().all(|v| v.is_finite()) && correction.iter().all(|v| v.is_finite())) {
                return Err(Error::NonFinite { step: step as u64 });
            }
            if step >= burn_in {
                let n = step - burn_in;
                let x0 = state[0] * self.scale;
                let p0 = state[1] * self.p_scale;
                let f = state[2] * self.f_scale;
                position.push(x0 + correction[0] * self.scale);
                x_sq += x0 * x0;
                p_sq += p0 * p0;
                history[n % (max_lag + 1)] = f;
                for (j, &lag) in self.lag_steps.iter().enumerate() {
                    if n >= lag {
                        products[j] += f * history[(n - lag) % (max_lag + 1)];
                        product_counts[j] += 1;
                    }
                }
            }
        }
        let count = recorded.max(1) as f64;
        let force_products = products.iter().zip(&product_counts).map(|(p, &c)| p / c.max(1) as f64).collect();
        Ok(Trajectory { position, x0_sq: x_sq / count, p0_sq: p_sq / count, force_products })
    }
}

/// Exact discretisation of dX = AX dt + dW with ⟨dW dWᵀ⟩ = D dt over one step.
fn van_loan(drift: &Matrix3<f64>, diffusion: &Matrix3<f64>, dt: f64) -> (Matrix3<f64>, Matrix3<f64>) {
    let mut block = Matrix6::zeros();
    block.fixed_view_mut::<3, 3>(0, 0).copy_from(&(-drift * dt));
    block.fixed_view_mut::<3, 3>(0, 3).copy_from(&(diffusion * dt));
    block.fixed_view_mut::<3, 3>(3, 3).copy_from(&(drift.transpose() * dt));
    let e = block.exp();
    let propagator: Matrix3<f64> = e.fixed_view::<3, 3>(3, 3).transpose();
    let upper: Matrix3<f64> = e.fixed_view::<3, 3>(0, 3).into_owned();
    let covariance = propagator * upper;
    (propagator, (covariance + covariance.transpose()) / 2.0)
}

/// L with L·Lᵀ = C for a positive semidefinite C, tolerating zero directions.
fn symmetric_sqrt(c: &Matrix3<f64>) -> Matrix3<f64> {
    let eig = SymmetricEigen::new(*c);
    let roots = eig.eigenvalues.map(|v| v.max(0.0).sqrt());
    eig.eigenvectors * Matrix3::from_diagonal(&roots)
}

/// Runs one trajectory; its stream depends only on (seed, index).
pub fn simulate_trajectory(
    exp: &ExperimentParams<f64>,
    gup: &GupParams<f64>,
    consts: &PhysicalConstants<f64>,
    cfg: &SimConfig,
    index: usize,
) -> Result<Trajectory> {
    cfg.validate(exp)?;
    let derived = derive_params(exp, consts)?;
    let dynamics = Dynamics::new(exp, &derived, gup, consts, cfg);
    dynamics.run(index, cfg.seed, cfg.burn_in_steps(), cfg.recorded_steps())
}

/// Ensemble of trajectories reduced to a Welch PSD and ensemble moments.
pub fn simulate_langevin(
    exp: &ExperimentParams<f64>,
    gup: &GupParams<f64>,
    consts: &PhysicalConstants<f64>,
    cfg: &SimConfig,
) -> Result<SimResult> {
    cfg.validate(exp)?;
    let derived = derive_params(exp, consts)?;
    let dynamics = Dynamics::new(exp, &derived, gup, consts, cfg);
    let recorded = cfg.recorded_steps();
    let segment = ((MIN_SEGMENT_DECAY_TIMES / derived.rho0 / cfg.dt).ceil() as usize).next_power_of_two();
    let welch = Welch::new(segment.min(recorded.next_power_of_two() / 2).max(2));
    let per_traj_segments = welch.segments_in(recorded);
    if per_traj_segments == 0 {
        return Err(Error::Config("run too short for a single Welch segment".into()));
    }

    let bins = welch.bins();
    let mut psd_sum = vec![0.0; bins];
    let mut psd_sum_sq = vec![0.0; bins];
    let mut x_sq = Vec::with_capacity(cfg.n_traj);
    let mut p_sq = Vec::with_capacity(cfg.n_traj);
    let mut products: Vec<Vec<f64>> = vec![Vec::with_capacity(cfg.n_traj); FORCE_LAGS_OVER_KAPPA.len()];

    // Chunks keep memory bounded; each chunk is reduced in index order so the
    // result does not depend on thread scheduling.
    let chunk = rayon::current_num_threads().max(1) * 2;
    let mut start = 0;
    while start < cfg.n_traj {
        let end = (start + chunk).min(cfg.n_traj);
        let outputs: Vec<Result<(Trajectory, Vec<f64>)>> = (start..end)
            .into_par_iter()
            .map(|index| {
                let mut traj = dynamics.run(index, cfg.seed, cfg.burn_in_steps(), recorded)?;
                let psd = welch.average(&traj.position, cfg.dt);
                traj.position = Vec::new();
                Ok((traj, psd))
            })
            .collect();
        for output in outputs {
            let (traj, psd) = output?;
            for ((s, q), v) in psd_sum.iter_mut().zip(psd_sum_sq.iter_mut()).zip(&psd) {
                *s += v;
                *q += v * v;
            }
            x_sq.push(traj.x0_sq);
            p_sq.push(traj.p0_sq);
            for (column, value) in products.iter_mut().zip(&traj.force_products) {
                column.push(*value);
            }
        }
        start = end;
    }

    let n = cfg.n_traj as f64;
    let mean_psd: Vec<f64> = psd_sum.iter().map(|s| s / n).collect();
    let stderr_psd = if cfg.n_traj >= 2 {
        psd_sum_sq
            .iter()
            .zip(&mean_psd)
            .map(|(q, m)| ((q / n - m * m).max(0.0) * n / (n - 1.0) / n).sqrt())
            .collect()
    } else {
        // One trajectory: fall back to the spread of an average of independent periodograms.
        mean_psd.iter().map(|m| m / (per_traj_segments as f64).sqrt()).collect()
    };

    let force_autocovariance = FORCE_LAGS_OVER_KAPPA
        .iter()
        .zip(&dynamics.lag_steps)
        .zip(&products)
        .map(|((_, &steps), column)| {
            let lag = steps as f64 * cfg.dt;
            LagCovariance {
                lag,
                steps,
                measured: Moment::from_samples(column),
                expected: derived.radiation_force_variance * (-exp.kappa * lag / 2.0).exp(),
            }
        })
        .collect();

    Ok(SimResult {
        psd: PsdEstimate {
            freq_bins: welch.frequencies(cfg.dt),
            mean_psd,
            stderr_psd,
            n_segments: per_traj_segments * cfg.n_traj,
        },
        x0_sq: Moment::from_samples(&x_sq),
        p0_sq: Moment::from_samples(&p_sq),
        force_autocovariance,
    })
}
