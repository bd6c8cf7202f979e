//! Upper bounds on the GUP strengths from δS(ω) ≤ S₀(ω), saturated.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{derive_params, ExperimentParams, PhysicalConstants};
use crate::scalar::Real;
use crate::spectra::{coeff_ledger, delta_s_coefficients, s0, BilinearCoefficients, LedgerMode};

/// Default ratio in the lower bound γ ≥ c·α².
pub const DEFAULT_JOINT_RATIO: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint<T> {
    /// γ = ratio·α² at saturation.
    Joint { ratio: T },
    /// α = 0.
    GammaOnly,
}

impl<T: Real> Constraint<T> {
    pub fn joint_default() -> Self {
        Constraint::Joint { ratio: T::lit(DEFAULT_JOINT_RATIO) }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Constraint::Joint { .. } => "joint",
            Constraint::GammaOnly => "gamma_only",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub preset: String,
    pub omega_eval: T,
    pub constraint: Constraint<T>,
    pub ledger_mode: LedgerMode,
    pub alpha_max: T,
    pub alpha0_max: T,
    pub gamma_max: T,
    pub gamma0_max: T,
    /// 10^⌈log₁₀ α₀⌉, zero when α is pinned to zero.
    pub alpha0_decade: T,
    /// 10^⌈log₁₀ γ₀⌉
    pub gamma0_decade: T,
    pub s0_at: T,
    pub c_alpha: T,
    pub c_gamma: T,
}

fn decade<T: Real>(x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    T::lit(10.0).powf(x.log10().ceil())
}

/// Solves the saturated inequality from precomputed coefficients and S₀.
pub fn solve_from_coefficients<T: Real>(
    preset: &str,
    omega_eval: T,
    coeffs: BilinearCoefficients<T>,
    s0_at: T,
    constraint: Constraint<T>,
    ledger_mode: LedgerMode,
    consts: &PhysicalConstants<T>,
) -> Result<BoundReport<T>> {
    let pc = consts.planck_momentum();
    let (alpha_max, gamma_max) = match constraint {
        Constraint::Joint { ratio } => {
            let combined = coeffs.c_alpha + ratio * coeffs.c_gamma;
            let positive = combined.is_finite() && combined > T::zero();
            if !positive {
                return Err(Error::Unbounded { omega: omega_eval.to_f64_lossy(), coefficient: combined.to_f64_lossy() });
            }
            let alpha = (s0_at / combined).sqrt();
            (alpha, ratio * alpha * alpha)
        }
        Constraint::GammaOnly => {
            let positive = coeffs.c_gamma.is_finite() && coeffs.c_gamma > T::zero();
            if !positive {
                return Err(Error::Unbounded {
                    omega: omega_eval.to_f64_lossy(),
                    coefficient: coeffs.c_gamma.to_f64_lossy(),
                });
            }
            (T::zero(), s0_at / coeffs.c_gamma)
        }
    };
    let alpha0_max = alpha_max * pc;
    let gamma0_max = gamma_max * pc * pc;
    Ok(BoundReport {
        preset: preset.to_owned(),
        omega_eval,
        constraint,
        ledger_mode,
        alpha_max,
        alpha0_max,
        gamma_max,
        gamma0_max,
        alpha0_decade: decade(alpha0_max),
        gamma0_decade: decade(gamma0_max),
        s0_at,
        c_alpha: coeffs.c_alpha,
        c_gamma: coeffs.c_gamma,
    })
}

pub fn solve_bound<T: Real>(
    exp: &ExperimentParams<T>,
    consts: &PhysicalConstants<T>,
    omega_eval: T,
    constraint: Constraint<T>,
    ledger_mode: LedgerMode,
) -> Result<BoundReport<T>> {
    let derived = derive_params(exp, consts)?;
    let ledger = coeff_ledger(exp, &derived, consts, ledger_mode)?;
    let coeffs = delta_s_coefficients(omega_eval, &ledger, exp, &derived);
    let s0_at = s0(omega_eval, exp, &derived);
    solve_from_coefficients(&exp.name, omega_eval, coeffs, s0_at, constraint, ledger_mode, consts)
}

/// One scanned frequency and its bound, or the reason there is none.
pub type ScanEntry<T> = (T, Result<BoundReport<T>>);

/// Per-frequency bounds; unbounded frequencies are kept as gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundScan<T> {
    pub entries: Vec<ScanEntry<T>>,
    /// Index of the entry with the smallest α₀ bound (smallest γ₀ under gamma-only).
    pub tightest: usize,
}

impl<T: Real> BoundScan<T> {
    pub fn tightest_report(&self) -> &BoundReport<T> {
        match &self.entries[self.tightest].1 {
            Ok(r) => r,
            Err(_) => unreachable!("tightest always points at a solved entry"),
        }
    }

    pub fn gaps(&self) -> impl Iterator<Item = T> + '_ {
        self.entries.iter().filter(|(_, r)| r.is_err()).map(|(w, _)| *w)
    }
}

pub fn bound_scan<T: Real>(
    exp: &ExperimentParams<T>,
    consts: &PhysicalConstants<T>,
    grid: &[T],
    constraint: Constraint<T>,
    ledger_mode: LedgerMode,
) -> Result<BoundScan<T>> {
    crate::spectra::FrequencyGrid::validate_points(grid)?;
    let derived = derive_params(exp, consts)?;
    let ledger = coeff_ledger(exp, &derived, consts, ledger_mode)?;
    let entries: Vec<ScanEntry<T>> = grid
        .par_iter()
        .map(|&w| {
            let coeffs = delta_s_coefficients(w, &ledger, exp, &derived);
            let s0_at = s0(w, exp, &derived);
            (w, solve_from_coefficients(&exp.name, w, coeffs, s0_at, constraint, ledger_mode, consts))
        })
        .collect();

    let key = |r: &BoundReport<T>| match constraint {
        Constraint::Joint { .. } => r.alpha0_max,
        Constraint::GammaOnly => r.gamma0_max,
    };
    let tightest = entries
        .iter()
        .enumerate()
        .filter_map(|(i, (_, r))| r.as_ref().ok().map(|r| (i, key(r))))
        .fold(None, |best: Option<(usize, T)>, (i, v)| match best {
            Some((_, b)) if b <= v => best,
            _ => Some((i, v)),
        })
        .map(|(i, _)| i)
        .ok_or(Error::EmptyResult)?;
    Ok(BoundScan { entries, tightest })
}
