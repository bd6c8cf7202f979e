//! Physical constants, experiment descriptions and every derived quantity.
//!
//! Frequencies Ω, ρ and κ are angular rates in rad/s; the drive frequency ν is an
//! ordinary frequency in Hz, so the optical angular frequency is ω_c = 2πν.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative mismatch |Qρ/Ω − 1| above which a consistency warning is logged.
pub const QUALITY_FACTOR_TOLERANCE: f64 = 0.1;

/// Fundamental constants (CODATA 2018).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants<T> {
    pub hbar: T,
    pub h: T,
    pub k_b: T,
    pub c: T,
    pub planck_mass: T,
}

impl<T: Real> PhysicalConstants<T> {
    /// h and k_B are exact by definition; ħ is derived in the working precision.
    pub fn codata2018() -> Self {
        let h = T::lit(6.626_070_15e-34);
        Self {
            hbar: h / (T::lit(2.0) * T::PI()),
            h,
            k_b: T::lit(1.380_649e-23),
            c: T::lit(299_792_458.0),
            planck_mass: T::lit(2.176_434e-8),
        }
    }

    /// m_p·c, the momentum scale of the dimensionless GUP strengths.
    pub fn planck_momentum(&self) -> T {
        self.planck_mass * self.c
    }
}

/// One experiment row: the oscillator, the cavity and the observed noise floor.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentParams<T> {
    pub name: String,
    /// Bath temperature T (K).
    pub temperature: T,
    /// Mechanical angular frequency Ω (rad/s).
    pub omega_m: T,
    /// Mechanical damping rate ρ (rad/s).
    pub damping: T,
    /// Quality factor as quoted; informational only.
    pub quality_factor: T,
    /// Drive frequency ν (Hz).
    pub drive_frequency: T,
    /// Cavity length L (m).
    pub cavity_length: T,
    /// Cavity decay rate κ (rad/s).
    pub kappa: T,
    /// Oscillator mass m (kg).
    pub mass: T,
    /// Drive power P (W).
    pub power: T,
    /// Finesse as quoted; informational only.
    pub finesse_quoted: T,
    /// Smallest observed displacement spectrum (m²/Hz).
    pub s_min: T,
}

impl<T: Real> ExperimentParams<T> {
    /// Checks signs and the underdamped requirement Ω > ρ/2.
    ///
    /// T = 0 and P = 0 are accepted: they switch off the thermal bath or the
    /// radiation drive, which the oracles rely on.
    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |field: &'static str, v: T| -> Result<()> {
            if !v.is_finite() || v < T::zero() {
                return Err(Error::domain(field, format!("must be finite and >= 0, got {:e}", v.to_f64_lossy())));
            }
            Ok(())
        };
        let finite_pos = |field: &'static str, v: T| -> Result<()> {
            if !v.is_finite() || v <= T::zero() {
                return Err(Error::domain(field, format!("must be finite and > 0, got {:e}", v.to_f64_lossy())));
            }
            Ok(())
        };
        finite_nonneg("temperature", self.temperature)?;
        finite_pos("omega_m", self.omega_m)?;
        finite_pos("damping", self.damping)?;
        finite_pos("drive_frequency", self.drive_frequency)?;
        finite_pos("cavity_length", self.cavity_length)?;
        finite_pos("kappa", self.kappa)?;
        finite_pos("mass", self.mass)?;
        finite_nonneg("power", self.power)?;
        finite_nonneg("quality_factor", self.quality_factor)?;
        finite_nonneg("finesse_quoted", self.finesse_quoted)?;
        finite_nonneg("s_min", self.s_min)?;
        if self.omega_m <= self.damping / T::lit(2.0) {
            return Err(Error::Overdamped {
                omega: self.omega_m.to_f64_lossy(),
                half_rho: (self.damping / T::lit(2.0)).to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// |Qρ/Ω − 1|: how far the quoted Q is from the one implied by ρ.
    pub fn quality_factor_mismatch(&self) -> T {
        (self.quality_factor * self.damping / self.omega_m - T::one()).abs()
    }

    /// Whether the quoted Q agrees with Ω/ρ within [`QUALITY_FACTOR_TOLERANCE`].
    pub fn quality_factor_consistent(&self) -> bool {
        self.quality_factor_mismatch() <= T::lit(QUALITY_FACTOR_TOLERANCE)
    }

    /// Re-expresses every field in another scalar type.
    pub fn cast<U: Real>(&self) -> ExperimentParams<U> {
        let c = |v: T| U::lit(v.to_f64_lossy());
        ExperimentParams {
            name: self.name.clone(),
            temperature: c(self.temperature),
            omega_m: c(self.omega_m),
            damping: c(self.damping),
            quality_factor: c(self.quality_factor),
            drive_frequency: c(self.drive_frequency),
            cavity_length: c(self.cavity_length),
            kappa: c(self.kappa),
            mass: c(self.mass),
            power: c(self.power),
            finesse_quoted: c(self.finesse_quoted),
            s_min: c(self.s_min),
        }
    }
}

/// Eigen-structure of the damped oscillator: λ± = −ρ₀ ± iω₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalues<T> {
    pub rho0: T,
    pub omega0: T,
    pub lambda_plus: Complex<T>,
    pub lambda_minus: Complex<T>,
}

impl<T: Real> Eigenvalues<T> {
    /// Accepts the undamped case ρ = 0; rejects Ω ≤ ρ/2.
    pub fn new(omega_m: T, damping: T) -> Result<Self> {
        let two = T::lit(2.0);
        if damping < T::zero() || !damping.is_finite() {
            return Err(Error::domain("damping", format!("must be finite and >= 0, got {:e}", damping.to_f64_lossy())));
        }
        if omega_m <= damping / two {
            return Err(Error::Overdamped {
                omega: omega_m.to_f64_lossy(),
                half_rho: (damping / two).to_f64_lossy(),
            });
        }
        let rho0 = damping / two;
        // √(4Ω²−ρ²)/2 in factored form, free of cancellation near critical damping
        let omega0 = ((two * omega_m - damping) * (two * omega_m + damping)).sqrt() / two;
        Ok(Self {
            rho0,
            omega0,
            lambda_plus: Complex::new(-rho0, omega0),
            lambda_minus: Complex::new(-rho0, -omega0),
        })
    }
}

/// Secondary quantities every spectrum formula consumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<T> {
    pub rho0: T,
    pub omega0: T,
    pub lambda_plus: Complex<T>,
    pub lambda_minus: Complex<T>,
    /// Optomechanical coupling G = ω_c/L (rad/(s·m)).
    pub coupling: T,
    /// Finesse F = πc/(κL).
    pub finesse: T,
    /// Mean intracavity amplitude squared 𝒜².
    pub photon_amp_sq: T,
    /// Radiation force variance ħ²𝒜²G² (N²).
    pub radiation_force_variance: T,
    /// Thermal energy k_B T (J).
    pub kbt: T,
    /// Effective thermal energy k_B T′ (J).
    pub kbt_eff: T,
    /// Steady ⟨x₀²⟩ driven by radiation pressure (m²).
    pub x0_sq: T,
    /// Steady ⟨p₀²⟩ driven by radiation pressure (kg²m²/s²).
    pub p0_sq: T,
}

/// Radiative share of k_B T′: 8hνF²P/(π²c²ρm).
fn radiative_energy<T: Real>(exp: &ExperimentParams<T>, finesse: T, consts: &PhysicalConstants<T>) -> T {
    T::lit(8.0) * consts.h * exp.drive_frequency * finesse * finesse * exp.power
        / (T::PI() * T::PI() * consts.c * consts.c * exp.damping * exp.mass)
}

fn finesse<T: Real>(exp: &ExperimentParams<T>, consts: &PhysicalConstants<T>) -> T {
    T::PI() * consts.c / (exp.kappa * exp.cavity_length)
}

pub fn derive_params<T: Real>(exp: &ExperimentParams<T>, consts: &PhysicalConstants<T>) -> Result<DerivedParams<T>> {
    exp.validate()?;
    let eig = Eigenvalues::new(exp.omega_m, exp.damping)?;
    let (rho0, omega0) = (eig.rho0, eig.omega0);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let kappa = exp.kappa;
    let mass = exp.mass;

    if !exp.quality_factor_consistent() {
        log::warn!(
            "{}: quoted Q = {:e} disagrees with Omega/rho = {:e}; using rho",
            exp.name,
            exp.quality_factor.to_f64_lossy(),
            (exp.omega_m / exp.damping).to_f64_lossy(),
        );
    }

    let finesse = finesse(exp, consts);
    let coupling = two * T::PI() * exp.drive_frequency / exp.cavity_length;
    let kbt = consts.k_b * exp.temperature;
    let radiative = radiative_energy(exp, finesse, consts);

    // 𝒜² fixed by equating the radiative parts of the two k_B T′ forms:
    // ħ²𝒜²G²κ/(ρ₀m(κ²+4ω₀²)) = radiative.
    let kappa_sq_4w0 = kappa * kappa + four * omega0 * omega0;
    let radiation_force_variance = radiative * rho0 * mass * kappa_sq_4w0 / kappa;
    let photon_amp_sq = radiation_force_variance / (consts.hbar * consts.hbar * coupling * coupling);

    let shifted = (kappa + two * rho0) * (kappa + two * rho0) + four * omega0 * omega0;
    let x0_sq = radiation_force_variance * (kappa + four * rho0)
        / (rho0 * mass * mass * exp.omega_m * exp.omega_m * shifted);
    let p0_sq = radiation_force_variance * kappa / (rho0 * shifted);

    Ok(DerivedParams {
        rho0,
        omega0,
        lambda_plus: eig.lambda_plus,
        lambda_minus: eig.lambda_minus,
        coupling,
        finesse,
        photon_amp_sq,
        radiation_force_variance,
        kbt,
        kbt_eff: kbt + radiative,
        x0_sq,
        p0_sq,
    })
}

/// k_B T′ = k_B T + 8hνF²P/(π²c²ρm), evaluated from the raw parameters.
pub fn effective_temperature<T: Real>(
    exp: &ExperimentParams<T>,
    _derived: &DerivedParams<T>,
    consts: &PhysicalConstants<T>,
) -> T {
    consts.k_b * exp.temperature + radiative_energy(exp, finesse(exp, consts), consts)
}

/// k_B T′ = k_B T + ħ²𝒜²G²κ/(ρ₀m(κ²+4ω₀²)), the steady-state form.
pub fn effective_temperature_steady_state<T: Real>(
    exp: &ExperimentParams<T>,
    derived: &DerivedParams<T>,
    consts: &PhysicalConstants<T>,
) -> T {
    let four = T::lit(4.0);
    let g = derived.coupling;
    consts.k_b * exp.temperature
        + consts.hbar * consts.hbar * derived.photon_amp_sq * g * g * exp.kappa
            / (derived.rho0 * exp.mass * (exp.kappa * exp.kappa + four * derived.omega0 * derived.omega0))
}

/// GUP strengths in SI and dimensionless form, always mutually consistent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GupParams<T> {
    /// Linear strength α (s/(kg·m)).
    pub alpha: T,
    /// Quadratic strength γ (s²/(kg·m)²).
    pub gamma: T,
    pub alpha0: T,
    pub gamma0: T,
}

impl<T: Real> GupParams<T> {
    pub fn zero() -> Self {
        Self { alpha: T::zero(), gamma: T::zero(), alpha0: T::zero(), gamma0: T::zero() }
    }

    /// Builds from SI strengths, the inverse of [`gup_convert`].
    pub fn from_si(alpha: T, gamma: T, consts: &PhysicalConstants<T>) -> Result<Self> {
        check_nonnegative("alpha", alpha)?;
        check_nonnegative("gamma", gamma)?;
        let pc = consts.planck_momentum();
        Ok(Self { alpha, gamma, alpha0: alpha * pc, gamma0: gamma * pc * pc })
    }
}

fn check_nonnegative<T: Real>(field: &'static str, v: T) -> Result<()> {
    if !v.is_finite() || v < T::zero() {
        return Err(Error::domain(field, format!("must be finite and >= 0, got {:e}", v.to_f64_lossy())));
    }
    Ok(())
}

/// α = α₀/(m_p c), γ = γ₀/(m_p c)².
pub fn gup_convert<T: Real>(alpha0: T, gamma0: T, consts: &PhysicalConstants<T>) -> Result<GupParams<T>> {
    check_nonnegative("alpha0", alpha0)?;
    check_nonnegative("gamma0", gamma0)?;
    let pc = consts.planck_momentum();
    Ok(GupParams { alpha: alpha0 / pc, gamma: gamma0 / (pc * pc), alpha0, gamma0 })
}
