//! Unperturbed spectrum S₀(ω), the coefficient ledger and the GUP correction δS(ω).
//!
//! Inputs ω are angular frequencies (rad/s); spectra are returned in m²/Hz.

mod delta;
mod grid;
mod ledger;
mod series;

pub use delta::{
    delta_s_coefficients, delta_s_free_mass, delta_s_full, delta_s_resonance, delta_s_terms, delta_s_white,
    BilinearCoefficients, DeltaSTerms,
};
pub use grid::{FrequencyGrid, GridScale};
pub use ledger::{coeff_ledger, CoeffLedger, LedgerMode, LedgerParents, DEGENERACY_GUARD};
pub use series::{spectrum_series, SpectrumMetadata, SpectrumSeries};

use crate::model::{DerivedParams, ExperimentParams};
use crate::scalar::Real;

/// The three contributions to S₀(ω).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S0Terms<T> {
    /// Measurement imprecision (κ²+4ω²)/(16κ𝒜²G²).
    pub shot_noise: T,
    /// Radiation back-action on the oscillator.
    pub back_action: T,
    /// Thermal bath at temperature T.
    pub thermal: T,
}

impl<T: Real> S0Terms<T> {
    pub fn total(&self) -> T {
        self.shot_noise + self.back_action + self.thermal
    }

    /// Motional part only, which is what a simulated trajectory sees.
    pub fn mechanical(&self) -> T {
        self.back_action + self.thermal
    }
}

/// ρ²ω² + (ω²−Ω²)², with ω²−Ω² factored so that the resonance is resolved exactly.
pub(crate) fn mechanical_denominator<T: Real>(omega: T, omega_m: T, damping: T) -> T {
    let detuning = (omega - omega_m) * (omega + omega_m);
    damping * damping * omega * omega + detuning * detuning
}

pub fn s0_terms<T: Real>(omega: T, exp: &ExperimentParams<T>, derived: &DerivedParams<T>) -> S0Terms<T> {
    let four = T::lit(4.0);
    let kappa = exp.kappa;
    let cavity = kappa * kappa + four * omega * omega;
    let g_sq = derived.coupling * derived.coupling;
    let d = mechanical_denominator(omega, exp.omega_m, exp.damping);
    let mass = exp.mass;
    S0Terms {
        shot_noise: cavity / (T::lit(16.0) * kappa * derived.photon_amp_sq * g_sq),
        back_action: four * kappa * derived.radiation_force_variance / (cavity * mass * mass * d),
        thermal: T::lit(2.0) * exp.damping * derived.kbt / (mass * d),
    }
}

/// S₀(ω), even in ω by construction.
pub fn s0<T: Real>(omega: T, exp: &ExperimentParams<T>, derived: &DerivedParams<T>) -> T {
    s0_terms(omega, exp, derived).total()
}
