//! GUP correction δS(ω) in its full form and its limits.

use super::ledger::CoeffLedger;
use super::mechanical_denominator;
use crate::error::{Error, Result};
use crate::model::{DerivedParams, ExperimentParams, GupParams, PhysicalConstants};
use crate::scalar::Real;

/// Smallest ω/Ω accepted by the free-mass form.
const FREE_MASS_MIN_RATIO: f64 = 10.0;

/// Individual fractions of the full δS(ω), before the GUP prefactors.
///
/// The first six sit inside the (α²/2 + γ) bracket; `p1q1` carries (γ − 13α²/4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaSTerms<T> {
    pub k_term: T,
    pub pq_term: T,
    pub a2_term: T,
    pub a1_term: T,
    pub u1_term: T,
    pub u2_term: T,
    pub p1q1_term: T,
    /// 6k_BT′/(mω₀²)
    pub bracket_prefactor: T,
    /// 3k_BT′/(mω₀²)
    pub p1q1_prefactor: T,
}

impl<T: Real> DeltaSTerms<T> {
    pub fn bracket(&self) -> T {
        self.k_term + self.pq_term + self.a2_term + self.a1_term + self.u1_term + self.u2_term
    }

    pub fn coefficients(&self) -> BilinearCoefficients<T> {
        let bracket = self.bracket_prefactor * self.bracket();
        let p1q1 = self.p1q1_prefactor * self.p1q1_term;
        BilinearCoefficients {
            c_alpha: bracket / T::lit(2.0) - T::lit(13.0 / 4.0) * p1q1,
            c_gamma: bracket + p1q1,
        }
    }
}

/// δS = c_α·α² + c_γ·γ at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearCoefficients<T> {
    pub c_alpha: T,
    pub c_gamma: T,
}

impl<T: Real> BilinearCoefficients<T> {
    pub fn evaluate(&self, gup: &GupParams<T>) -> T {
        self.c_alpha * gup.alpha * gup.alpha + self.c_gamma * gup.gamma
    }
}

/// (σ²+ν²−ω²)² + 4σ²ω² for a pole at σ ± iν, given σ²+ν² = r² + shift.
///
/// Writing σ²+ν²−ω² as (r−ω)(r+ω) + shift keeps near-resonant values accurate.
fn pole_denominator<T: Real>(sigma: T, r: T, shift: T, omega: T) -> T {
    let gap = (r - omega) * (r + omega) + shift;
    gap * gap + T::lit(4.0) * sigma * sigma * omega * omega
}

/// ω₀u₁ − ρ₀v₁, which vanishes whenever u₁/v₁ = ρ₀/ω₀ as the ledger guarantees.
///
/// Both products pick up a few roundings each, and near resonance that residue
/// would be amplified past every other term. A difference no larger than the
/// rounding bound of the stored inputs is therefore treated as zero.
fn ratio_skew<T: Real>(u1: T, v1: T, r0: T, w0: T) -> T {
    let a = u1 * w0;
    let b = r0 * v1;
    let skew = a - b;
    if skew.abs() <= T::lit(8.0) * T::epsilon() * (a.abs() + b.abs()) {
        T::zero()
    } else {
        skew
    }
}

/// The fractions of the full δS(ω), term by term.
pub fn delta_s_terms<T: Real>(
    omega: T,
    ledger: &CoeffLedger<T>,
    exp: &ExperimentParams<T>,
    derived: &DerivedParams<T>,
) -> DeltaSTerms<T> {
    let l = |x: f64| T::lit(x);
    let w = omega;
    let w2 = w * w;
    let big = exp.omega_m;
    let big2 = big * big;
    let r0 = derived.rho0;
    let w0 = derived.omega0;
    let r02 = r0 * r0;
    let kappa = exp.kappa;
    let zero = T::zero();

    // Ω² − ω², exact at resonance
    let below = (big - w) * (big + w);
    let delta = -below;
    let d1 = pole_denominator(r0, big, zero, w);

    let k_term = l(2.0) * ledger.k * kappa / (kappa * kappa + l(4.0) * w2);

    let pq_term = (ledger.q2 * w0 * below + ledger.p2 * r0 * (big2 + w2)) / d1;

    let d_a2 = pole_denominator(l(3.0) * r0, big, l(8.0) * r02, w);
    let a2_term = (l(3.0) * ledger.a2 * r0 * (big2 + l(8.0) * r02 + w2) - ledger.f2 * w0 * (below + l(8.0) * r02)) / d_a2;

    let three_big = l(3.0) * big;
    let d_a1 = pole_denominator(l(3.0) * r0, three_big, zero, w);
    let a1_term = (l(3.0) * ledger.a1 * r0 * (l(9.0) * big2 + w2)
        + l(3.0) * ledger.f1 * w0 * ((three_big - w) * (three_big + w)))
        / d_a1;

    // The printed numerator, re-expanded in δ = ω² − Ω² using ρ₀² + ω₀² = Ω².
    let (u1, v1) = (ledger.u1, ledger.v1);
    let c0 = l(8.0) * r02 * w0 * big2 * ratio_skew(u1, v1, r0, w0);
    let c1 = -l(4.0) * r0 * (r02 * r0 * u1 + l(4.0) * r02 * v1 * w0 - r0 * u1 * w0 * w0 + l(2.0) * v1 * w0 * w0 * w0);
    let c2 = -l(2.0) * (l(2.0) * r02 * u1 + l(3.0) * r0 * v1 * w0 + u1 * w0 * w0);
    let c3 = -u1;
    let u1_numerator = c0 + delta * (c1 + delta * (c2 + delta * c3));
    let u1_term = -u1_numerator / d1;

    let sigma = kappa / l(2.0) + l(2.0) * r0;
    let sigma2 = sigma * sigma;
    let minus = w2 - l(4.0) * w0 * w0;
    let plus = w2 + l(4.0) * w0 * w0;
    let outer = sigma2 + plus * plus;
    let u2_term = (-l(2.0) * ledger.v2 * w0 * (sigma2 - minus * minus) + ledger.u2 * sigma * outer)
        / (outer * outer - l(16.0) * w2 * w0 * w0);

    let p1q1_term = (ledger.p1 * r0 * (big2 + w2) + ledger.q1 * w0 * below) / d1;

    let base = derived.kbt_eff / (exp.mass * w0 * w0);
    DeltaSTerms {
        k_term,
        pq_term,
        a2_term,
        a1_term,
        u1_term,
        u2_term,
        p1q1_term,
        bracket_prefactor: l(6.0) * base,
        p1q1_prefactor: l(3.0) * base,
    }
}

pub fn delta_s_coefficients<T: Real>(
    omega: T,
    ledger: &CoeffLedger<T>,
    exp: &ExperimentParams<T>,
    derived: &DerivedParams<T>,
) -> BilinearCoefficients<T> {
    delta_s_terms(omega, ledger, exp, derived).coefficients()
}

/// Full δS(ω) with prefactors 6k_BT′(α²/2+γ)/(mω₀²) and 3k_BT′(γ−13α²/4)/(mω₀²).
pub fn delta_s_full<T: Real>(
    omega: T,
    gup: &GupParams<T>,
    ledger: &CoeffLedger<T>,
    exp: &ExperimentParams<T>,
    derived: &DerivedParams<T>,
) -> T {
    delta_s_coefficients(omega, ledger, exp, derived).evaluate(gup)
}

/// White-noise closed form:
/// 12k_B²T′²(α²+2γ)ρω²(ω²−Ω²)/D² + 3(4γ−13α²)ρΩ²ħ²/(4D), D = ρ²ω²+(ω²−Ω²)².
pub fn delta_s_white<T: Real>(
    omega: T,
    gup: &GupParams<T>,
    exp: &ExperimentParams<T>,
    derived: &DerivedParams<T>,
    consts: &PhysicalConstants<T>,
) -> T {
    let l = |x: f64| T::lit(x);
    let (alpha_sq, gamma) = (gup.alpha * gup.alpha, gup.gamma);
    let rho = exp.damping;
    let big = exp.omega_m;
    let d = mechanical_denominator(omega, big, rho);
    let detuning = (omega - big) * (omega + big);
    let kt = derived.kbt_eff;
    l(12.0) * kt * kt * (alpha_sq + l(2.0) * gamma) * rho * omega * omega * detuning / (d * d)
        + l(3.0) * (l(4.0) * gamma - l(13.0) * alpha_sq) * rho * big * big * consts.hbar * consts.hbar / (l(4.0) * d)
}

/// Free-mass limit (3ρħ²/ω²)(Ω²/ω²){8(α²/2+γ)(k_BT′/ħΩ)² + (γ − 13α²/4)}, valid for ω ≥ 10Ω.
pub fn delta_s_free_mass<T: Real>(
    omega: T,
    gup: &GupParams<T>,
    exp: &ExperimentParams<T>,
    derived: &DerivedParams<T>,
    consts: &PhysicalConstants<T>,
) -> Result<T> {
    let l = |x: f64| T::lit(x);
    let big = exp.omega_m;
    let ratio = omega / big;
    // written so that a NaN ratio is rejected too
    let in_domain = ratio >= l(FREE_MASS_MIN_RATIO);
    if !in_domain {
        return Err(Error::FreeMassDomain { ratio: ratio.to_f64_lossy() });
    }
    let alpha_sq = gup.alpha * gup.alpha;
    let gamma = gup.gamma;
    let hbar = consts.hbar;
    let w2 = omega * omega;
    let thermal_ratio = derived.kbt_eff / (hbar * big);
    let bracket = l(8.0) * (alpha_sq / l(2.0) + gamma) * thermal_ratio * thermal_ratio + (gamma - l(13.0 / 4.0) * alpha_sq);
    Ok(l(3.0) * exp.damping * hbar * hbar / w2 * (big * big / w2) * bracket)
}

/// δS(Ω) = 3(γ − 13α²/4)ħ²/ρ; depends on nothing but ρ.
pub fn delta_s_resonance<T: Real>(gup: &GupParams<T>, exp: &ExperimentParams<T>, consts: &PhysicalConstants<T>) -> T {
    let alpha_sq = gup.alpha * gup.alpha;
    T::lit(3.0) * (gup.gamma - T::lit(13.0 / 4.0) * alpha_sq) * consts.hbar * consts.hbar / exp.damping
}
