//! Real coefficients of the perturbed correlation and their complex parents.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{DerivedParams, ExperimentParams, PhysicalConstants};
use crate::scalar::Real;

/// Minimum |λ₊ − λ₋| as a fraction of Ω; the exact ledger divides by powers of it.
pub const DEGENERACY_GUARD: f64 = 1e-9;

/// Largest tolerated |Im|/|Re| for quantities that must be real.
const IMAGINARY_RESIDUE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LedgerMode {
    /// Complex closed forms, real and imaginary parts taken at the end.
    Exact,
    /// Closed approximations valid for κ ≫ ρ.
    ApproxKappaGgRho,
    /// Radiation force treated as white noise (κ ≫ Ω, ρ).
    WhiteNoise,
}

impl LedgerMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            LedgerMode::Exact => "exact",
            LedgerMode::ApproxKappaGgRho => "approx_kappa_gg_rho",
            LedgerMode::WhiteNoise => "white_noise",
        }
    }
}

impl std::str::FromStr for LedgerMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(LedgerMode::Exact),
            "approx_kappa_gg_rho" => Ok(LedgerMode::ApproxKappaGgRho),
            "white_noise" => Ok(LedgerMode::WhiteNoise),
            other => Err(Error::Config(format!(
                "unknown ledger mode {other:?} (expected exact, approx_kappa_gg_rho or white_noise)"
            ))),
        }
    }
}

/// Complex amplitudes A1, A2, B1, B2, C1 of the perturbation correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerParents<T> {
    pub a1c: Complex<T>,
    pub a2c: Complex<T>,
    pub b1c: Complex<T>,
    pub b2c: Complex<T>,
    pub c1c: Complex<T>,
}

/// The thirteen real coefficients weighting the damped exponentials of δ⟨x(τ)x(0)⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffLedger<T> {
    pub mode: LedgerMode,
    /// Present in exact mode only.
    pub parents: Option<LedgerParents<T>>,
    pub a1: T,
    pub f1: T,
    pub a2: T,
    pub f2: T,
    pub p2: T,
    pub q2: T,
    pub u1: T,
    pub v1: T,
    /// 𝒫₁
    pub p1: T,
    /// 𝒬₁
    pub q1: T,
    pub u2: T,
    pub v2: T,
    /// 𝒦
    pub k: T,
}

fn expect_real<T: Real>(quantity: &'static str, z: Complex<T>) -> Result<T> {
    if z.im.abs() > T::lit(IMAGINARY_RESIDUE_TOLERANCE) * z.re.abs() {
        return Err(Error::ImaginaryResidue { quantity, real: z.re.to_f64_lossy(), imag: z.im.to_f64_lossy() });
    }
    Ok(z.re)
}

fn exact_parents<T: Real>(
    exp: &ExperimentParams<T>,
    d: &DerivedParams<T>,
) -> Result<LedgerParents<T>> {
    let c = |x: f64| Complex::new(T::lit(x), T::zero());
    let r = |x: T| Complex::new(x, T::zero());
    let lp = d.lambda_plus;
    let lm = d.lambda_minus;

    // λ₊λ₋ = Ω² and λ₊+λ₋ = −ρ must come out real
    let prod = expect_real("lambda+ * lambda-", lp * lm)?;
    let sum = expect_real("lambda+ + lambda-", lp + lm)?;
    let (prod, sum) = (r(prod), r(sum));

    let m = r(exp.mass);
    let k = r(exp.kappa);
    let x2 = r(d.x0_sq);
    let p2 = r(d.p0_sq);
    let thermal = r(T::lit(2.0) * d.kbt * exp.damping * exp.mass);
    let force = r(d.radiation_force_variance);
    let pm2 = (prod * m) * (prod * m);
    let diff = lm - lp;
    let three_lp_lm = c(3.0) * lp - lm;

    let a1c = x2 * (c(-3.0) * pm2) / (c(2.0) * three_lp_lm * diff)
        + p2 * (c(-3.0) * lp * lp) / (c(2.0) * three_lp_lm * diff)
        + thermal * (c(-3.0) * lp) / (c(4.0) * three_lp_lm * diff)
        + c(-3.0) * force * lp / (three_lp_lm * diff * (k + c(2.0) * lp));

    let two_lp_lm = c(2.0) * lp + lm;
    let a2c = x2 * c(3.0) * pm2 * two_lp_lm / (c(2.0) * lp * sum * diff)
        + p2 * two_lp_lm * (lp + c(2.0) * lm) / (c(2.0) * sum * diff)
        + thermal * two_lp_lm * (lp + c(5.0) * lm) / (c(4.0) * sum * sum * diff)
        + force * two_lp_lm * (c(6.0) * lm * sum + k * (lp + c(5.0) * lm))
            / ((k + c(2.0) * lm) * diff * sum * sum * (k + c(2.0) * lp));

    let lp2 = lp * lp;
    let lp3 = lp2 * lp;
    let lp4 = lp3 * lp;
    let lp5 = lp4 * lp;
    let lm2 = lm * lm;
    let lm3 = lm2 * lm;
    let lm4 = lm3 * lm;
    let lm5 = lm4 * lm;
    let k2 = k * k;
    let k3 = k2 * k;
    let k4 = k3 * k;
    let numerator = c(-24.0) * lm2 * diff * diff * lp * (lm2 - lm * lp - c(2.0) * lp2)
        - k4 * (lm3 - c(3.0) * lm2 * lp + c(7.0) * lm * lp2 + c(3.0) * lp3)
        - c(2.0) * k2 * lp * (c(25.0) * lm4 - c(41.0) * lm3 * lp - c(5.0) * lm2 * lp2 + c(57.0) * lm * lp3 + c(12.0) * lp4)
        + k3 * (c(5.0) * lm4 + lm3 * lp - c(23.0) * lm2 * lp2 + c(47.0) * lm * lp3 + c(18.0) * lp4)
        + c(4.0) * k * lm * (lm5 + lm4 * lp + c(11.0) * lm3 * lp2 - c(35.0) * lm2 * lp3 + c(20.0) * lm * lp4 + c(18.0) * lp5);
    let k_2lm = k - c(2.0) * lm;
    let k_2lp = k - c(2.0) * lp;
    let denominator = k_2lm * k_2lm * (k - c(4.0) * lp + c(2.0) * lm) * (lm - c(3.0) * lp) * k_2lp * k_2lp * diff * sum * sum;
    let b1c = x2 * c(3.0) * diff * pm2 / (c(2.0) * lp * three_lp_lm * sum)
        + p2 * lm * diff / (c(2.0) * sum * three_lp_lm)
        + thermal * (c(3.0) * lp3 + c(7.0) * lm * lp2 - c(3.0) * lm2 * lp + lm3) / (c(2.0) * three_lp_lm * sum * sum * diff)
        + c(2.0) * force * numerator / denominator;

    let b2c = c(16.0) * force * k * lp * (k - c(4.0) * lp)
        / ((k + c(2.0) * lm) * (k - c(4.0) * lp + c(2.0) * lm) * k_2lp * k_2lp * (k + c(2.0) * lp));
    let c1c = c(16.0) * force * k * lp * (k - c(2.0) * lp - c(2.0) * lm)
        / (k_2lp * k_2lp * (k + c(2.0) * lp) * (k2 - c(4.0) * lm2));

    Ok(LedgerParents { a1c, a2c, b1c, b2c, c1c })
}

pub fn coeff_ledger<T: Real>(
    exp: &ExperimentParams<T>,
    derived: &DerivedParams<T>,
    consts: &PhysicalConstants<T>,
    mode: LedgerMode,
) -> Result<CoeffLedger<T>> {
    let gap = (derived.lambda_plus - derived.lambda_minus).norm();
    let guard = T::lit(DEGENERACY_GUARD) * exp.omega_m;
    if gap < guard {
        return Err(Error::DegenerateEigenvalue { gap: gap.to_f64_lossy(), guard: guard.to_f64_lossy() });
    }

    let rho0 = derived.rho0;
    let omega0 = derived.omega0;
    let kbt_eff = derived.kbt_eff;
    let mass = exp.mass;
    let hbar_sq = consts.hbar * consts.hbar;
    let zero = T::zero();

    let mut ledger = CoeffLedger {
        mode,
        parents: None,
        a1: zero,
        f1: zero,
        a2: zero,
        f2: zero,
        p2: zero,
        q2: zero,
        u1: kbt_eff * rho0 * mass,
        v1: kbt_eff * omega0 * mass,
        p1: hbar_sq * mass * omega0 * omega0 / kbt_eff,
        q1: hbar_sq * mass * rho0 * omega0 / kbt_eff,
        u2: zero,
        v2: zero,
        k: zero,
    };

    match mode {
        LedgerMode::Exact => {
            let parents = exact_parents(exp, derived)?;
            ledger.a1 = parents.a1c.re;
            ledger.f1 = parents.a1c.im;
            ledger.a2 = parents.a2c.re;
            ledger.f2 = parents.a2c.im;
            ledger.p2 = parents.b1c.re;
            ledger.q2 = parents.b1c.im;
            ledger.u2 = parents.b2c.re;
            ledger.v2 = parents.b2c.im;
            ledger.k = parents.c1c.re;
            ledger.parents = Some(parents);
        }
        LedgerMode::ApproxKappaGgRho => {
            let l = |x: f64| T::lit(x);
            let f = derived.radiation_force_variance;
            let k = exp.kappa;
            let k2 = k * k;
            let w2 = omega0 * omega0;
            let r2 = rho0 * rho0;
            let k4w = k2 + l(4.0) * w2;
            let r4w = r2 + l(4.0) * w2;
            let k36w = k2 + l(36.0) * w2;
            ledger.a1 = -l(3.0) * f * w2 / (k4w * r4w);
            ledger.f1 = -l(3.0) * f * k * omega0 / (l(4.0) * k4w * r4w);
            ledger.a2 = -l(3.0) * f * k / (l(2.0) * rho0 * k4w);
            ledger.f2 = l(3.0) * f * k * omega0 / (l(4.0) * r2 * k4w);
            ledger.p2 = l(39.0) * f * w2 * k2 * k2 / (r4w * k4w * k4w * k36w);
            ledger.q2 = kbt_eff * mass * rho0 / omega0
                - l(8.0) * f * omega0 * k * (l(5.0) * k2 + l(18.0) * w2) * (r2 + l(3.0) * w2) / (r4w * k4w * k4w * k36w);
            ledger.u2 = l(16.0) * f * k * (rho0 * k2 * k2 + l(6.0) * k2 * k * w2 + l(88.0) * k * w2 * w2)
                / (k4w * k4w * k4w * k36w);
            ledger.v2 = -l(16.0) * f * k * omega0 * (k2 * k2 + l(12.0) * k2 * w2 - l(96.0) * w2 * w2)
                / (k4w * k4w * k4w * k36w);
            ledger.k = -l(16.0) * f * k2 * (rho0 * k + l(2.0) * w2) / (k4w * k4w * k4w);
        }
        LedgerMode::WhiteNoise => {
            ledger.q2 = kbt_eff * mass * rho0 / omega0;
        }
    }
    Ok(ledger)
}
