//! Analytic position correlations as sums of damped exponentials.
//!
//! Every contribution has the form 2·Re[A·τᵏ·e^{−sτ}] with k ∈ {0, 1}, which is
//! how the perturbed correlation is written once its complex conjugate is folded in.

use gupnoise_core::model::{DerivedParams, ExperimentParams, GupParams, PhysicalConstants};
use gupnoise_core::spectra::CoeffLedger;
use gupnoise_core::{Error, Result};
use num_complex::Complex64;

/// Which fraction of the printed δS a correlation term transforms into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermLabel {
    K,
    Pq,
    A2,
    A1,
    U1,
    U2,
    P1q1,
}

impl TermLabel {
    pub const ALL: [TermLabel; 7] =
        [TermLabel::K, TermLabel::Pq, TermLabel::A2, TermLabel::A1, TermLabel::U1, TermLabel::U2, TermLabel::P1q1];

    pub fn name(&self) -> &'static str {
        match self {
            TermLabel::K => "K",
            TermLabel::Pq => "p2/q2",
            TermLabel::A2 => "a2/f2",
            TermLabel::A1 => "a1/f1",
            TermLabel::U1 => "u1/v1",
            TermLabel::U2 => "u2/v2",
            TermLabel::P1q1 => "P1/Q1",
        }
    }
}

/// 2·Re[A·τᵏ·e^{−sτ}] for τ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedExponential {
    pub amplitude: Complex64,
    /// s, with Re s > 0 for a decaying term.
    pub rate: Complex64,
    /// Whether the term carries the extra factor τ.
    pub tau_weighted: bool,
}

impl DampedExponential {
    pub fn value(&self, tau: f64) -> f64 {
        let v = 2.0 * (self.amplitude * (-self.rate * tau).exp()).re;
        if self.tau_weighted {
            tau * v
        } else {
            v
        }
    }

    /// Re∫₀^∞ value(τ)·e^{iωτ} dτ = Re[A/(s−iω)^{k+1} + A/(s+iω)^{k+1}].
    pub fn one_sided_transform(&self, omega: f64) -> f64 {
        let minus = self.rate - Complex64::new(0.0, omega);
        let plus = self.rate + Complex64::new(0.0, omega);
        let (minus, plus) = if self.tau_weighted { (minus * minus, plus * plus) } else { (minus, plus) };
        (self.amplitude / minus + self.amplitude / plus).re
    }

    /// Upper bound on |value(τ)|.
    pub fn envelope(&self, tau: f64) -> f64 {
        let v = 2.0 * self.amplitude.norm() * (-self.rate.re * tau).exp();
        if self.tau_weighted {
            tau * v
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelledTerm {
    pub label: TermLabel,
    pub term: DampedExponential,
}

/// A finite sum of damped exponentials.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExponentialSum {
    pub terms: Vec<LabelledTerm>,
}

impl ExponentialSum {
    /// Value at τ ≥ 0; negative lags are outside the correlation's domain.
    pub fn value(&self, tau: f64) -> Result<f64> {
        if tau.is_nan() || tau < 0.0 {
            return Err(Error::domain("tau", format!("correlation lag must be >= 0, got {tau}")));
        }
        Ok(self.value_unchecked(tau))
    }

    pub(crate) fn value_unchecked(&self, tau: f64) -> f64 {
        self.terms.iter().map(|t| t.term.value(tau)).sum()
    }

    pub fn one_sided_transform(&self, omega: f64) -> f64 {
        self.terms.iter().map(|t| t.term.one_sided_transform(omega)).sum()
    }

    pub fn envelope(&self, tau: f64) -> f64 {
        self.terms.iter().map(|t| t.term.envelope(tau)).sum()
    }

    /// Smallest decay rate among terms with a nonzero amplitude.
    pub fn slowest_rate(&self) -> Option<f64> {
        self.active().map(|t| t.term.rate.re).reduce(f64::min)
    }

    /// Largest oscillation frequency among terms with a nonzero amplitude.
    pub fn fastest_oscillation(&self) -> f64 {
        self.active().map(|t| t.term.rate.im.abs()).fold(0.0, f64::max)
    }

    pub fn only(&self, label: TermLabel) -> ExponentialSum {
        ExponentialSum { terms: self.terms.iter().filter(|t| t.label == label).copied().collect() }
    }

    fn active(&self) -> impl Iterator<Item = &LabelledTerm> {
        self.terms.iter().filter(|t| t.term.amplitude != Complex64::new(0.0, 0.0))
    }
}

/// Steady ⟨x₀²⟩ = k_BT′/(mΩ²), the normalisation of both correlations.
pub fn steady_position_variance(exp: &ExperimentParams<f64>, derived: &DerivedParams<f64>) -> f64 {
    derived.kbt_eff / (exp.mass * exp.omega_m * exp.omega_m)
}

/// The perturbed correlation δ⟨x(τ)x(0)⟩ built from a coefficient ledger.
pub fn perturbed_correlation(
    gup: &GupParams<f64>,
    exp: &ExperimentParams<f64>,
    derived: &DerivedParams<f64>,
    ledger: &CoeffLedger<f64>,
) -> ExponentialSum {
    let (r0, w0) = (derived.rho0, derived.omega0);
    let half_kappa = exp.kappa / 2.0;
    let base = 1.5 * steady_position_variance(exp, derived) * (r0 * r0 + w0 * w0) / (w0 * w0);
    let bracket = base * (gup.alpha * gup.alpha + 2.0 * gup.gamma);
    let p1q1 = base * (gup.gamma - 13.0 / 4.0 * gup.alpha * gup.alpha);
    let c = Complex64::new;
    let l = &ledger;

    let term = |label, amplitude: Complex64, rate: Complex64, tau_weighted| LabelledTerm {
        label,
        term: DampedExponential { amplitude, rate, tau_weighted },
    };
    ExponentialSum {
        terms: vec![
            term(TermLabel::A1, bracket * c(l.a1, l.f1), c(3.0 * r0, -3.0 * w0), false),
            term(TermLabel::A2, bracket * c(l.a2, l.f2), c(3.0 * r0, -w0), false),
            term(TermLabel::Pq, bracket * c(l.p2, l.q2), c(r0, w0), false),
            term(TermLabel::U1, -bracket * c(l.u1, l.v1), c(r0, w0), true),
            term(TermLabel::U2, bracket * c(l.u2, l.v2), c(2.0 * r0 + half_kappa, -2.0 * w0), false),
            term(TermLabel::K, bracket * c(l.k, 0.0), c(2.0 * r0 + half_kappa, 0.0), false),
            term(TermLabel::P1q1, p1q1 * c(l.p1, l.q1), c(r0, w0), false),
        ],
    }
}

/// The unperturbed ⟨x₀(τ)x₀(0)⟩ = ⟨x₀²⟩/(2ω₀)·(iλ₋e^{λ₊τ} − iλ₊e^{λ₋τ}).
pub fn unperturbed_correlation(exp: &ExperimentParams<f64>, derived: &DerivedParams<f64>) -> ExponentialSum {
    let amplitude = Complex64::i() * derived.lambda_minus * steady_position_variance(exp, derived) / (2.0 * derived.omega0);
    ExponentialSum {
        terms: vec![LabelledTerm {
            label: TermLabel::Pq,
            term: DampedExponential { amplitude, rate: -derived.lambda_plus, tau_weighted: false },
        }],
    }
}

/// δ⟨x(τ)x(0)⟩ from the ledger, optionally with the unperturbed part added.
pub fn corr_perturbed(
    tau: f64,
    gup: &GupParams<f64>,
    exp: &ExperimentParams<f64>,
    derived: &DerivedParams<f64>,
    ledger: &CoeffLedger<f64>,
    include_unperturbed: bool,
) -> Result<f64> {
    let delta = perturbed_correlation(gup, exp, derived, ledger).value(tau)?;
    if include_unperturbed {
        Ok(delta + unperturbed_correlation(exp, derived).value(tau)?)
    } else {
        Ok(delta)
    }
}

/// The white-noise perturbed correlation written out term by term in real arithmetic.
///
/// This path shares nothing with the ledger so the two can be compared.
pub fn corr_white_explicit(
    tau: f64,
    gup: &GupParams<f64>,
    exp: &ExperimentParams<f64>,
    derived: &DerivedParams<f64>,
    consts: &PhysicalConstants<f64>,
) -> Result<f64> {
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::domain("tau", format!("correlation lag must be >= 0, got {tau}")));
    }
    let (r0, w0) = (derived.rho0, derived.omega0);
    let m = exp.mass;
    let kt = derived.kbt_eff;
    let x0_sq = kt / (m * exp.omega_m * exp.omega_m);
    let pre = 1.5 * x0_sq * (r0 * r0 + w0 * w0) / (w0 * w0);
    let (sin, cos) = (w0 * tau).sin_cos();
    let decay = (-r0 * tau).exp();

    // (i·k_BT′mρ₀/ω₀ − τ·mk_BT′(ρ₀ + iω₀))·e^{(−ρ₀−iω₀)τ} + c.c.
    let z_re = -tau * m * kt * r0;
    let z_im = kt * m * r0 / w0 - tau * m * kt * w0;
    let thermal = 2.0 * decay * (z_re * cos + z_im * sin);

    // (ħ²ω₀²m/k_BT′ + i·ħ²ρ₀ω₀m/k_BT′)·e^{(−ρ₀−iω₀)τ} + c.c.
    let scale = consts.hbar * consts.hbar * m / kt;
    let quantum = 2.0 * decay * scale * (w0 * w0 * cos + r0 * w0 * sin);

    let a2 = gup.alpha * gup.alpha;
    Ok(pre * ((a2 + 2.0 * gup.gamma) * thermal + (gup.gamma - 13.0 / 4.0 * a2) * quantum))
}
