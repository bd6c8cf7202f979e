//! Term-by-term comparison of the printed δS against transforms of the correlation it came from.

use gupnoise_core::model::{DerivedParams, ExperimentParams, GupParams};
use gupnoise_core::spectra::{delta_s_terms, CoeffLedger, DeltaSTerms};
use gupnoise_core::Result;

use crate::correlation::{perturbed_correlation, TermLabel};
use crate::quadrature::{decaying_sum, one_sided_estimate, Integral};

/// A term agrees when its gap is below this fraction of either its own size
/// or the summed magnitude of all terms at that frequency.
pub const AGREEMENT_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermComparison {
    pub label: TermLabel,
    /// The printed fraction times its GUP prefactor.
    pub printed: f64,
    /// Closed-form one-sided transform of the matching correlation term.
    pub analytic: f64,
    /// Numerical one-sided transform of the same term.
    pub quadrature: Integral,
}

impl TermComparison {
    /// |printed − quadrature| relative to the larger of the two.
    pub fn relative_gap(&self) -> f64 {
        relative_gap(self.printed, self.quadrature.value)
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyComparison {
    pub omega: f64,
    pub terms: Vec<TermComparison>,
}

impl FrequencyComparison {
    pub fn printed_total(&self) -> f64 {
        self.terms.iter().map(|t| t.printed).sum()
    }

    pub fn quadrature_total(&self) -> f64 {
        self.terms.iter().map(|t| t.quadrature.value).sum()
    }

    /// Σ|quadrature| over terms, the scale against which a small term's gap is judged.
    pub fn magnitude(&self) -> f64 {
        self.terms.iter().map(|t| t.quadrature.value.abs()).sum()
    }

    /// Gap of term `i` measured against the whole δS rather than the term itself.
    pub fn gap_in_total(&self, i: usize) -> f64 {
        let t = &self.terms[i];
        let scale = self.magnitude();
        if scale == 0.0 {
            0.0
        } else {
            (t.printed - t.quadrature.value).abs() / scale
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermVerdict {
    pub label: TermLabel,
    /// Largest gap relative to the term itself.
    pub worst_gap: f64,
    /// Largest gap relative to the summed magnitude of all terms.
    pub worst_gap_in_total: f64,
    /// Frequency of the worst gap.
    pub worst_omega: f64,
    /// printed/quadrature at that frequency.
    pub worst_ratio: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjudicationReport {
    pub rows: Vec<FrequencyComparison>,
    pub verdicts: Vec<TermVerdict>,
}

impl AdjudicationReport {
    pub fn discrepant(&self) -> impl Iterator<Item = &TermVerdict> {
        self.verdicts.iter().filter(|v| !v.agrees)
    }

    pub fn all_agree(&self) -> bool {
        self.verdicts.iter().all(|v| v.agrees)
    }

    /// Worst relative gap of the summed δS over the grid.
    pub fn worst_total_gap(&self) -> f64 {
        self.rows.iter().map(|r| relative_gap(r.printed_total(), r.quadrature_total())).fold(0.0, f64::max)
    }
}

fn printed_term(terms: &DeltaSTerms<f64>, label: TermLabel, gup: &GupParams<f64>) -> f64 {
    let a2 = gup.alpha * gup.alpha;
    let bracket = terms.bracket_prefactor * (a2 / 2.0 + gup.gamma);
    match label {
        TermLabel::K => bracket * terms.k_term,
        TermLabel::Pq => bracket * terms.pq_term,
        TermLabel::A2 => bracket * terms.a2_term,
        TermLabel::A1 => bracket * terms.a1_term,
        TermLabel::U1 => bracket * terms.u1_term,
        TermLabel::U2 => bracket * terms.u2_term,
        TermLabel::P1q1 => terms.p1q1_prefactor * (gup.gamma - 13.0 / 4.0 * a2) * terms.p1q1_term,
    }
}

/// Compares every printed fraction of δS with the quadrature of its correlation term.
pub fn adjudicate(
    gup: &GupParams<f64>,
    exp: &ExperimentParams<f64>,
    derived: &DerivedParams<f64>,
    ledger: &CoeffLedger<f64>,
    grid: &[f64],
    rel_tol: f64,
) -> Result<AdjudicationReport> {
    let correlation = perturbed_correlation(gup, exp, derived, ledger);
    let mut rows = Vec::with_capacity(grid.len());
    for &omega in grid {
        let fractions = delta_s_terms(omega, ledger, exp, derived);
        let mut terms = Vec::with_capacity(TermLabel::ALL.len());
        for label in TermLabel::ALL {
            let single = correlation.only(label);
            let quadrature = match decaying_sum(&single) {
                Some(corr) => one_sided_estimate(omega, &corr, rel_tol)?,
                None => Integral { value: 0.0, error: 0.0 },
            };
            terms.push(TermComparison {
                label,
                printed: printed_term(&fractions, label, gup),
                analytic: single.one_sided_transform(omega),
                quadrature,
            });
        }
        rows.push(FrequencyComparison { omega, terms });
    }

    let verdicts = TermLabel::ALL
        .iter()
        .enumerate()
        .map(|(i, &label)| {
            let worst_gap_in_total = rows.iter().map(|r| r.gap_in_total(i)).fold(0.0, f64::max);
            let (worst_gap, worst_omega, worst_ratio) = rows
                .iter()
                .map(|r| {
                    let t = &r.terms[i];
                    (t.relative_gap(), r.omega, t.printed / t.quadrature.value)
                })
                .fold((0.0, f64::NAN, f64::NAN), |acc, x| if x.0 > acc.0 || acc.1.is_nan() { x } else { acc });
            let agrees = rows
                .iter()
                .all(|r| r.terms[i].relative_gap() <= AGREEMENT_TOLERANCE || r.gap_in_total(i) <= AGREEMENT_TOLERANCE);
            TermVerdict { label, worst_gap, worst_gap_in_total, worst_omega, worst_ratio, agrees }
        })
        .collect();
    Ok(AdjudicationReport { rows, verdicts })
}
