//! Adaptive Gauss–Kronrod quadrature and one-sided Fourier transforms of decaying correlations.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use gupnoise_core::{Error, Result};

use crate::correlation::ExponentialSum;

/// Relative tolerance requested from the Fourier quadrature.
pub const DEFAULT_REL_TOL: f64 = 1e-6;

/// The correlation is integrated out to this many slowest decay times.
pub const TAIL_DECAY_TIMES: f64 = 40.0;

const MAX_SEGMENTS: usize = 4_000_000;

// Gauss-Kronrod 7/15 nodes and weights, kept at their tabulated precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Estimated absolute error, including truncation, rounding and tail.
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// ∫|f| over the segment, which sets the rounding floor.
    abs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    let mut values = [0.0; 15];
    values[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[j] = f1;
        values[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = kronrod / 2.0;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((values[j] - mean).abs() + (values[14 - j] - mean).abs());
    }
    let diff = ((kronrod - gauss) * half).abs();
    let asc = asc * half.abs();
    let error = if asc > 0.0 && diff > 0.0 { asc * (200.0 * diff / asc).powf(1.5).min(1.0) } else { diff };
    Segment { a, b, value: kronrod * half, error, abs: abs * half.abs() }
}

/// Compensated sum, so that many alternating panel values keep their digits.
fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut compensation = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

/// Outcome of a global adaptive integration before it is judged against a tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOutcome {
    pub integral: Integral,
    pub converged: bool,
    pub segments: usize,
}

/// Global adaptive GK15 over the panels delimited by `breakpoints`.
///
/// The segment with the largest error is bisected until the summed error meets
/// max(rel_tol·|value|, abs_tol) or only rounding is left.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, breakpoints: &[f64], rel_tol: f64, abs_tol: f64) -> AdaptiveOutcome {
    let mut heap: BinaryHeap<Segment> = breakpoints.windows(2).map(|w| gk15(f, w[0], w[1])).collect();
    let mut total_value: f64 = heap.iter().map(|s| s.value).sum();
    let mut total_error: f64 = heap.iter().map(|s| s.error).sum();
    let mut abs_sq: f64 = heap.iter().map(|s| s.abs * s.abs).sum();
    let rounding = |abs_sq: f64| 8.0 * f64::EPSILON * abs_sq.sqrt();

    while heap.len() < MAX_SEGMENTS {
        let target = (rel_tol * total_value.abs()).max(abs_tol);
        if total_error <= target || total_error <= rounding(abs_sq) {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(Segment { error: 0.0, ..worst });
            total_error -= worst.error;
            continue;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        abs_sq += left.abs * left.abs + right.abs * right.abs - worst.abs * worst.abs;
        heap.push(left);
        heap.push(right);
    }

    let segments = heap.len();
    let mut all = heap.into_vec();
    all.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = neumaier_sum(all.iter().map(|s| s.value));
    let truncation: f64 = all.iter().map(|s| s.error).sum();
    let abs_sq: f64 = all.iter().map(|s| s.abs * s.abs).sum();
    let error = truncation + rounding(abs_sq);
    let converged = error <= (rel_tol * value.abs()).max(abs_tol);
    AdaptiveOutcome { integral: Integral { value, error }, converged, segments }
}

/// ∫_a^∞ f via the map x = a + scale·t/(1−t).
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: &F, a: f64, scale: f64, rel_tol: f64, abs_tol: f64) -> AdaptiveOutcome {
    let mapped = |t: f64| {
        let one_minus = 1.0 - t;
        f(a + scale * t / one_minus) * scale / (one_minus * one_minus)
    };
    let breakpoints: Vec<f64> = (0..=16).map(|k| k as f64 / 16.0).collect();
    integrate_adaptive(&mapped, &breakpoints, rel_tol, abs_tol)
}

/// A correlation function together with what the Fourier quadrature needs to know about it.
pub struct DecayingCorrelation<F> {
    pub function: F,
    /// Slowest exponential decay rate r (1/s); the integral is cut at 40/r.
    pub slowest_rate: f64,
    /// Highest angular frequency present in the correlation (rad/s).
    pub bandwidth: f64,
}

impl<F: Fn(f64) -> f64> DecayingCorrelation<F> {
    pub fn new(function: F, slowest_rate: f64, bandwidth: f64) -> Result<Self> {
        let positive = slowest_rate.is_finite() && slowest_rate > 0.0;
        if !positive {
            return Err(Error::domain("slowest_rate", format!("must be positive and finite, got {slowest_rate}")));
        }
        if !(bandwidth.is_finite() && bandwidth >= 0.0) {
            return Err(Error::domain("bandwidth", format!("must be non-negative and finite, got {bandwidth}")));
        }
        Ok(Self { function, slowest_rate, bandwidth })
    }
}

/// Wraps an exponential sum; `None` when every amplitude vanishes.
pub fn decaying_sum(sum: &ExponentialSum) -> Option<DecayingCorrelation<impl Fn(f64) -> f64 + '_>> {
    let rate = sum.slowest_rate()?;
    DecayingCorrelation::new(move |tau| sum.value_unchecked(tau), rate, sum.fastest_oscillation()).ok()
}

/// Re∫₀^∞ C(τ)e^{iωτ} dτ with a cutoff at 40/r plus a bound on the neglected tail.
pub fn one_sided_transform<F: Fn(f64) -> f64>(omega: f64, corr: &DecayingCorrelation<F>, rel_tol: f64) -> Result<Integral> {
    let Integral { value, error } = one_sided_estimate(omega, corr, rel_tol)?;
    if error > rel_tol * value.abs() {
        return Err(Error::Convergence { omega, estimate: error, value });
    }
    Ok(Integral { value, error })
}

/// The same transform, returned with its error estimate whether or not it meets `rel_tol`.
pub fn one_sided_estimate<F: Fn(f64) -> f64>(omega: f64, corr: &DecayingCorrelation<F>, rel_tol: f64) -> Result<Integral> {
    if !omega.is_finite() {
        return Err(Error::domain("omega", format!("must be finite, got {omega}")));
    }
    let rate = corr.slowest_rate;
    let tau_max = TAIL_DECAY_TIMES / rate;
    let fastest = omega.abs().max(corr.bandwidth).max(rate);
    // One panel per half period of the fastest oscillation.
    let panels = ((tau_max * fastest / std::f64::consts::PI).ceil() as usize).clamp(16, MAX_SEGMENTS / 4);
    let breakpoints: Vec<f64> = (0..=panels).map(|k| tau_max * k as f64 / panels as f64).collect();

    let f = &corr.function;
    let integrand = |tau: f64| f(tau) * (omega * tau).cos();
    let outcome = integrate_adaptive(&integrand, &breakpoints, rel_tol, 0.0);

    let tail = tail_bound(f, tau_max, rate);
    Ok(Integral { value: outcome.integral.value, error: outcome.integral.error + tail })
}

/// ∫_{τmax}^∞ |C| assuming |C(τ)| ≤ M·(τ/τmax)·e^{−r(τ−τmax)}, with M sampled near τmax.
fn tail_bound<F: Fn(f64) -> f64>(f: &F, tau_max: f64, rate: f64) -> f64 {
    const SAMPLES: usize = 256;
    let start = 0.95 * tau_max;
    let peak = (0..=SAMPLES)
        .map(|k| f(start + (tau_max - start) * k as f64 / SAMPLES as f64).abs())
        .fold(0.0, f64::max);
    peak * (1.0 / rate + 1.0 / (rate * rate * tau_max))
}

/// 2·Re∫₀^∞ C(τ)e^{iωτ} dτ at the default tolerance.
pub fn spectrum_by_quadrature<F: Fn(f64) -> f64>(omega: f64, corr: &DecayingCorrelation<F>) -> Result<Integral> {
    spectrum_by_quadrature_with_tol(omega, corr, DEFAULT_REL_TOL)
}

pub fn spectrum_by_quadrature_with_tol<F: Fn(f64) -> f64>(
    omega: f64,
    corr: &DecayingCorrelation<F>,
    rel_tol: f64,
) -> Result<Integral> {
    let one_sided = one_sided_transform(omega, corr, rel_tol)?;
    Ok(Integral { value: 2.0 * one_sided.value, error: 2.0 * one_sided.error })
}
