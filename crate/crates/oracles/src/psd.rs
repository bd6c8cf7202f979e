//! Welch power spectral density with a Hann window and half-segment overlap.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Two-sided PSD in angular frequency, normalised so that ∫S dω/2π is the variance.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdEstimate {
    /// Bin centres (rad/s), from 0 up to the Nyquist frequency.
    pub freq_bins: Vec<f64>,
    /// m²/Hz
    pub mean_psd: Vec<f64>,
    /// Standard error of `mean_psd`.
    pub stderr_psd: Vec<f64>,
    pub n_segments: usize,
}

impl PsdEstimate {
    /// Index of the bin nearest to ω.
    pub fn nearest_bin(&self, omega: f64) -> usize {
        let spacing = self.freq_bins.get(1).copied().unwrap_or(1.0);
        ((omega / spacing).round() as usize).min(self.freq_bins.len() - 1)
    }
}

/// Averaged periodogram of one record, reused across records of the same length.
pub struct Welch {
    segment: usize,
    window: Vec<f64>,
    window_power: f64,
    fft: Arc<dyn Fft<f64>>,
}

impl Welch {
    pub fn new(segment: usize) -> Self {
        let window: Vec<f64> = (0..segment)
            .map(|n| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * n as f64 / segment as f64).cos()))
            .collect();
        let window_power = window.iter().map(|w| w * w).sum();
        let fft = FftPlanner::new().plan_fft_forward(segment);
        Self { segment, window, window_power, fft }
    }

    pub fn segment_len(&self) -> usize {
        self.segment
    }

    pub fn bins(&self) -> usize {
        self.segment / 2 + 1
    }

    pub fn frequencies(&self, dt: f64) -> Vec<f64> {
        let spacing = 2.0 * std::f64::consts::PI / (self.segment as f64 * dt);
        (0..self.bins()).map(|k| k as f64 * spacing).collect()
    }

    /// Number of half-overlapping segments that fit in `len` samples.
    pub fn segments_in(&self, len: usize) -> usize {
        if len < self.segment {
            0
        } else {
            (len - self.segment) / (self.segment / 2) + 1
        }
    }

    /// Segment-averaged PSD of `samples` taken every `dt` seconds.
    pub fn average(&self, samples: &[f64], dt: f64) -> Vec<f64> {
        let count = self.segments_in(samples.len());
        let mut acc = vec![0.0; self.bins()];
        let mut buffer = vec![Complex64::new(0.0, 0.0); self.segment];
        let hop = self.segment / 2;
        for s in 0..count {
            let chunk = &samples[s * hop..s * hop + self.segment];
            for ((b, &x), &w) in buffer.iter_mut().zip(chunk).zip(&self.window) {
                *b = Complex64::new(x * w, 0.0);
            }
            self.fft.process(&mut buffer);
            for (a, b) in acc.iter_mut().zip(&buffer) {
                *a += b.norm_sqr();
            }
        }
        let norm = dt / (self.window_power * count.max(1) as f64);
        acc.iter_mut().for_each(|a| *a *= norm);
        acc
    }
}
