use gupnoise_oracles::psd::Welch;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

#[test]
fn white_noise_has_flat_spectrum() {
    let (sigma, dt) = (2.0, 1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let normal = Normal::new(0.0, sigma).unwrap();
    let samples: Vec<f64> = (0..1 << 18).map(|_| normal.sample(&mut rng)).collect();
    let welch = Welch::new(256);
    assert_eq!(welch.segments_in(samples.len()), (samples.len() - 256) / 128 + 1);
    let psd = welch.average(&samples, dt);
    let level = sigma * sigma * dt;
    // Skip DC and Nyquist, where a real signal's periodogram has twice the spread.
    let interior = &psd[1..psd.len() - 1];
    let mean = interior.iter().sum::<f64>() / interior.len() as f64;
    assert!((mean / level - 1.0).abs() < 0.01, "mean {mean:e} vs {level:e}");
    assert!(interior.iter().all(|p| (p / level - 1.0).abs() < 0.25));
}

#[test]
fn sinusoid_lands_in_its_bin() {
    let (dt, segment) = (1e-3, 512);
    let welch = Welch::new(segment);
    let freqs = welch.frequencies(dt);
    assert_eq!(freqs.len(), welch.bins());
    let target = freqs[37];
    let samples: Vec<f64> = (0..segment * 8).map(|k| (target * k as f64 * dt).cos()).collect();
    let psd = welch.average(&samples, dt);
    let peak = psd.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert_eq!(peak, 37);
}

#[test]
fn short_records_have_no_segments() {
    let welch = Welch::new(64);
    assert_eq!(welch.segments_in(63), 0);
    assert_eq!(welch.segments_in(64), 1);
    assert_eq!(welch.segments_in(96), 2);
}
