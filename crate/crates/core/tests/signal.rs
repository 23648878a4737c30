mod common;

use common::*;
use deid::signal::{istft, overlap_add, resample, stft, stft_samples, AudioBuffer, StftConfig, WindowKind};
use proptest::prelude::*;

fn buffer(x: Vec<f64>) -> AudioBuffer<f64> {
    AudioBuffer::new(x, SR).unwrap()
}

#[test]
fn bin_centred_sine_peaks_at_its_bin() {
    let cfg = StftConfig::new(1024, 256, WindowKind::Hann).unwrap();
    let f = 10.0 * SR as f64 / 1024.0;
    let frames = stft(&buffer(sine(f, 8192, 0.5)), &cfg).unwrap();
    assert_eq!(frames.len(), (8192 - 1024) / 256 + 1);
    for fr in &frames {
        let m = fr.magnitudes();
        let k = (0..m.len()).max_by(|&a, &b| m[a].total_cmp(&m[b])).unwrap();
        assert_eq!(k, 10);
        // periodic Hann: a bin-centred sine leaks into exactly one neighbour on each side
        assert!((m[10] - 0.5 * 512.0 / 2.0).abs() < 1e-9);
        assert!((m[9] - m[10] / 2.0).abs() < 1e-9 && (m[11] - m[10] / 2.0).abs() < 1e-9);
        assert!(m[13] < 1e-9);
    }
}

#[test]
fn frame_edges_are_real_and_last_bin_is_pi() {
    let cfg = StftConfig::default();
    let frames = stft(&buffer(harmonic(133.0, 4096)), &cfg).unwrap();
    for fr in &frames {
        assert_eq!(fr.bins[0].im, 0.0);
        assert_eq!(fr.bins[fr.len() - 1].im, 0.0);
        assert_eq!(fr.omega(fr.len() - 1), std::f64::consts::PI);
    }
}

#[test]
fn single_windowed_frame_inverts_to_windowed_sine() {
    let cfg = StftConfig::new(512, 128, WindowKind::Hann).unwrap();
    let x = sine(440.0, 512, 0.6);
    let frames = stft_samples(&x, &cfg);
    assert_eq!(frames.len(), 1);
    let w: Vec<f64> = cfg.window();
    let y = overlap_add(&frames, &cfg, 128).unwrap();
    // one frame: output = w * (w x) / w^2 = x wherever w is not vanishing
    let peak = w.iter().cloned().fold(0.0, f64::max);
    for i in 0..512 {
        if w[i] * w[i] > 1e-10 * peak * peak {
            assert!((y[i] - x[i]).abs() < 1e-9, "sample {i}");
        } else {
            assert_eq!(y[i], 0.0);
        }
    }
}

#[test]
fn cola_holds_for_supported_pairs() {
    for kind in [WindowKind::Hann, WindowKind::Hamming] {
        for n in [256, 512, 1024, 2048] {
            // squared tapers are not constant at 50% overlap
            assert!(StftConfig::new(n, n / 2, kind).is_err());
            for div in [4, 8] {
                let cfg = StftConfig::new(n, n / div, kind).unwrap();
                assert!(cfg.cola_deviation() <= 1e-10, "{kind} {n}/{div}");
                // independent check: sum of shifted squared windows on one period
                let w: Vec<f64> = cfg.window();
                let hop = n / div;
                let sums: Vec<f64> =
                    (0..hop).map(|i| (0..div).map(|t| w[i + t * hop] * w[i + t * hop]).sum()).collect();
                let mean = sums.iter().sum::<f64>() / hop as f64;
                assert!(sums.iter().all(|s| (s / mean - 1.0).abs() <= 1e-10));
            }
        }
    }
}

#[test]
fn parseval_against_direct_dft() {
    let cfg = StftConfig::new(256, 64, WindowKind::Hann).unwrap();
    let x = harmonic(210.0, 1024);
    let w: Vec<f64> = cfg.window();
    for fr in stft_samples(&x, &cfg) {
        let start = fr.frame_index * 64;
        let seg: Vec<f64> = (0..256).map(|i| x[start + i] * w[i]).collect();
        let time_energy: f64 = seg.iter().map(|v| v * v).sum();
        let direct = naive_dft(&seg);
        for (a, b) in fr.bins.iter().zip(&direct) {
            assert!((a - b).norm() < 1e-9);
        }
        assert!((fr.energy() - time_energy).abs() <= 1e-9 * time_energy);
    }
}

#[test]
fn resampled_sine_moves_by_ratio() {
    let x = buffer(sine(440.0, 16000, 0.5));
    let y = resample(&x, 2.0).unwrap();
    assert_eq!(y.len(), 8000);
    let f = dominant_frequency(interior(y.samples(), 200));
    assert!((f - 880.0).abs() <= 8.8, "{f}");
    let z = resample(&x, 0.5).unwrap();
    assert_eq!(z.len(), 32000);
    let f = dominant_frequency(interior(z.samples(), 200));
    assert!((f - 220.0).abs() <= 2.2, "{f}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_is_transparent(x in prop::collection::vec(-1.0f64..1.0, 3000..6000), log_n in 8u32..11) {
        let n = 1usize << log_n;
        let cfg = StftConfig::new(n, n / 4, WindowKind::Hann).unwrap();
        prop_assume!(x.len() >= 3 * n);
        let frames = stft(&buffer(x.clone()), &cfg).unwrap();
        let y = istft(&frames, &cfg, n / 4, SR).unwrap();
        let covered = (frames.len() - 1) * n / 4 + n;
        prop_assert_eq!(y.len(), covered);
        let end = covered - n;
        prop_assert!(snr_db(&x[n..end], &y.samples()[n..end]) >= 60.0);
    }

    #[test]
    fn frame_energy_matches_time_domain(x in prop::collection::vec(-1.0f64..1.0, 1024..2048)) {
        let cfg = StftConfig::new(512, 128, WindowKind::Hamming).unwrap();
        let w: Vec<f64> = cfg.window();
        for fr in stft_samples(&x, &cfg) {
            let s = fr.frame_index * 128;
            let e: f64 = (0..512).map(|i| (x[s + i] * w[i]).powi(2)).sum();
            prop_assert!((fr.energy() - e).abs() <= 1e-9 * e.max(1e-300));
        }
    }
}
