mod common;

use std::f64::consts::PI;

use common::*;
use deid::gender::Gender;
use deid::harness::synthesize_vowel;
use deid::signal::{AudioBuffer, SpectralFrame, StftConfig};
use deid::vtln::{grid, vtln_transform, warp_inverse, warp_spectrum, warp_value, WarpKind, WarpSpec};
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MONO: usize = 1024;

fn spec(kind: WarpKind, alpha: f64) -> WarpSpec<f64> {
    WarpSpec::new(kind, alpha).unwrap()
}

fn alpha_range(kind: WarpKind) -> std::ops::Range<f64> {
    match kind {
        WarpKind::Symmetric | WarpKind::Power => 0.2..3.0,
        WarpKind::Asymmetric => 0.2..1.14,
        WarpKind::Quadratic => -3.0..3.0,
        WarpKind::Bilinear => -0.9..0.9,
    }
}

fn any_spec() -> impl Strategy<Value = WarpSpec<f64>> {
    prop::sample::select(WarpKind::ALL.to_vec())
        .prop_flat_map(|k| alpha_range(k).prop_map(move |a| spec(k, a)))
}

/// Oracle: all-pass phase evaluated from its complex value.
fn allpass_phase(alpha: f64, w: f64) -> f64 {
    let z = Complex::from_polar(1.0, w);
    let h = (z - alpha) / (Complex::new(1.0, 0.0) - alpha * z);
    let p = h.arg();
    if p < 0.0 { p + 2.0 * PI } else { p }
}

#[test]
fn bilinear_matches_allpass_oracle() {
    for a in [-0.6, -0.1, 0.05, 0.4] {
        for w in grid::<f64>(64).skip(1).take(62) {
            assert!((warp_value(&spec(WarpKind::Bilinear, a), w).unwrap() - allpass_phase(a, w)).abs() < 1e-12);
        }
    }
}

#[test]
fn inverse_examples() {
    let b = spec(WarpKind::Bilinear, 0.3);
    let neg = spec(WarpKind::Bilinear, -0.3);
    let p2 = spec(WarpKind::Power, 2.0);
    let p05 = spec(WarpKind::Power, 0.5);
    for w in grid::<f64>(MONO) {
        assert!((warp_inverse(&b, w).unwrap() - warp_value(&neg, w).unwrap()).abs() <= 1e-12);
        assert!((warp_inverse(&p2, w).unwrap() - warp_value(&p05, w).unwrap()).abs() <= 1e-12);
    }
    let q = spec(WarpKind::Quadratic, 0.5);
    let g_inv = warp_inverse(&q, 1.0).unwrap();
    assert!((warp_value(&q, g_inv).unwrap() - 1.0).abs() <= 1e-9);
}

#[test]
fn out_of_range_frequency_is_refused() {
    let s = spec(WarpKind::Power, 1.4);
    assert!(warp_value(&s, -0.1).is_err());
    assert!(warp_value(&s, PI + 1e-6).is_err());
    assert!(warp_inverse(&s, 4.0).is_err());
}

#[test]
fn non_monotone_quadratic_is_refused() {
    assert!(WarpSpec::new(WarpKind::Quadratic, 3.5).is_err());
    assert!(WarpSpec::new(WarpKind::Quadratic, -3.5).is_err());
    assert!(WarpSpec::new(WarpKind::Asymmetric, 1.3).is_err());
}

fn peak_frame(bin: usize) -> SpectralFrame<f64> {
    let mut f = SpectralFrame::zeros(513, 0);
    f.bins[bin] = Complex::new(1.0, 0.0);
    f.bins[bin - 1] = Complex::new(-0.5, 0.0);
    f.bins[bin + 1] = Complex::new(-0.5, 0.0);
    f
}

#[test]
fn single_peak_relocates_to_warped_bin() {
    for (kind, a) in [(WarpKind::Bilinear, -0.1), (WarpKind::Bilinear, 0.2), (WarpKind::Quadratic, 0.9)] {
        let s = spec(kind, a);
        let out = warp_spectrum(&peak_frame(100), &s).unwrap();
        let m = out.magnitudes();
        let k = (0..m.len()).max_by(|&x, &y| m[x].total_cmp(&m[y])).unwrap();
        let expected = (512.0 * warp_value(&s, PI * 100.0 / 512.0).unwrap() / PI).round();
        assert!((k as f64 - expected).abs() <= 1.0, "{kind} {a}: {k} vs {expected}");
    }
}

#[test]
fn identity_warp_is_transparent() {
    let cfg = StftConfig::default();
    let x = harmonic(180.0, 16000);
    let f = peak_frame(40);
    let w = warp_spectrum(&f, &WarpSpec::identity()).unwrap();
    for (a, b) in f.bins.iter().zip(&w.bins) {
        assert!((a - b).norm() <= 1e-9);
    }
    let y = vtln_transform(&AudioBuffer::new(x.clone(), SR).unwrap(), &WarpSpec::identity(), &cfg).unwrap();
    assert!(y.len().abs_diff(x.len()) <= cfg.analysis_hop());
    assert!(snr_db(interior(&x, 1024), interior(y.samples(), 1024)) >= 40.0);
}

fn vowel(gender: Gender, f0: f64) -> AudioBuffer<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    AudioBuffer::new(synthesize_vowel(&mut rng, gender, f0, SR, 1.0), SR).unwrap()
}

#[test]
fn female_quadratic_schedule_raises_centroid() {
    let x = vowel(Gender::Female, 210.0);
    let y = vtln_transform(&x, &spec(WarpKind::Quadratic, 0.057 * 16.0), &StftConfig::default()).unwrap();
    assert!(spectral_centroid(y.samples()) > spectral_centroid(x.samples()));
}

#[test]
fn male_bilinear_schedule_lowers_centroid() {
    let x = vowel(Gender::Male, 120.0);
    let y = vtln_transform(&x, &spec(WarpKind::Bilinear, -0.0043 * 11.0), &StftConfig::default()).unwrap();
    assert!(spectral_centroid(y.samples()) < spectral_centroid(x.samples()));
}

#[test]
fn power_below_one_lies_above_identity() {
    let s = spec(WarpKind::Power, 0.6);
    for w in grid::<f64>(MONO).skip(1).take(MONO - 2) {
        assert!(warp_value(&s, w).unwrap() > w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn warps_are_monotone_with_fixed_ends(s in any_spec()) {
        let values: Vec<f64> = grid::<f64>(MONO).map(|w| warp_value(&s, w).unwrap()).collect();
        prop_assert!(values.windows(2).all(|p| p[1] > p[0]));
        prop_assert!(values.iter().all(|v| (0.0..=PI).contains(v)));
        prop_assert_eq!(values[0], 0.0);
        prop_assert!((values[MONO - 1] - PI).abs() <= 1e-12);
    }

    #[test]
    fn inverse_is_consistent(s in any_spec()) {
        for w in grid::<f64>(MONO) {
            let back = warp_value(&s, warp_inverse(&s, w).unwrap()).unwrap();
            prop_assert!((back - w).abs() <= 1e-9, "{:?} at {}", s, w);
        }
    }

    #[test]
    fn bilinear_group_property(a in -0.95f64..0.95) {
        let (f, b) = (spec(WarpKind::Bilinear, a), spec(WarpKind::Bilinear, -a));
        for w in grid::<f64>(MONO) {
            prop_assert!((warp_value(&b, warp_value(&f, w).unwrap()).unwrap() - w).abs() <= 1e-9);
        }
    }

    #[test]
    fn piecewise_kinds_are_continuous_at_the_knot(a in 0.2f64..3.0, asym in any::<bool>()) {
        let kind = if asym { WarpKind::Asymmetric } else { WarpKind::Symmetric };
        let a = if asym { a.min(1.14) } else { a };
        let s = spec(kind, a);
        let w0 = s.knot().unwrap();
        let left = a * w0;
        let at = warp_value(&s, w0).unwrap();
        prop_assert_eq!(at, left);
        let eps = 1e-9;
        let right = warp_value(&s, w0 + eps).unwrap();
        prop_assert!((right - at).abs() <= 10.0 * eps);
    }

    #[test]
    fn flat_spectrum_stays_flat(s in any_spec()) {
        let f = SpectralFrame::new(vec![Complex::new(0.7, 0.0); 513], 0);
        let out = warp_spectrum(&f, &s).unwrap();
        prop_assert!(out.magnitudes().iter().all(|m| (m - 0.7).abs() <= 1e-6));
    }
}
