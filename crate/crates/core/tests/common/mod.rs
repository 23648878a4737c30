//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex;
use rustfft::FftPlanner;

pub const SR: u32 = 16_000;

pub fn sine(freq: f64, n: usize, amp: f64) -> Vec<f64> {
    (0..n).map(|i| amp * (2.0 * PI * freq * i as f64 / SR as f64).sin()).collect()
}

/// Sum of harmonics below 4 kHz with 1/k amplitudes, peak-normalized to 0.5.
pub fn harmonic(f0: f64, n: usize) -> Vec<f64> {
    let count = (4000.0 / f0).floor() as usize;
    let mut x: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / SR as f64;
            (1..=count).map(|k| (2.0 * PI * f0 * k as f64 * t + 0.3 * k as f64).sin() / k as f64).sum()
        })
        .collect();
    let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    x.iter_mut().for_each(|v| *v *= 0.5 / peak);
    x
}

pub fn pulse_train(f0: f64, n: usize) -> Vec<f64> {
    let period = (SR as f64 / f0).round() as usize;
    (0..n).map(|i| if i % period == 0 { 0.8 } else { 0.0 }).collect()
}

fn hann(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / (n - 1) as f64).cos()).collect()
}

/// |DTFT| of the Hann-weighted signal at `freq` Hz, evaluated directly.
fn dtft_mag(x: &[f64], w: &[f64], freq: f64) -> f64 {
    let step = 2.0 * PI * freq / SR as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for (i, (v, wi)) in x.iter().zip(w).enumerate() {
        let a = step * i as f64;
        re += v * wi * a.cos();
        im -= v * wi * a.sin();
    }
    re.hypot(im)
}

/// Frequency of the strongest spectral component: coarse peak of an 8x
/// zero-padded FFT, then golden-section search on the exact DTFT.
pub fn dominant_frequency(x: &[f64]) -> f64 {
    let w = hann(x.len());
    let len = (x.len() * 8).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = x.iter().zip(&w).map(|(v, wi)| Complex::new(v * wi, 0.0)).collect();
    buf.resize(len, Complex::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let k = (1..len / 2).max_by(|&a, &b| buf[a].norm().total_cmp(&buf[b].norm())).unwrap();
    let df = SR as f64 / len as f64;
    let (mut lo, mut hi) = ((k as f64 - 1.0) * df, (k as f64 + 1.0) * df);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..60 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if dtft_mag(x, &w, m1) < dtft_mag(x, &w, m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    0.5 * (lo + hi)
}

/// Power-weighted mean frequency of the whole signal, in Hz.
pub fn spectral_centroid(x: &[f64]) -> f64 {
    let len = x.len().next_power_of_two();
    let mut buf: Vec<Complex<f64>> = x.iter().map(|v| Complex::new(*v, 0.0)).collect();
    buf.resize(len, Complex::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let (mut num, mut den) = (0.0, 0.0);
    for (k, c) in buf.iter().enumerate().take(len / 2 + 1) {
        let p = c.norm_sqr();
        num += p * k as f64 * SR as f64 / len as f64;
        den += p;
    }
    num / den
}

/// O(n^2) DFT of a real sequence, first n/2+1 bins.
pub fn naive_dft(x: &[f64]) -> Vec<Complex<f64>> {
    let n = x.len();
    (0..=n / 2)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(i, v)| Complex::from_polar(*v, -2.0 * PI * (k * i % n) as f64 / n as f64))
                .sum()
        })
        .collect()
}

pub fn snr_db(reference: &[f64], estimate: &[f64]) -> f64 {
    let sig: f64 = reference.iter().map(|v| v * v).sum();
    let err: f64 = reference.iter().zip(estimate).map(|(a, b)| (a - b) * (a - b)).sum();
    10.0 * (sig / err).log10()
}

/// Interior slice excluding `margin` samples at each end.
pub fn interior(x: &[f64], margin: usize) -> &[f64] {
    &x[margin..x.len() - margin]
}

pub fn princarg(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI { PI } else { y }
}
