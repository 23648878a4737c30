use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::num::Real;
use crate::signal::AudioBuffer;

/// Frame-wise normalized-autocorrelation pitch tracker settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PitchConfig {
    pub frame_secs: f64,
    pub hop_secs: f64,
    pub min_hz: f64,
    pub max_hz: f64,
    /// A frame is voiced when its best normalized autocorrelation reaches this.
    pub voicing_threshold: f64,
    /// Below this voiced fraction the utterance has no pitch.
    pub min_voiced_fraction: f64,
}

impl Default for PitchConfig {
    fn default() -> Self {
        Self {
            frame_secs: 0.040,
            hop_secs: 0.010,
            min_hz: 50.0,
            max_hz: 500.0,
            voicing_threshold: 0.5,
            min_voiced_fraction: 0.1,
        }
    }
}

/// Among local maxima, the shortest lag within this fraction of the best
/// one wins; suppresses picking a multiple of the true period.
const OCTAVE_GUARD: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct PitchEstimate<T> {
    /// Median of voiced frames, absent when too little is voiced.
    pub f0: Option<T>,
    pub voiced_fraction: T,
    pub track: Vec<Option<T>>,
}

pub fn estimate_pitch<T: Real>(audio: &AudioBuffer<T>) -> Result<PitchEstimate<T>> {
    estimate_pitch_with(audio, &PitchConfig::default())
}

pub fn estimate_pitch_with<T: Real>(audio: &AudioBuffer<T>, cfg: &PitchConfig) -> Result<PitchEstimate<T>> {
    if audio.is_empty() {
        return Err(Error::Precondition("cannot estimate pitch of empty audio".into()));
    }
    let sr = f64::from(audio.sample_rate());
    let frame_len = ((cfg.frame_secs * sr).round() as usize).max(2);
    let hop = ((cfg.hop_secs * sr).round() as usize).max(1);
    let min_lag = ((sr / cfg.max_hz).floor() as usize).max(1);
    let max_lag = ((sr / cfg.min_hz).ceil() as usize).min(frame_len - 1);
    if min_lag + 2 > max_lag {
        return Err(Error::Parameter(format!(
            "lag band {min_lag}..{max_lag} too narrow for frame of {frame_len}"
        )));
    }

    let mut x: Vec<f64> = audio.samples().iter().map(|s| s.as_f64()).collect();
    if x.len() < frame_len {
        x.resize(frame_len, 0.0);
    }
    let count = (x.len() - frame_len) / hop + 1;
    let mut tracker = Autocorrelator::new(frame_len, max_lag);
    let track: Vec<Option<f64>> = (0..count)
        .map(|t| {
            let r = tracker.normalized(&x[t * hop..t * hop + frame_len]);
            pick_period(&r, min_lag, max_lag, cfg.voicing_threshold).map(|lag| sr / lag)
        })
        .collect();

    let mut voiced: Vec<f64> = track.iter().flatten().copied().collect();
    let voiced_fraction = voiced.len() as f64 / track.len() as f64;
    let f0 = if voiced_fraction < cfg.min_voiced_fraction || voiced.is_empty() {
        None
    } else {
        voiced.sort_by(f64::total_cmp);
        let mid = voiced.len() / 2;
        Some(if voiced.len() % 2 == 1 { voiced[mid] } else { 0.5 * (voiced[mid - 1] + voiced[mid]) })
    };
    Ok(PitchEstimate {
        f0: f0.map(T::lit),
        voiced_fraction: T::lit(voiced_fraction),
        track: track.into_iter().map(|f| f.map(T::lit)).collect(),
    })
}

/// `r(l) = sum x[n] x[n+l] / sqrt(E_head(l) E_tail(l))`, numerator via FFT.
struct Autocorrelator {
    frame_len: usize,
    max_lag: usize,
    fft: std::sync::Arc<dyn rustfft::Fft<f64>>,
    ifft: std::sync::Arc<dyn rustfft::Fft<f64>>,
    buf: Vec<Complex<f64>>,
    prefix: Vec<f64>,
}

impl Autocorrelator {
    fn new(frame_len: usize, max_lag: usize) -> Self {
        let size = (frame_len + max_lag).next_power_of_two();
        let mut planner = FftPlanner::new();
        Self {
            frame_len,
            max_lag,
            fft: planner.plan_fft_forward(size),
            ifft: planner.plan_fft_inverse(size),
            buf: vec![Complex::default(); size],
            prefix: vec![0.0; frame_len + 1],
        }
    }

    fn normalized(&mut self, frame: &[f64]) -> Vec<f64> {
        let n = self.frame_len;
        let mean = frame.iter().sum::<f64>() / n as f64;
        self.buf.iter_mut().for_each(|b| *b = Complex::default());
        for (i, &s) in frame.iter().enumerate() {
            let v = s - mean;
            self.buf[i].re = v;
            self.prefix[i + 1] = self.prefix[i] + v * v;
        }
        self.fft.process(&mut self.buf);
        self.buf.iter_mut().for_each(|b| *b = Complex::new(b.norm_sqr(), 0.0));
        self.ifft.process(&mut self.buf);
        let scale = 1.0 / self.buf.len() as f64;
        let total = self.prefix[n];
        (0..=self.max_lag)
            .map(|lag| {
                let head = self.prefix[n - lag];
                let tail = total - self.prefix[lag];
                let denom = (head * tail).sqrt();
                if denom <= total * 1e-12 || denom == 0.0 {
                    0.0
                } else {
                    self.buf[lag].re * scale / denom
                }
            })
            .collect()
    }
}

/// Period in samples (sub-sample, parabolic) or `None` when unvoiced.
fn pick_period(r: &[f64], min_lag: usize, max_lag: usize, threshold: f64) -> Option<f64> {
    let peaks: Vec<usize> = (min_lag.max(1)..max_lag)
        .filter(|&l| r[l] >= r[l - 1] && r[l] > r[l + 1])
        .collect();
    let best = peaks.iter().map(|&l| r[l]).fold(f64::NEG_INFINITY, f64::max);
    if best.is_nan() || best < threshold {
        return None;
    }
    let lag = *peaks.iter().find(|&&l| r[l] >= OCTAVE_GUARD * best)?;
    let (a, b, c) = (r[lag - 1], r[lag], r[lag + 1]);
    let den = a - 2.0 * b + c;
    let offset = if den < 0.0 { (0.5 * (a - c) / den).clamp(-0.5, 0.5) } else { 0.0 };
    Some(lag as f64 + offset)
}
