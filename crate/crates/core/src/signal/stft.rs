use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::num::Real;

use super::{AudioBuffer, WindowKind};

/// Relative tolerance on the squared-window overlap-add sum.
const COLA_TOLERANCE: f64 = 1e-10;

/// Validated analysis parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StftConfig {
    window_size: usize,
    analysis_hop: usize,
    window_kind: WindowKind,
}

impl Default for StftConfig {
    /// 1024-sample Hann window, hop 256 (64 ms / 16 ms at 16 kHz).
    fn default() -> Self {
        Self { window_size: 1024, analysis_hop: 256, window_kind: WindowKind::Hann }
    }
}

impl StftConfig {
    pub fn new(window_size: usize, analysis_hop: usize, window_kind: WindowKind) -> Result<Self> {
        if window_size < 4 || !window_size.is_power_of_two() {
            return Err(Error::Config(format!(
                "window size {window_size} is not a power of two >= 4"
            )));
        }
        if analysis_hop == 0 || analysis_hop > window_size {
            return Err(Error::Config(format!(
                "hop {analysis_hop} not in 1..={window_size}"
            )));
        }
        let cfg = Self { window_size, analysis_hop, window_kind };
        let dev = cfg.cola_deviation();
        if dev > COLA_TOLERANCE {
            return Err(Error::Config(format!(
                "{window_kind} window {window_size} / hop {analysis_hop} violates squared \
                 overlap-add (relative deviation {dev:.3e})"
            )));
        }
        Ok(cfg)
    }

    pub fn window_size(&self) -> usize {
        self.window_size
    }

    pub fn analysis_hop(&self) -> usize {
        self.analysis_hop
    }

    pub fn window_kind(&self) -> WindowKind {
        self.window_kind
    }

    pub fn num_bins(&self) -> usize {
        self.window_size / 2 + 1
    }

    pub fn window<T: Real>(&self) -> Vec<T> {
        self.window_kind.generate(self.window_size)
    }

    /// Max relative spread of `sum_t w^2(n - t*hop)` over one hop period of
    /// the steady-state interior.
    pub fn cola_deviation(&self) -> f64 {
        let w: Vec<f64> = self.window();
        let sums: Vec<f64> = (0..self.analysis_hop)
            .map(|n| w.iter().skip(n).step_by(self.analysis_hop).map(|x| x * x).sum())
            .collect();
        let max = sums.iter().cloned().fold(f64::MIN, f64::max);
        let min = sums.iter().cloned().fold(f64::MAX, f64::min);
        if max <= 0.0 {
            return f64::INFINITY;
        }
        (max - min) / max
    }
}

/// One short-time spectrum: bins `0..=N/2` of a real frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFrame<T> {
    pub bins: Vec<Complex<T>>,
    pub frame_index: usize,
}

impl<T: Real> SpectralFrame<T> {
    pub fn new(bins: Vec<Complex<T>>, frame_index: usize) -> Self {
        Self { bins, frame_index }
    }

    pub fn zeros(num_bins: usize, frame_index: usize) -> Self {
        Self { bins: vec![Complex::new(T::zero(), T::zero()); num_bins], frame_index }
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Size of the real frame this spectrum came from.
    pub fn window_size(&self) -> usize {
        2 * (self.bins.len().max(1) - 1)
    }

    /// Normalized frequency of bin `k`: `pi * k / (N/2)`; the last bin is exactly `pi`.
    pub fn omega(&self, k: usize) -> T {
        let half = self.bins.len() - 1;
        if k == half {
            T::PI()
        } else {
            T::PI() * T::of_usize(k) / T::of_usize(half)
        }
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.bins.iter().map(|c| c.norm()).collect()
    }

    pub fn phases(&self) -> Vec<T> {
        self.bins.iter().map(|c| c.arg()).collect()
    }

    /// Time-domain energy of the (windowed) frame, via Parseval over the
    /// one-sided spectrum.
    pub fn energy(&self) -> T {
        let last = self.bins.len() - 1;
        let interior: T = self.bins[1..last].iter().map(|c| c.norm_sqr()).sum();
        let edges = self.bins[0].norm_sqr() + self.bins[last].norm_sqr();
        (edges + T::lit(2.0) * interior) / T::of_usize(self.window_size())
    }

    /// Zeroes the imaginary parts of the DC and Nyquist bins.
    pub fn make_edges_real(&mut self) {
        let last = self.bins.len() - 1;
        self.bins[0].im = T::zero();
        self.bins[last].im = T::zero();
    }
}

/// Frame `t` covers samples `[t*hop, t*hop + N)`; input shorter than one
/// window is zero-padded to a single frame.
pub fn stft<T: Real>(audio: &AudioBuffer<T>, cfg: &StftConfig) -> Result<Vec<SpectralFrame<T>>> {
    Ok(stft_samples(audio.samples(), cfg))
}

pub fn stft_samples<T: Real>(samples: &[T], cfg: &StftConfig) -> Vec<SpectralFrame<T>> {
    let n = cfg.window_size;
    let hop = cfg.analysis_hop;
    let window: Vec<T> = cfg.window();
    let fft = FftPlanner::new().plan_fft_forward(n);
    let mut scratch = vec![Complex::default(); fft.get_inplace_scratch_len()];

    let padded;
    let samples = if samples.len() < n {
        padded = {
            let mut v = samples.to_vec();
            v.resize(n, T::zero());
            v
        };
        &padded[..]
    } else {
        samples
    };
    let count = (samples.len() - n) / hop + 1;
    let mut buf = vec![Complex::default(); n];
    (0..count)
        .map(|t| {
            let seg = &samples[t * hop..t * hop + n];
            for ((b, &x), &w) in buf.iter_mut().zip(seg).zip(&window) {
                *b = Complex::new(x * w, T::zero());
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            let mut frame = SpectralFrame::new(buf[..=n / 2].to_vec(), t);
            frame.make_edges_real();
            frame
        })
        .collect()
}

/// Weighted overlap-add of frames at `synthesis_hop`, normalized pointwise
/// by the accumulated squared synthesis window. Samples with a vanishing
/// window sum are left at zero.
pub fn overlap_add<T: Real>(
    frames: &[SpectralFrame<T>],
    cfg: &StftConfig,
    synthesis_hop: usize,
) -> Result<Vec<T>> {
    if synthesis_hop == 0 {
        return Err(Error::Parameter("synthesis hop must be positive".into()));
    }
    let n = cfg.window_size;
    let bins = cfg.num_bins();
    if let Some(bad) = frames.iter().find(|f| f.len() != bins) {
        return Err(Error::Shape(format!(
            "frame {} has {} bins, expected {bins}",
            bad.frame_index,
            bad.len()
        )));
    }
    if frames.is_empty() {
        return Ok(Vec::new());
    }
    let window: Vec<T> = cfg.window();
    let ifft = FftPlanner::new().plan_fft_inverse(n);
    let mut scratch = vec![Complex::default(); ifft.get_inplace_scratch_len()];
    let len = (frames.len() - 1) * synthesis_hop + n;
    let mut out = vec![T::zero(); len];
    let mut norm = vec![T::zero(); len];
    let mut buf = vec![Complex::default(); n];
    let scale = T::one() / T::of_usize(n);

    for (t, frame) in frames.iter().enumerate() {
        let half = n / 2;
        buf[0] = Complex::new(frame.bins[0].re, T::zero());
        buf[half] = Complex::new(frame.bins[half].re, T::zero());
        for k in 1..half {
            buf[k] = frame.bins[k];
            buf[n - k] = frame.bins[k].conj();
        }
        ifft.process_with_scratch(&mut buf, &mut scratch);
        let start = t * synthesis_hop;
        for i in 0..n {
            let w = window[i];
            out[start + i] = out[start + i] + buf[i].re * scale * w;
            norm[start + i] = norm[start + i] + w * w;
        }
    }
    let peak = norm.iter().cloned().fold(T::zero(), T::max);
    let floor = peak * T::lit(1e-10);
    for (y, &z) in out.iter_mut().zip(&norm) {
        *y = if z > floor { *y / z } else { T::zero() };
    }
    Ok(out)
}

/// Inverse STFT; out-of-range samples are hard-clipped and counted on the
/// returned buffer.
pub fn istft<T: Real>(
    frames: &[SpectralFrame<T>],
    cfg: &StftConfig,
    synthesis_hop: usize,
    sample_rate: u32,
) -> Result<AudioBuffer<T>> {
    AudioBuffer::from_clipped(overlap_add(frames, cfg, synthesis_hop)?, sample_rate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(StftConfig::new(1000, 250, WindowKind::Hann).is_err());
        assert!(StftConfig::new(1024, 0, WindowKind::Hann).is_err());
        assert!(StftConfig::new(1024, 2048, WindowKind::Hann).is_err());
        // squared Hann needs at least 3x overlap
        assert!(matches!(StftConfig::new(1024, 512, WindowKind::Hann), Err(Error::Config(_))));
        for hop in [256, 128, 64] {
            assert!(StftConfig::new(1024, hop, WindowKind::Hann).is_ok());
            assert!(StftConfig::new(1024, hop, WindowKind::Hamming).is_ok());
        }
        let d = StftConfig::default();
        assert_eq!((d.window_size(), d.analysis_hop(), d.num_bins()), (1024, 256, 513));
    }

    #[test]
    fn frame_count() {
        let cfg = StftConfig::new(512, 128, WindowKind::Hann).unwrap();
        let cfg256 = StftConfig { analysis_hop: 256, ..cfg };
        let x = AudioBuffer::new(vec![0.0f64; 1024], 16000).unwrap();
        assert_eq!(stft(&x, &cfg256).unwrap().len(), 3);
        assert_eq!(stft(&x, &cfg).unwrap().len(), 5);
        let short = AudioBuffer::new(vec![0.1f64; 100], 16000).unwrap();
        assert_eq!(stft(&short, &cfg).unwrap().len(), 1);
    }

    #[test]
    fn dc_bin_equals_window_sum() {
        let cfg = StftConfig::default();
        let a = 0.3;
        let x = AudioBuffer::new(vec![a; 4096], 16000).unwrap();
        let wsum: f64 = cfg.window::<f64>().iter().sum();
        for f in stft(&x, &cfg).unwrap() {
            assert!((f.bins[0].norm() - a * wsum).abs() < 1e-9);
            assert_eq!(f.bins[0].im, 0.0);
            assert_eq!(f.bins[512].im, 0.0);
        }
    }

    #[test]
    fn last_bin_is_exactly_pi() {
        let f = SpectralFrame::<f64>::zeros(513, 0);
        assert_eq!(f.omega(512), std::f64::consts::PI);
        assert_eq!(f.omega(0), 0.0);
        assert_eq!(f.window_size(), 1024);
    }

    #[test]
    fn zero_frames_give_silence() {
        let cfg = StftConfig::default();
        let frames = vec![SpectralFrame::<f64>::zeros(513, 0); 6];
        let y = istft(&frames, &cfg, 256, 16000).unwrap();
        assert_eq!(y.len(), 5 * 256 + 1024);
        assert!(y.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn shape_errors() {
        let cfg = StftConfig::default();
        let frames = vec![SpectralFrame::<f64>::zeros(513, 0), SpectralFrame::zeros(257, 1)];
        assert!(matches!(istft(&frames, &cfg, 256, 16000), Err(Error::Shape(_))));
        assert!(matches!(istft(&frames[..1], &cfg, 0, 16000), Err(Error::Parameter(_))));
    }
}
