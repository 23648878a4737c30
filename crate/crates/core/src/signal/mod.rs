//! Audio buffers, WAV I/O and the STFT analysis/synthesis backbone.

mod audio;
mod resample;
mod stft;
mod wav;
mod window;

pub use audio::AudioBuffer;
pub use resample::{resample, MAX_RESAMPLE_RATIO, MIN_RESAMPLE_RATIO};
pub use stft::{istft, overlap_add, stft, stft_samples, SpectralFrame, StftConfig};
pub use wav::{decode_wav, encode_wav, load_wav, save_wav};
pub use window::WindowKind;

use crate::num::Real;

/// Signal-to-noise ratio in dB of `estimate` against `reference`.
///
/// Returns `f64::INFINITY` for an exact match.
pub fn snr_db<T: Real>(reference: &[T], estimate: &[T]) -> f64 {
    let (mut signal, mut noise) = (0.0f64, 0.0f64);
    for (&r, &e) in reference.iter().zip(estimate) {
        let r = r.as_f64();
        let d = r - e.as_f64();
        signal += r * r;
        noise += d * d;
    }
    if noise == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (signal / noise).log10()
    }
}

/// Zero-pads both ends of `samples` by `pad` samples.
pub(crate) fn pad_both<T: Real>(samples: &[T], pad: usize) -> Vec<T> {
    let mut out = vec![T::zero(); samples.len() + 2 * pad];
    out[pad..pad + samples.len()].copy_from_slice(samples);
    out
}

/// Takes `len` samples starting at `pad`, zero-extending a short tail.
pub(crate) fn unpad<T: Real>(mut samples: Vec<T>, pad: usize, len: usize) -> Vec<T> {
    samples.resize(samples.len().max(pad + len), T::zero());
    samples.truncate(pad + len);
    samples.drain(..pad);
    samples
}
