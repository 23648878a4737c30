//! Pitch-scale modification in the STFT domain: peak picking, regions of
//! influence, whole-region coefficient shift and phase propagation with
//! identity (VOC) or scaled (VOCF) phase locking.

mod peaks;
mod phase;
mod shift;

pub use peaks::{analyze_peaks, detect_peaks, detect_peaks_in, regions_of_influence, Neighborhood, PeakSet};
pub use phase::{propagate_phase, VocoderState, VocoderVariant};
pub use shift::{region_shift, shift_coefficients};

use crate::error::{Error, Result};
use crate::num::Real;
use crate::signal::{overlap_add, pad_both, unpad, stft_samples, AudioBuffer, StftConfig};

pub const MIN_PITCH_RATIO: f64 = 0.25;
pub const MAX_PITCH_RATIO: f64 = 4.0;

pub(crate) fn check_ratio<T: Real>(ratio: T) -> Result<()> {
    let r = ratio.as_f64();
    if !(MIN_PITCH_RATIO..=MAX_PITCH_RATIO).contains(&r) {
        return Err(Error::Parameter(format!(
            "pitch ratio {r} outside [{MIN_PITCH_RATIO}, {MAX_PITCH_RATIO}]"
        )));
    }
    Ok(())
}

/// Shifts pitch by `ratio` keeping duration, using four-neighbour peaks.
pub fn pitch_shift<T: Real>(
    audio: &AudioBuffer<T>,
    ratio: T,
    variant: VocoderVariant,
    cfg: &StftConfig,
) -> Result<AudioBuffer<T>> {
    pitch_shift_with(audio, ratio, variant, cfg, Neighborhood::default())
}

pub fn pitch_shift_with<T: Real>(
    audio: &AudioBuffer<T>,
    ratio: T,
    variant: VocoderVariant,
    cfg: &StftConfig,
    neighborhood: Neighborhood,
) -> Result<AudioBuffer<T>> {
    check_ratio(ratio)?;
    if audio.is_empty() {
        return Err(Error::Precondition("empty audio".into()));
    }
    let pad = cfg.window_size() / 2;
    let frames = stft_samples(&pad_both(audio.samples(), pad), cfg);
    let mut state = VocoderState::new(cfg.num_bins());
    let mut shifted = Vec::with_capacity(frames.len());
    for frame in &frames {
        let set = analyze_peaks(&frame.magnitudes(), neighborhood);
        let rotated = propagate_phase(&mut state, frame, &set, variant, ratio, cfg)?;
        shifted.push(shift_coefficients(&rotated, &set, ratio)?);
    }
    let y = overlap_add(&shifted, cfg, cfg.analysis_hop())?;
    AudioBuffer::from_clipped(unpad(y, pad, audio.len()), audio.sample_rate())
}
