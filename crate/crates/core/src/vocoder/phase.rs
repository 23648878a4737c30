use num_complex::Complex;

use crate::error::{Error, Result};
use crate::num::{princarg, Real};
use crate::signal::{SpectralFrame, StftConfig};

use super::{check_ratio, PeakSet};

/// Phase-propagation flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VocoderVariant {
    /// Identity phase locking: every bin of a region gets its peak's rotation.
    Voc,
    /// Scaled phase locking: intra-region phase offsets are scaled by
    /// `beta = 1 + 2/3 * (ratio - 1)`.
    Vocf,
}

impl VocoderVariant {
    /// Factor applied to a bin's phase offset from its peak.
    pub fn locking_factor<T: Real>(self, ratio: T) -> T {
        match self {
            VocoderVariant::Voc => T::one(),
            VocoderVariant::Vocf => T::one() + (ratio - T::one()) * T::lit(2.0) / T::lit(3.0),
        }
    }
}

/// Inter-frame phase memory for one stream.
#[derive(Debug, Clone, PartialEq)]
pub struct VocoderState<T> {
    synthesis_phases: Vec<T>,
    analysis_phases: Vec<T>,
    frames: usize,
}

impl<T: Real> VocoderState<T> {
    pub fn new(num_bins: usize) -> Self {
        Self {
            synthesis_phases: vec![T::zero(); num_bins],
            analysis_phases: vec![T::zero(); num_bins],
            frames: 0,
        }
    }

    pub fn reset(&mut self) {
        self.synthesis_phases.iter_mut().for_each(|p| *p = T::zero());
        self.analysis_phases.iter_mut().for_each(|p| *p = T::zero());
        self.frames = 0;
    }

    pub fn num_bins(&self) -> usize {
        self.synthesis_phases.len()
    }

    /// Synthesis phase of each analysis bin after the last frame.
    pub fn synthesis_phases(&self) -> &[T] {
        &self.synthesis_phases
    }

    pub fn analysis_phases(&self) -> &[T] {
        &self.analysis_phases
    }

    pub fn frames_processed(&self) -> usize {
        self.frames
    }
}

/// Rotates the analysis frame so that, once shifted, each peak advances at
/// `ratio` times its instantaneous frequency. The rotation is expressed in
/// analysis-bin order; [`shift_coefficients`](super::shift_coefficients)
/// relocates the rotated bins afterwards.
///
/// A peak's rotation accumulates `(ratio - 1) * w_inst * hop` per frame,
/// which also absorbs the fractional part of the shift that whole-bin
/// translation cannot represent. The first frame after a reset passes
/// through unrotated.
pub fn propagate_phase<T: Real>(
    state: &mut VocoderState<T>,
    frame: &SpectralFrame<T>,
    peaks: &PeakSet,
    variant: VocoderVariant,
    ratio: T,
    cfg: &StftConfig,
) -> Result<SpectralFrame<T>> {
    check_ratio(ratio)?;
    let n = frame.len();
    if state.num_bins() != n || peaks.num_bins() != n || cfg.num_bins() != n {
        return Err(Error::Shape(format!(
            "state {} / peaks {} / config {} bins vs frame {n}",
            state.num_bins(),
            peaks.num_bins(),
            cfg.num_bins()
        )));
    }
    let analysis = frame.phases();
    let mut out = frame.clone();

    if state.frames == 0 {
        state.synthesis_phases.copy_from_slice(&analysis);
    } else {
        let hop = T::of_usize(cfg.analysis_hop());
        let bin_step = T::TAU() / T::of_usize(cfg.window_size());
        let beta = variant.locking_factor(ratio);
        for (peak, region) in peaks.regions() {
            let centre = bin_step * T::of_usize(peak);
            let deviation =
                princarg(analysis[peak] - state.analysis_phases[peak] - centre * hop);
            let inst_freq = centre + deviation / hop;
            let target = state.synthesis_phases[peak] + ratio * inst_freq * hop;
            let peak_rotation = princarg(target - analysis[peak]);
            for k in region {
                let rotation =
                    peak_rotation + (beta - T::one()) * princarg(analysis[k] - analysis[peak]);
                out.bins[k] = frame.bins[k] * Complex::from_polar(T::one(), rotation);
                state.synthesis_phases[k] = princarg(analysis[k] + rotation);
            }
        }
    }
    state.analysis_phases.copy_from_slice(&analysis);
    state.frames += 1;
    Ok(out)
}
