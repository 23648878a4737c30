use crate::error::{Error, Result};
use crate::num::Real;
use crate::signal::AudioBuffer;

use super::{estimate_pitch_with, Gender, PitchConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenderConfig {
    /// Utterances with median f0 below this are Male.
    pub threshold_hz: f64,
    /// Distance from the threshold (Hz) per logistic unit of confidence.
    pub confidence_scale_hz: f64,
    pub pitch: PitchConfig,
}

impl Default for GenderConfig {
    fn default() -> Self {
        Self { threshold_hz: 165.0, confidence_scale_hz: 20.0, pitch: PitchConfig::default() }
    }
}

impl GenderConfig {
    /// Thresholds an f0 value; exactly at the threshold is Female with confidence 0.5.
    pub fn label_for<T: Real>(&self, f0: T) -> GenderLabel<T> {
        let f = f0.as_f64();
        let gender = if f < self.threshold_hz { Gender::Male } else { Gender::Female };
        let confidence = logistic((f - self.threshold_hz).abs() / self.confidence_scale_hz);
        GenderLabel { gender, confidence: T::lit(confidence), f0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenderLabel<T> {
    pub gender: Gender,
    pub confidence: T,
    /// The median f0 the decision was based on.
    pub f0: T,
}

pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

pub fn classify_gender<T: Real>(audio: &AudioBuffer<T>) -> Result<GenderLabel<T>> {
    classify_with(audio, &GenderConfig::default())
}

/// Fails with [`Error::Undecidable`] when the utterance has no pitch.
pub fn classify_with<T: Real>(audio: &AudioBuffer<T>, cfg: &GenderConfig) -> Result<GenderLabel<T>> {
    let estimate = estimate_pitch_with(audio, &cfg.pitch)?;
    let f0 = estimate.f0.ok_or_else(|| {
        Error::Undecidable(format!(
            "only {:.1}% of frames voiced",
            100.0 * estimate.voiced_fraction.as_f64()
        ))
    })?;
    Ok(cfg.label_for(f0))
}
