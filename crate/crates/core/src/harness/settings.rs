//! Experiment settings and the plain-text `key = value` config file.

use std::path::Path;

use crate::error::{Error, Result};
use crate::gender::GenderConfig;
use crate::signal::{StftConfig, WindowKind};
use crate::vocoder::Neighborhood;

use super::schedule::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub stft: StftConfig,
    pub neighborhood: Neighborhood,
    pub schedule: Schedule,
    pub gender: GenderConfig,
}

/// Keys accepted by [`Settings::set`].
pub const KEYS: &[&str] = &[
    "window_size",
    "hop",
    "window",
    "neighborhood",
    "semitones_per_degree",
    "bilinear_female_step",
    "bilinear_male_step",
    "quadratic_female_step",
    "quadratic_male_step",
    "gender_threshold_hz",
    "confidence_scale_hz",
    "voicing_threshold",
];

impl Settings {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let mut s = Self::default();
        s.apply_config(&std::fs::read_to_string(path)?)?;
        Ok(s)
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("config line {}: expected key = value", n + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || -> Result<f64> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parameter(format!("{key}: '{value}' is not a number")))
        };
        let int = || -> Result<usize> {
            value.parse::<usize>().map_err(|_| Error::Parameter(format!("{key}: '{value}' is not an integer")))
        };
        match key {
            "window_size" => {
                self.stft = StftConfig::new(int()?, self.stft.analysis_hop(), self.stft.window_kind())?
            }
            "hop" => self.stft = StftConfig::new(self.stft.window_size(), int()?, self.stft.window_kind())?,
            "window" => {
                self.stft = StftConfig::new(self.stft.window_size(), self.stft.analysis_hop(), value.parse::<WindowKind>()?)?
            }
            "neighborhood" => self.neighborhood = Neighborhood::try_from(int()?)?,
            "semitones_per_degree" => self.schedule.semitones_per_degree = num()?,
            "bilinear_female_step" => self.schedule.bilinear_female_step = num()?,
            "bilinear_male_step" => self.schedule.bilinear_male_step = num()?,
            "quadratic_female_step" => self.schedule.quadratic_female_step = num()?,
            "quadratic_male_step" => self.schedule.quadratic_male_step = num()?,
            "gender_threshold_hz" => self.gender.threshold_hz = num()?,
            "confidence_scale_hz" => self.gender.confidence_scale_hz = num()?,
            "voicing_threshold" => self.gender.pitch.voicing_threshold = num()?,
            other => return Err(Error::Parameter(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config_text() {
        let mut s = Settings::default();
        s.apply_config(
            "# experiment\nhop = 128\n semitones_per_degree=1 # one semitone\n\nneighborhood = 2\nwindow = hamming\n",
        )
        .unwrap();
        assert_eq!(s.stft.analysis_hop(), 128);
        assert_eq!(s.stft.window_kind(), WindowKind::Hamming);
        assert_eq!(s.schedule.semitones_per_degree, 1.0);
        assert_eq!(s.neighborhood, Neighborhood::Two);
    }

    #[test]
    fn rejects_bad_lines() {
        let mut s = Settings::default();
        assert!(s.apply_config("hop 128").is_err());
        assert!(s.apply_config("colour = red").is_err());
        assert!(s.apply_config("hop = 512").is_err());
        assert!(s.apply_config("gender_threshold_hz = nan").is_err());
    }
}
