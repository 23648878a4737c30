//! Degree-of-modification schedules.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gender::Gender;

pub const MIN_DEGREE: u32 = 1;
pub const MAX_DEGREE: u32 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Voc,
    Vocf,
    Quadratic,
    Bilinear,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] =
        [Algorithm::Voc, Algorithm::Vocf, Algorithm::Quadratic, Algorithm::Bilinear];

    pub fn is_vocoder(self) -> bool {
        matches!(self, Algorithm::Voc | Algorithm::Vocf)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Voc => "voc",
            Algorithm::Vocf => "vocf",
            Algorithm::Quadratic => "quadratic",
            Algorithm::Bilinear => "bilinear",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm '{s}'")))
    }
}

/// Modification degree in `1..=25`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(u32);

impl Degree {
    pub fn new(degree: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
            return Err(Error::Parameter(format!(
                "degree {degree} outside {MIN_DEGREE}..={MAX_DEGREE}"
            )));
        }
        Ok(Self(degree))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Degree> {
        (MIN_DEGREE..=MAX_DEGREE).map(Degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeidSpec {
    pub algorithm: Algorithm,
    /// Gender of the speaker being de-identified.
    pub gender: Gender,
    pub degree: Degree,
}

/// Transform parameter a degree maps to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformParameter {
    /// Pitch-scale ratio for the vocoder kinds.
    Ratio(f64),
    /// Warp factor for the VTLN kinds.
    Alpha(f64),
}

impl TransformParameter {
    pub fn value(self) -> f64 {
        match self {
            TransformParameter::Ratio(v) | TransformParameter::Alpha(v) => v,
        }
    }
}

/// Per-degree step sizes. VTLN steps are magnitudes; female warps are
/// incremental and male warps decremental. Vocoder degrees move each
/// gender toward the other: male pitch up, female pitch down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub semitones_per_degree: f64,
    pub bilinear_female_step: f64,
    pub bilinear_male_step: f64,
    pub quadratic_female_step: f64,
    pub quadratic_male_step: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Self {
            semitones_per_degree: 0.5,
            bilinear_female_step: 0.0065,
            bilinear_male_step: 0.0043,
            quadratic_female_step: 0.057,
            quadratic_male_step: 0.029,
        }
    }
}

impl Schedule {
    pub fn parameter(&self, spec: &DeidSpec) -> TransformParameter {
        let d = f64::from(spec.degree.get());
        let sign = match spec.gender {
            Gender::Female => 1.0,
            Gender::Male => -1.0,
        };
        match spec.algorithm {
            Algorithm::Voc | Algorithm::Vocf => {
                TransformParameter::Ratio(2f64.powf(-sign * d * self.semitones_per_degree / 12.0))
            }
            Algorithm::Bilinear => {
                let step = match spec.gender {
                    Gender::Female => self.bilinear_female_step,
                    Gender::Male => self.bilinear_male_step,
                };
                TransformParameter::Alpha(sign * step * d)
            }
            Algorithm::Quadratic => {
                let step = match spec.gender {
                    Gender::Female => self.quadratic_female_step,
                    Gender::Male => self.quadratic_male_step,
                };
                TransformParameter::Alpha(sign * step * d)
            }
        }
    }
}

pub fn degree_to_parameter(spec: &DeidSpec, schedule: &Schedule) -> TransformParameter {
    schedule.parameter(spec)
}
