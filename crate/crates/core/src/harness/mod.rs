//! Experiment harness: synthetic corpus, degree schedules, error-curve
//! sweeps, crossover search and listening-kit export.

mod corpus;
mod curve;
mod kit;
mod plot;
mod schedule;
mod settings;
mod stats;
mod sweep;

pub use corpus::{
    generate_corpus, synthesize_vowel, CorpusManifest, ManifestEntry, CORPUS_SAMPLE_RATE, FEMALE_F0_HZ,
    MALE_F0_HZ, MANIFEST_FILE, MANIFEST_HEADER, UTTERANCE_SECS,
};
pub use curve::{crossover_of, export_curve_csv, find_crossover, Crossover, DegreeRecord, ErrorCurve, CURVE_HEADER};
pub use kit::{export_listening_kit, KitSummary, ANSWER_KEY_HEADER, EFFORT_SCALE, KIT_DEGREES, KIT_SOURCES};
pub use plot::curve_svg;
pub use schedule::{
    degree_to_parameter, Algorithm, DeidSpec, Degree, Schedule, TransformParameter, MAX_DEGREE, MIN_DEGREE,
};
pub use settings::{Settings, KEYS as CONFIG_KEYS};
pub use stats::spearman;
pub use sweep::{evaluate_baseline, load_sources, run_sweep, BaselineReport, Outcome, SweepFailure, SweepReport};

use crate::error::{Error, Result};
use crate::vocoder::{pitch_shift_with, VocoderVariant};
use crate::vtln::{vtln_transform, WarpKind, WarpSpec};
use crate::Audio;

/// Applies one algorithm with an explicit parameter (ratio for the vocoder
/// kinds, warp factor for the VTLN kinds).
pub fn transform(audio: &Audio, algorithm: Algorithm, parameter: TransformParameter, settings: &Settings) -> Result<Audio> {
    match (algorithm, parameter) {
        (Algorithm::Voc, TransformParameter::Ratio(r)) => {
            pitch_shift_with(audio, r, VocoderVariant::Voc, &settings.stft, settings.neighborhood)
        }
        (Algorithm::Vocf, TransformParameter::Ratio(r)) => {
            pitch_shift_with(audio, r, VocoderVariant::Vocf, &settings.stft, settings.neighborhood)
        }
        (Algorithm::Quadratic, TransformParameter::Alpha(a)) => {
            vtln_transform(audio, &WarpSpec::new(WarpKind::Quadratic, a)?, &settings.stft)
        }
        (Algorithm::Bilinear, TransformParameter::Alpha(a)) => {
            vtln_transform(audio, &WarpSpec::new(WarpKind::Bilinear, a)?, &settings.stft)
        }
        (a, p) => Err(Error::Parameter(format!("{a} cannot take parameter {p:?}"))),
    }
}

/// Applies a degree-indexed de-identification.
pub fn deidentify(audio: &Audio, spec: &DeidSpec, settings: &Settings) -> Result<Audio> {
    transform(audio, spec.algorithm, settings.schedule.parameter(spec), settings)
}
