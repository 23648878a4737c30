use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gender::{classify_with, Gender};
use crate::signal::load_wav;
use crate::Audio;

use super::corpus::CorpusManifest;
use super::curve::{crossover_of, Crossover, DegreeRecord, ErrorCurve};
use super::schedule::{Algorithm, DeidSpec, Degree};
use super::settings::Settings;
use super::stats::spearman;
use super::transform;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Correct,
    Misclassified,
    Undecidable,
}

/// A file that could not be transformed or classified at one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub degree: u32,
    pub path: PathBuf,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub curve: ErrorCurve,
    /// Skipped (file, degree) pairs; they do not count toward `n_files`.
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    /// Spearman correlation of error rate against degree over rated degrees.
    pub fn trend(&self) -> Option<f64> {
        let (d, r): (Vec<f64>, Vec<f64>) = self
            .curve
            .rates()
            .into_iter()
            .filter_map(|(d, r)| r.map(|r| (f64::from(d), r)))
            .unzip();
        spearman(&d, &r)
    }

    pub fn crossover(&self) -> Result<Option<Crossover>> {
        crossover_of(&self.curve.rates())
    }
}

/// Loads the manifest files of one gender, in manifest order.
pub fn load_sources(manifest: &CorpusManifest, corpus_dir: &Path, gender: Gender) -> Result<Vec<(PathBuf, Audio)>> {
    let sources = manifest
        .of_gender(gender)
        .map(|e| Ok((e.path.clone(), load_wav(corpus_dir.join(&e.path))?)))
        .collect::<Result<Vec<_>>>()?;
    if sources.is_empty() {
        return Err(Error::Precondition(format!("nothing to evaluate: no {gender} files in manifest")));
    }
    Ok(sources)
}

fn judge(audio: &Audio, truth: Gender, settings: &Settings) -> Result<Outcome> {
    match classify_with(audio, &settings.gender) {
        Ok(label) if label.gender == truth => Ok(Outcome::Correct),
        Ok(_) => Ok(Outcome::Misclassified),
        Err(Error::Undecidable(_)) => Ok(Outcome::Undecidable),
        Err(e) => Err(e),
    }
}

/// Transforms and classifies every file of `gender` at each degree 1..=25.
/// Files run in parallel; counts are reduced in manifest order.
pub fn run_sweep(
    manifest: &CorpusManifest,
    corpus_dir: &Path,
    algorithm: Algorithm,
    gender: Gender,
    settings: &Settings,
) -> Result<SweepReport> {
    let sources = load_sources(manifest, corpus_dir, gender)?;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for degree in Degree::all() {
        let spec = DeidSpec { algorithm, gender, degree };
        let parameter = settings.schedule.parameter(&spec);
        let outcomes: Vec<Result<Outcome>> = sources
            .par_iter()
            .map(|(_, audio)| {
                let modified = transform(audio, algorithm, parameter, settings)?;
                judge(&modified, gender, settings)
            })
            .collect();
        let mut record = DegreeRecord {
            degree: degree.get(),
            parameter: parameter.value(),
            n_files: 0,
            n_errors: 0,
            n_undecidable: 0,
        };
        for ((path, _), outcome) in sources.iter().zip(outcomes) {
            match outcome {
                Ok(o) => {
                    record.n_files += 1;
                    match o {
                        Outcome::Correct => {}
                        Outcome::Misclassified => record.n_errors += 1,
                        Outcome::Undecidable => record.n_undecidable += 1,
                    }
                }
                Err(e) => failures.push(SweepFailure { degree: degree.get(), path: path.clone(), message: e.to_string() }),
            }
        }
        records.push(record);
    }
    Ok(SweepReport { curve: ErrorCurve::new(algorithm, gender, records)?, failures })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaselineReport {
    pub n_files: usize,
    pub n_correct: usize,
    pub n_undecidable: usize,
}

impl BaselineReport {
    /// Accuracy over decided files.
    pub fn accuracy(&self) -> Option<f64> {
        let decided = self.n_files - self.n_undecidable;
        (decided > 0).then(|| self.n_correct as f64 / decided as f64)
    }
}

/// Classifies the unmodified corpus (both genders).
pub fn evaluate_baseline(manifest: &CorpusManifest, corpus_dir: &Path, settings: &Settings) -> Result<BaselineReport> {
    if manifest.entries.is_empty() {
        return Err(Error::Precondition("nothing to evaluate: empty manifest".into()));
    }
    let outcomes = manifest
        .entries
        .par_iter()
        .map(|e| judge(&load_wav(corpus_dir.join(&e.path))?, e.gender, settings))
        .collect::<Result<Vec<_>>>()?;
    Ok(BaselineReport {
        n_files: outcomes.len(),
        n_correct: outcomes.iter().filter(|o| **o == Outcome::Correct).count(),
        n_undecidable: outcomes.iter().filter(|o| **o == Outcome::Undecidable).count(),
    })
}
