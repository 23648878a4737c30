//! Listening-test stimulus kit: 4 algorithms x 4 degrees per source file.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gender::Gender;
use crate::signal::{load_wav, save_wav};
use crate::Audio;

use super::corpus::{CorpusManifest, ManifestEntry};
use super::schedule::{Algorithm, DeidSpec, Degree};
use super::settings::Settings;
use super::transform;

pub const KIT_DEGREES: [u32; 4] = [7, 13, 19, 25];
pub const KIT_SOURCES: usize = 16;
pub const ANSWER_KEY_HEADER: [&str; 6] = ["stimulus", "source", "gender", "algorithm", "degree", "parameter"];

/// Five-level listening-effort scale, best first.
pub const EFFORT_SCALE: [(u8, &str); 5] = [
    (5, "Complete relaxation possible; no effort required."),
    (4, "Attention necessary; no appreciable effort required."),
    (3, "Moderate effort required."),
    (2, "Considerable effort required."),
    (1, "No meaning understood with any feasible effort."),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KitSummary {
    pub sources: usize,
    pub stimuli: usize,
}

/// Picks up to 16 sources balanced by gender, renders every
/// (source, algorithm, degree) stimulus under a shuffled name, and writes
/// `answer_key.csv` and `rating_sheet.txt` next to `stimuli/`.
pub fn export_listening_kit(
    manifest: &CorpusManifest,
    corpus_dir: &Path,
    out_dir: &Path,
    seed: u64,
    settings: &Settings,
) -> Result<KitSummary> {
    if manifest.entries.is_empty() {
        return Err(Error::Precondition("listening kit needs a non-empty manifest".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources = pick_sources(manifest, &mut rng);

    let mut jobs: Vec<(&ManifestEntry, Algorithm, Degree)> = Vec::new();
    for entry in &sources {
        for algorithm in Algorithm::ALL {
            for d in KIT_DEGREES {
                jobs.push((entry, algorithm, Degree::new(d)?));
            }
        }
    }
    jobs.shuffle(&mut rng);

    let stim_dir = out_dir.join("stimuli");
    fs::create_dir_all(&stim_dir)?;
    let audio: Vec<Audio> = sources
        .iter()
        .map(|e| load_wav(corpus_dir.join(&e.path)))
        .collect::<Result<_>>()?;
    let mut key = csv::Writer::from_path(out_dir.join("answer_key.csv"))?;
    key.write_record(ANSWER_KEY_HEADER)?;
    let mut names = Vec::with_capacity(jobs.len());
    for (i, (entry, algorithm, degree)) in jobs.iter().enumerate() {
        let spec = DeidSpec { algorithm: *algorithm, gender: entry.gender, degree: *degree };
        let parameter = settings.schedule.parameter(&spec);
        let index = sources.iter().position(|s| std::ptr::eq(*s, *entry)).unwrap();
        let out = transform(&audio[index], *algorithm, parameter, settings)?;
        let name = format!("stim_{:03}.wav", i + 1);
        save_wav(&out, stim_dir.join(&name))?;
        key.write_record([
            name.as_str(),
            entry.path.to_string_lossy().as_ref(),
            &entry.gender.to_string(),
            &algorithm.to_string(),
            &degree.get().to_string(),
            &parameter.value().to_string(),
        ])?;
        names.push(name);
    }
    key.flush()?;
    fs::write(out_dir.join("rating_sheet.txt"), rating_sheet(&names))?;
    Ok(KitSummary { sources: sources.len(), stimuli: jobs.len() })
}

fn pick_sources<'a>(manifest: &'a CorpusManifest, rng: &mut ChaCha8Rng) -> Vec<&'a ManifestEntry> {
    let mut pools: Vec<Vec<&ManifestEntry>> = Gender::BOTH
        .iter()
        .map(|g| {
            let mut pool: Vec<_> = manifest.of_gender(*g).collect();
            pool.shuffle(rng);
            pool
        })
        .collect();
    let mut picked = Vec::with_capacity(KIT_SOURCES);
    // alternate genders, then fill from whichever pool remains
    'fill: loop {
        let mut progressed = false;
        for pool in pools.iter_mut() {
            if picked.len() == KIT_SOURCES {
                break 'fill;
            }
            if !pool.is_empty() {
                picked.push(pool.remove(0));
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    picked
}

fn rating_sheet(names: &[String]) -> String {
    let mut s = String::from("Listening effort rating sheet\n\nHow much effort was required to understand the meaning of the sentence?\n\n");
    for (score, label) in EFFORT_SCALE {
        s.push_str(&format!("{score} {label}\n"));
    }
    s.push_str("\nstimulus,rating\n");
    for n in names {
        s.push_str(&format!("{n},\n"));
    }
    s
}
