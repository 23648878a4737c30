//! Seeded synthetic vowel corpus standing in for recorded speech.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gender::Gender;
use crate::signal::{save_wav, AudioBuffer};

pub const CORPUS_SAMPLE_RATE: u32 = 16_000;
pub const UTTERANCE_SECS: f64 = 2.0;
pub const MALE_F0_HZ: (f64, f64) = (100.0, 140.0);
pub const FEMALE_F0_HZ: (f64, f64) = (180.0, 240.0);
pub const MANIFEST_FILE: &str = "manifest.csv";
pub const MANIFEST_HEADER: [&str; 5] = ["path", "gender", "f0_hz", "duration_s", "seed"];

/// Pink noise level relative to the voiced signal RMS.
const NOISE_FLOOR_DB: f64 = -30.0;
const PEAK_LEVEL: f64 = 0.7;
const FADE_SECS: f64 = 0.04;
const VIBRATO_DEPTH: f64 = 0.005;
const FEMALE_FORMANT_SCALE: f64 = 1.17;
/// Adult male F1..F3 (Hz) for /a/, /i/, /u/, /e/, /o/.
const VOWEL_FORMANTS: [[f64; 3]; 5] = [
    [730.0, 1090.0, 2440.0],
    [270.0, 2290.0, 3010.0],
    [300.0, 870.0, 2240.0],
    [530.0, 1840.0, 2480.0],
    [570.0, 840.0, 2410.0],
];
const FORMANT_BANDWIDTHS: [f64; 3] = [80.0, 100.0, 140.0];

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    /// Relative to the corpus directory.
    pub path: PathBuf,
    pub gender: Gender,
    pub f0_hz: f64,
    pub duration_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
    pub seed: u64,
}

impl CorpusManifest {
    pub fn of_gender(&self, gender: Gender) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(move |e| e.gender == gender)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(MANIFEST_HEADER)?;
        for e in &self.entries {
            w.write_record([
                e.path.to_string_lossy().as_ref(),
                &e.gender.to_string(),
                &e.f0_hz.to_string(),
                &e.duration_s.to_string(),
                &self.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let mut r = csv::Reader::from_path(path)?;
        if r.headers()?.iter().ne(MANIFEST_HEADER) {
            return Err(Error::Format(format!("manifest header must be {}", MANIFEST_HEADER.join(","))));
        }
        let mut entries = Vec::new();
        let mut seed = None;
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let field = |k: usize| rec.get(k).unwrap_or("");
            let bad = |what: &str| Error::Format(format!("manifest row {}: bad {what}", i + 1));
            let row_seed: u64 = field(4).parse().map_err(|_| bad("seed"))?;
            if *seed.get_or_insert(row_seed) != row_seed {
                return Err(bad("seed (rows disagree)"));
            }
            entries.push(ManifestEntry {
                path: PathBuf::from(field(0)),
                gender: field(1).parse().map_err(|_| bad("gender"))?,
                f0_hz: field(2).parse().map_err(|_| bad("f0_hz"))?,
                duration_s: field(3).parse().map_err(|_| bad("duration_s"))?,
            });
        }
        Ok(Self { entries, seed: seed.unwrap_or(0) })
    }
}

/// Writes `n_per_gender` male then female utterances plus `manifest.csv`
/// into `out_dir`. Same seed, same bytes.
pub fn generate_corpus(seed: u64, n_per_gender: usize, out_dir: impl AsRef<Path>) -> Result<CorpusManifest> {
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir)?;
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(2 * n_per_gender);
    for gender in Gender::BOTH {
        let (lo, hi) = match gender {
            Gender::Male => MALE_F0_HZ,
            Gender::Female => FEMALE_F0_HZ,
        };
        for i in 0..n_per_gender {
            let mut rng = ChaCha8Rng::seed_from_u64(master.random());
            let f0 = rng.random_range(lo..=hi);
            let samples = synthesize_vowel(&mut rng, gender, f0, CORPUS_SAMPLE_RATE, UTTERANCE_SECS);
            let audio = AudioBuffer::new(samples, CORPUS_SAMPLE_RATE)?;
            let path = PathBuf::from(format!("{gender}_{i:04}.wav"));
            save_wav(&audio, out_dir.join(&path))?;
            entries.push(ManifestEntry { path, gender, f0_hz: f0, duration_s: audio.duration_secs() });
        }
    }
    let manifest = CorpusManifest { entries, seed };
    manifest.write_csv(out_dir.join(MANIFEST_FILE))?;
    Ok(manifest)
}

/// Sustained vowel: Rosenberg glottal pulses (differentiated for lip
/// radiation) through three cascaded formant resonators, with light
/// vibrato and a pink-noise floor.
pub fn synthesize_vowel<R: Rng>(rng: &mut R, gender: Gender, f0: f64, sample_rate: u32, secs: f64) -> Vec<f64> {
    let sr = f64::from(sample_rate);
    let n = (secs * sr).round() as usize;
    let vowel = VOWEL_FORMANTS[rng.random_range(0..VOWEL_FORMANTS.len())];
    let scale = match gender {
        Gender::Male => 1.0,
        Gender::Female => FEMALE_FORMANT_SCALE,
    };
    let vibrato_rate = rng.random_range(4.0..6.0);
    let vibrato_phase = rng.random_range(0.0..std::f64::consts::TAU);

    let mut phase: f64 = rng.random_range(0.0..1.0);
    let mut prev_flow = rosenberg(phase);
    let mut x: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / sr;
            let inst = f0 * (1.0 + VIBRATO_DEPTH * (std::f64::consts::TAU * vibrato_rate * t + vibrato_phase).sin());
            phase = (phase + inst / sr).fract();
            let flow = rosenberg(phase);
            let d = flow - prev_flow;
            prev_flow = flow;
            d
        })
        .collect();
    for (f, bw) in vowel.iter().zip(FORMANT_BANDWIDTHS) {
        resonate(&mut x, f * scale, bw, sr);
    }

    let fade = (FADE_SECS * sr) as usize;
    for i in 0..fade.min(n / 2) {
        let g = 0.5 - 0.5 * (std::f64::consts::PI * i as f64 / fade as f64).cos();
        x[i] *= g;
        x[n - 1 - i] *= g;
    }

    let rms = (x.iter().map(|v| v * v).sum::<f64>() / n.max(1) as f64).sqrt();
    let noise = pink_noise(rng, n);
    let noise_rms = (noise.iter().map(|v| v * v).sum::<f64>() / n.max(1) as f64).sqrt();
    let gain = if noise_rms > 0.0 { rms * 10f64.powf(NOISE_FLOOR_DB / 20.0) / noise_rms } else { 0.0 };
    for (s, z) in x.iter_mut().zip(&noise) {
        *s += gain * z;
    }
    let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak > 0.0 {
        x.iter_mut().for_each(|v| *v *= PEAK_LEVEL / peak);
    }
    x
}

/// Rosenberg glottal flow over one period (40% opening, 16% closing).
fn rosenberg(phase: f64) -> f64 {
    const OPEN: f64 = 0.4;
    const CLOSE: f64 = 0.16;
    if phase < OPEN {
        0.5 * (1.0 - (std::f64::consts::PI * phase / OPEN).cos())
    } else if phase < OPEN + CLOSE {
        (std::f64::consts::FRAC_PI_2 * (phase - OPEN) / CLOSE).cos()
    } else {
        0.0
    }
}

/// Two-pole resonator with unity gain at DC.
fn resonate(x: &mut [f64], freq: f64, bandwidth: f64, sr: f64) {
    let c = -(-2.0 * std::f64::consts::PI * bandwidth / sr).exp();
    let b = 2.0 * (-std::f64::consts::PI * bandwidth / sr).exp() * (2.0 * std::f64::consts::PI * freq / sr).cos();
    let a = 1.0 - b - c;
    let (mut y1, mut y2) = (0.0, 0.0);
    for s in x.iter_mut() {
        let y = a * *s + b * y1 + c * y2;
        y2 = y1;
        y1 = y;
        *s = y;
    }
}

fn pink_noise<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let (mut b0, mut b1, mut b2) = (0.0, 0.0, 0.0);
    (0..n)
        .map(|_| {
            let w: f64 = rng.random_range(-1.0..1.0);
            b0 = 0.99765 * b0 + w * 0.0990460;
            b1 = 0.96300 * b1 + w * 0.2965164;
            b2 = 0.57000 * b2 + w * 1.0526913;
            b0 + b1 + b2 + w * 0.1848
        })
        .collect()
}
