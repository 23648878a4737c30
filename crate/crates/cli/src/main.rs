use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use deid::harness::{
    curve_svg, deidentify, export_curve_csv, export_listening_kit, find_crossover, generate_corpus, run_sweep,
    transform, Algorithm, CorpusManifest, DeidSpec, Degree, ErrorCurve, Settings, TransformParameter,
    MANIFEST_FILE,
};
use deid::gender::classify_with;
use deid::{load_wav, save_wav, Error, Gender};

#[derive(Parser)]
#[command(name = "deid", version, about = "Speech gender de-identification toolkit")]
struct Cli {
    /// Plain-text `key = value` settings file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Overrides {
    #[arg(long, global = true)]
    window_size: Option<String>,
    #[arg(long, global = true)]
    hop: Option<String>,
    /// hann or hamming
    #[arg(long, global = true)]
    window: Option<String>,
    /// Peak-picking neighbourhood, 2 or 4
    #[arg(long, global = true)]
    neighborhood: Option<String>,
    #[arg(long, global = true)]
    semitones_per_degree: Option<String>,
    #[arg(long, global = true)]
    bilinear_female_step: Option<String>,
    #[arg(long, global = true)]
    bilinear_male_step: Option<String>,
    #[arg(long, global = true)]
    quadratic_female_step: Option<String>,
    #[arg(long, global = true)]
    quadratic_male_step: Option<String>,
    #[arg(long, global = true)]
    gender_threshold_hz: Option<String>,
    #[arg(long, global = true)]
    confidence_scale_hz: Option<String>,
    #[arg(long, global = true)]
    voicing_threshold: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> [(&'static str, &Option<String>); 12] {
        [
            ("window_size", &self.window_size),
            ("hop", &self.hop),
            ("window", &self.window),
            ("neighborhood", &self.neighborhood),
            ("semitones_per_degree", &self.semitones_per_degree),
            ("bilinear_female_step", &self.bilinear_female_step),
            ("bilinear_male_step", &self.bilinear_male_step),
            ("quadratic_female_step", &self.quadratic_female_step),
            ("quadratic_male_step", &self.quadratic_male_step),
            ("gender_threshold_hz", &self.gender_threshold_hz),
            ("confidence_scale_hz", &self.confidence_scale_hz),
            ("voicing_threshold", &self.voicing_threshold),
        ]
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded synthetic vowel corpus with a manifest.
    GenCorpus {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        per_gender: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply one transform to a WAV file.
    Transform {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long)]
        gender: Gender,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=25))]
        degree: Option<u32>,
        /// Pitch ratio, replaces the degree schedule (voc, vocf).
        #[arg(long, conflicts_with = "alpha")]
        ratio: Option<f64>,
        /// Warp factor, replaces the degree schedule (quadratic, bilinear).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the 25-degree error-rate sweep and write the curve CSV.
    Sweep {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long)]
        gender: Gender,
        #[arg(long)]
        corpus: PathBuf,
        /// Defaults to manifest.csv inside the corpus directory.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report the 50% crossover of a curve CSV.
    Crossover {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Render listening-test stimuli and an answer key.
    ListeningKit {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Classify the speaker gender of a WAV file.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Undecidable(_) => ExitCode::from(3),
                Error::Parameter(_) | Error::Config(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let mut s = match &cli.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    for (key, value) in cli.overrides.pairs() {
        if let Some(v) = value {
            s.set(key, v)?;
        }
    }
    Ok(s)
}

fn manifest_in(corpus: &Path, manifest: Option<&Path>) -> Result<CorpusManifest, Failure> {
    let path = manifest.map_or_else(|| corpus.join(MANIFEST_FILE), Path::to_path_buf);
    Ok(CorpusManifest::read_csv(path)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let settings = settings(&cli)?;
    match cli.command {
        Command::GenCorpus { seed, per_gender, out } => {
            if per_gender == 0 {
                return Err(Failure::Usage("--per-gender must be at least 1".into()));
            }
            let manifest = generate_corpus(seed, per_gender, &out)?;
            println!("wrote {} files to {}", manifest.entries.len(), out.display());
        }
        Command::Transform { algo, gender, degree, ratio, alpha, input, out } => {
            let audio = load_wav(&input)?;
            let result = match (ratio, alpha, degree) {
                (Some(_), _, _) if !algo.is_vocoder() => {
                    return Err(Failure::Usage(format!("--ratio applies to voc/vocf, not {algo}")))
                }
                (_, Some(_), _) if algo.is_vocoder() => {
                    return Err(Failure::Usage(format!("--alpha applies to quadratic/bilinear, not {algo}")))
                }
                (Some(r), _, _) => transform(&audio, algo, TransformParameter::Ratio(r), &settings)?,
                (_, Some(a), _) => transform(&audio, algo, TransformParameter::Alpha(a), &settings)?,
                (None, None, Some(d)) => {
                    let spec = DeidSpec { algorithm: algo, gender, degree: Degree::new(d)? };
                    deidentify(&audio, &spec, &settings)?
                }
                (None, None, None) => return Err(Failure::Usage("one of --degree, --ratio, --alpha is required".into())),
            };
            if result.clipped_samples() > 0 {
                eprintln!("warning: {} samples clipped", result.clipped_samples());
            }
            save_wav(&result, &out)?;
        }
        Command::Sweep { algo, gender, corpus, manifest, out } => {
            let manifest = manifest_in(&corpus, manifest.as_deref())?;
            let report = run_sweep(&manifest, &corpus, algo, gender, &settings)?;
            for f in &report.failures {
                eprintln!("warning: degree {} {}: {}", f.degree, f.path.display(), f.message);
            }
            export_curve_csv(&report.curve, &out)?;
            std::fs::write(out.with_extension("svg"), curve_svg(&report.curve)).map_err(Error::from)?;
            print_crossover(&report.curve)?;
        }
        Command::Crossover { curve } => {
            let curve = ErrorCurve::read_csv(&curve)?;
            print_crossover(&curve)?;
        }
        Command::ListeningKit { corpus, out, seed } => {
            let manifest = manifest_in(&corpus, None)?;
            let kit = export_listening_kit(&manifest, &corpus, &out, seed, &settings)?;
            println!("{} stimuli from {} sources in {}", kit.stimuli, kit.sources, out.display());
        }
        Command::Classify { input } => {
            let audio: deid::Audio = load_wav(&input)?;
            let label = classify_with(&audio, &settings.gender)?;
            println!("{} confidence={:.4} f0_hz={:.2}", label.gender, label.confidence, label.f0);
        }
    }
    Ok(())
}

fn print_crossover(curve: &ErrorCurve) -> Result<(), Failure> {
    match find_crossover(curve)? {
        Some(c) => println!("crossover {} (interpolated {:.2})", c.degree, c.interpolated),
        None => println!("crossover none"),
    }
    Ok(())
}
