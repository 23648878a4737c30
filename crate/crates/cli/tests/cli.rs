use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn deid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deid")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn corpus(dir: &Path, seed: &str, n: &str) {
    let out = deid(&["gen-corpus", "--seed", seed, "--per-gender", n, "--out", p(dir)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&deid(&[])), 1);
    assert_eq!(code(&deid(&["frobnicate"])), 1);
    assert_eq!(code(&deid(&["transform", "--algo", "voc", "--gender", "male", "--degree", "26", "--in", "a", "--out", "b"])), 1);
    assert_eq!(code(&deid(&["transform", "--algo", "warp", "--gender", "male", "--degree", "2", "--in", "a", "--out", "b"])), 1);
    assert_eq!(code(&deid(&["sweep", "--algo", "voc", "--gender", "x", "--corpus", ".", "--out", "c.csv"])), 1);
    assert_eq!(code(&deid(&["--help"])), 0);
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bogus = dir.path().join("bogus.wav");
    fs::write(&bogus, b"not a wave file at all").unwrap();
    assert_eq!(code(&deid(&["classify", "--in", p(&bogus)])), 2);
    assert_eq!(code(&deid(&["classify", "--in", p(&dir.path().join("missing.wav"))])), 2);
    let curve = dir.path().join("c.csv");
    fs::write(&curve, "algorithm,gender\nvoc,male\n").unwrap();
    assert_eq!(code(&deid(&["crossover", "--curve", p(&curve)])), 2);
}

#[test]
fn silence_is_undecidable() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("silence.wav");
    deid::save_wav(&deid::Audio::new(vec![0.0; 16000], 16000).unwrap(), &wav).unwrap();
    let out = deid(&["classify", "--in", p(&wav)]);
    assert_eq!(code(&out), 3);

    let curve = dir.path().join("c.csv");
    let mut text = String::from("algorithm,gender,degree,parameter,n_files,n_errors,n_undecidable,error_rate\n");
    for d in 1..=25 {
        text.push_str(&format!("voc,male,{d},1,2,0,2,\n"));
    }
    fs::write(&curve, text).unwrap();
    assert_eq!(code(&deid(&["crossover", "--curve", p(&curve)])), 3);
}

#[test]
fn transform_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path(), "5", "1");
    let male = dir.path().join("male_0000.wav");
    let out = deid(&["classify", "--in", p(&male)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("male "));

    let shifted = dir.path().join("up.wav");
    let out = deid(&["transform", "--algo", "vocf", "--gender", "male", "--ratio", "2", "--in", p(&male), "--out", p(&shifted)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&deid(&["classify", "--in", p(&shifted)])).starts_with("female "));

    let warped = dir.path().join("w.wav");
    for args in [["--degree", "9"], ["--alpha", "-0.2"]] {
        let mut full = vec!["transform", "--algo", "bilinear", "--gender", "male", "--in", p(&male), "--out", p(&warped)];
        full.extend(args);
        assert_eq!(code(&deid(&full)), 0);
        let a: deid::Audio = deid::load_wav(&male).unwrap();
        let b: deid::Audio = deid::load_wav(&warped).unwrap();
        assert_eq!(a.len(), b.len());
    }
    // override of the wrong kind
    let out = deid(&["transform", "--algo", "bilinear", "--gender", "male", "--ratio", "2", "--in", p(&male), "--out", p(&warped)]);
    assert_eq!(code(&out), 1);
    let out = deid(&["transform", "--algo", "bilinear", "--gender", "male", "--alpha", "1.5", "--in", p(&male), "--out", p(&warped)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn sweep_is_reproducible_and_reports_crossover() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    corpus(a.path(), "42", "3");
    corpus(b.path(), "42", "3");
    let mut curves = Vec::new();
    for dir in [a.path(), b.path()] {
        let csv = dir.join("voc_male.csv");
        let out = deid(&[
            "sweep", "--algo", "voc", "--gender", "male", "--corpus", p(dir),
            "--manifest", p(&dir.join("manifest.csv")), "--out", p(&csv),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).starts_with("crossover "));
        assert!(dir.join("voc_male.svg").exists());
        curves.push(fs::read(&csv).unwrap());
    }
    assert_eq!(curves[0], curves[1]);
    let text = String::from_utf8(curves[0].clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), "algorithm,gender,degree,parameter,n_files,n_errors,n_undecidable,error_rate");
    assert_eq!(text.lines().count(), 26);

    let out = deid(&["crossover", "--curve", p(&a.path().join("voc_male.csv"))]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("crossover "));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path(), "8", "2");
    let cfg = dir.path().join("deid.conf");
    fs::write(&cfg, "# coarser vocoder steps\nsemitones_per_degree = 1.0\n").unwrap();
    let run = |extra: &[&str], name: &str| {
        let csv = dir.path().join(name);
        let mut args = vec!["sweep", "--algo", "voc", "--gender", "female", "--corpus", p(dir.path()), "--out", p(&csv)];
        args.extend(extra);
        assert_eq!(code(&deid(&args)), 0);
        fs::read_to_string(csv).unwrap()
    };
    let default = run(&[], "d.csv");
    let from_file = run(&["--config", p(&cfg)], "f.csv");
    let flag_wins = run(&["--config", p(&cfg), "--semitones-per-degree", "0.5"], "g.csv");
    assert_ne!(default, from_file);
    assert_eq!(default, flag_wins);
    assert!(from_file.contains("voc,female,12,0.5,"));

    fs::write(&cfg, "no_such_key = 3\n").unwrap();
    let out = deid(&["--config", p(&cfg), "classify", "--in", p(&dir.path().join("male_0000.wav"))]);
    assert_eq!(code(&out), 1);
}

#[test]
fn listening_kit_from_corpus() {
    let corpus_dir = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    corpus(corpus_dir.path(), "13", "8");
    let res = deid(&["listening-kit", "--corpus", p(corpus_dir.path()), "--out", p(out.path()), "--seed", "3"]);
    assert_eq!(code(&res), 0);
    assert!(stdout(&res).starts_with("256 stimuli from 16 sources"));
    assert_eq!(fs::read_to_string(out.path().join("answer_key.csv")).unwrap().lines().count(), 257);
}
