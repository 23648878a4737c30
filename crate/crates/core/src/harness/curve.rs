//! Per-degree error curves, their CSV form and the 50% crossover.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gender::Gender;

use super::schedule::{Algorithm, MAX_DEGREE, MIN_DEGREE};

pub const CURVE_HEADER: &str = "algorithm,gender,degree,parameter,n_files,n_errors,n_undecidable,error_rate";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeRecord {
    pub degree: u32,
    pub parameter: f64,
    pub n_files: usize,
    pub n_errors: usize,
    pub n_undecidable: usize,
}

impl DegreeRecord {
    /// `errors / (files - undecidable)`, absent when nothing was decided.
    pub fn error_rate(&self) -> Option<f64> {
        let decided = self.n_files.checked_sub(self.n_undecidable)?;
        (decided > 0).then(|| self.n_errors as f64 / decided as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurve {
    algorithm: Algorithm,
    gender: Gender,
    records: Vec<DegreeRecord>,
}

impl ErrorCurve {
    /// Requires one record per degree, `1..=25` in order.
    pub fn new(algorithm: Algorithm, gender: Gender, records: Vec<DegreeRecord>) -> Result<Self> {
        let complete = records.len() == (MAX_DEGREE - MIN_DEGREE + 1) as usize
            && records.iter().zip(MIN_DEGREE..).all(|(r, d)| r.degree == d);
        if !complete {
            return Err(Error::Precondition(format!(
                "curve must hold degrees {MIN_DEGREE}..={MAX_DEGREE} in order"
            )));
        }
        if let Some(r) = records.iter().find(|r| r.n_undecidable > r.n_files || r.n_errors + r.n_undecidable > r.n_files) {
            return Err(Error::Precondition(format!("inconsistent counts at degree {}", r.degree)));
        }
        Ok(Self { algorithm, gender, records })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn gender(&self) -> Gender {
        self.gender
    }

    pub fn records(&self) -> &[DegreeRecord] {
        &self.records
    }

    pub fn rates(&self) -> Vec<(u32, Option<f64>)> {
        self.records.iter().map(|r| (r.degree, r.error_rate())).collect()
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from(CURVE_HEADER);
        out.push('\n');
        for r in &self.records {
            let rate = r.error_rate().map(|e| format!("{e:.6}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.algorithm, self.gender, r.degree, r.parameter, r.n_files, r.n_errors, r.n_undecidable, rate
            ));
        }
        out
    }

    /// Parses the exported form, checking each rate against its counts.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(CURVE_HEADER) {
            return Err(Error::Format(format!("curve header must be '{CURVE_HEADER}'")));
        }
        let mut identity: Option<(Algorithm, Gender)> = None;
        let mut records = Vec::new();
        for (i, line) in lines.enumerate() {
            let bad = |what: &str| Error::Format(format!("curve row {}: bad {what}", i + 1));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(bad("field count"));
            }
            let algorithm: Algorithm = f[0].parse().map_err(|_| bad("algorithm"))?;
            let gender: Gender = f[1].parse().map_err(|_| bad("gender"))?;
            if *identity.get_or_insert((algorithm, gender)) != (algorithm, gender) {
                return Err(bad("algorithm/gender (rows disagree)"));
            }
            let record = DegreeRecord {
                degree: f[2].parse().map_err(|_| bad("degree"))?,
                parameter: f[3].parse().map_err(|_| bad("parameter"))?,
                n_files: f[4].parse().map_err(|_| bad("n_files"))?,
                n_errors: f[5].parse().map_err(|_| bad("n_errors"))?,
                n_undecidable: f[6].parse().map_err(|_| bad("n_undecidable"))?,
            };
            let expected = record.error_rate().map(|e| format!("{e:.6}")).unwrap_or_default();
            if f[7] != expected {
                return Err(bad("error_rate (does not match counts)"));
            }
            records.push(record);
        }
        let (algorithm, gender) = identity.ok_or_else(|| Error::Format("curve has no rows".into()))?;
        Self::new(algorithm, gender, records).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_csv_str(&fs::read_to_string(path)?)
    }
}

pub fn export_curve_csv(curve: &ErrorCurve, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, curve.to_csv_string())?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    /// First degree whose error rate reaches 0.5.
    pub degree: u32,
    /// Linear interpolation of the 0.5 level between the previous rated
    /// degree and `degree`.
    pub interpolated: f64,
}

pub fn find_crossover(curve: &ErrorCurve) -> Result<Option<Crossover>> {
    crossover_of(&curve.rates())
}

/// Crossover over `(degree, rate)` points in ascending degree order.
pub fn crossover_of(points: &[(u32, Option<f64>)]) -> Result<Option<Crossover>> {
    if points.iter().all(|(_, r)| r.is_none()) {
        return Err(Error::Undecidable("no degree has a defined error rate".into()));
    }
    let mut previous: Option<(u32, f64)> = None;
    for &(degree, rate) in points {
        let Some(rate) = rate else { continue };
        if rate >= 0.5 {
            let interpolated = match previous {
                Some((d0, r0)) => d0 as f64 + (0.5 - r0) / (rate - r0) * f64::from(degree - d0),
                None => f64::from(degree),
            };
            return Ok(Some(Crossover { degree, interpolated }));
        }
        previous = Some((degree, rate));
    }
    Ok(None)
}
