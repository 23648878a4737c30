use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::num::Real;

/// Tapered analysis/synthesis window. Both kinds are periodic, so their
/// squares overlap-add to a constant at hop = size/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowKind {
    #[default]
    Hann,
    Hamming,
}

impl WindowKind {
    pub fn generate<T: Real>(self, size: usize) -> Vec<T> {
        let (a0, a1) = match self {
            WindowKind::Hann => (0.5, 0.5),
            WindowKind::Hamming => (0.54, 0.46),
        };
        (0..size)
            .map(|n| {
                let phase = 2.0 * std::f64::consts::PI * n as f64 / size as f64;
                T::lit(a0 - a1 * phase.cos())
            })
            .collect()
    }
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowKind::Hann => "hann",
            WindowKind::Hamming => "hamming",
        })
    }
}

impl FromStr for WindowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "hann" => Ok(WindowKind::Hann),
            "hamming" => Ok(WindowKind::Hamming),
            other => Err(Error::Config(format!("unknown window '{other}'"))),
        }
    }
}
