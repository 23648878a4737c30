use crate::error::{Error, Result};
use crate::num::Real;

/// Mono PCM audio with amplitudes in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer<T> {
    samples: Vec<T>,
    sample_rate: u32,
    clipped: usize,
}

impl<T: Real> AudioBuffer<T> {
    /// Wraps samples that already satisfy the amplitude invariant.
    pub fn new(samples: Vec<T>, sample_rate: u32) -> Result<Self> {
        check_rate(sample_rate)?;
        if let Some(i) = samples.iter().position(|s| !s.is_finite() || s.abs() > T::one()) {
            return Err(Error::Precondition(format!(
                "sample {i} = {} outside [-1, 1]",
                samples[i]
            )));
        }
        Ok(Self { samples, sample_rate, clipped: 0 })
    }

    /// Hard-clips synthesized samples to `[-1, 1]`, recording how many were clipped.
    pub fn from_clipped(mut samples: Vec<T>, sample_rate: u32) -> Result<Self> {
        check_rate(sample_rate)?;
        let mut clipped = 0;
        for (i, s) in samples.iter_mut().enumerate() {
            if !s.is_finite() {
                return Err(Error::Precondition(format!("sample {i} is not finite")));
            }
            if s.abs() > T::one() {
                *s = s.signum();
                clipped += 1;
            }
        }
        Ok(Self { samples, sample_rate, clipped })
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Number of samples hard-clipped when this buffer was synthesized.
    pub fn clipped_samples(&self) -> usize {
        self.clipped
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate)
    }

    /// Converts to another scalar type.
    pub fn cast<U: Real>(&self) -> AudioBuffer<U> {
        AudioBuffer {
            samples: self.samples.iter().map(|s| U::lit(s.as_f64())).collect(),
            sample_rate: self.sample_rate,
            clipped: self.clipped,
        }
    }
}

fn check_rate(sample_rate: u32) -> Result<()> {
    if sample_rate == 0 {
        return Err(Error::Precondition("sample rate must be positive".into()));
    }
    Ok(())
}
