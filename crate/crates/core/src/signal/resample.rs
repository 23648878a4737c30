//! Band-limited, pitch-affecting resampling: the output is read from the
//! input at `ratio` times the original speed, keeping the sample rate.

use crate::error::{Error, Result};
use crate::num::Real;

use super::AudioBuffer;

pub const MIN_RESAMPLE_RATIO: f64 = 0.25;
pub const MAX_RESAMPLE_RATIO: f64 = 4.0;

const HALF_TAPS: isize = 16;
const KAISER_BETA: f64 = 8.0;

/// Output length is `round(len / ratio)`; sample `m` is the input evaluated
/// at `m * ratio` through a 32-tap Kaiser-windowed sinc whose cutoff drops
/// to `1/ratio` of Nyquist when reading faster than real time.
pub fn resample<T: Real>(audio: &AudioBuffer<T>, ratio: f64) -> Result<AudioBuffer<T>> {
    if !(MIN_RESAMPLE_RATIO..=MAX_RESAMPLE_RATIO).contains(&ratio) {
        return Err(Error::Parameter(format!(
            "resample ratio {ratio} outside [{MIN_RESAMPLE_RATIO}, {MAX_RESAMPLE_RATIO}]"
        )));
    }
    let x = audio.samples();
    let out_len = (x.len() as f64 / ratio).round() as usize;
    let cutoff = (1.0 / ratio).min(1.0);
    let i0_beta = bessel_i0(KAISER_BETA);
    let kernel = |u: f64| -> f64 {
        let r = u / HALF_TAPS as f64;
        if r.abs() >= 1.0 {
            return 0.0;
        }
        let win = bessel_i0(KAISER_BETA * (1.0 - r * r).sqrt()) / i0_beta;
        cutoff * sinc(cutoff * u) * win
    };

    let out: Vec<T> = (0..out_len)
        .map(|m| {
            let t = m as f64 * ratio;
            let base = t.floor() as isize;
            let mut acc = 0.0;
            for k in (base - HALF_TAPS + 1)..=(base + HALF_TAPS) {
                if k < 0 || k as usize >= x.len() {
                    continue;
                }
                acc += x[k as usize].as_f64() * kernel(t - k as f64);
            }
            T::lit(acc)
        })
        .collect();
    AudioBuffer::from_clipped(out, audio.sample_rate())
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = std::f64::consts::PI * x;
        px.sin() / px
    }
}

/// Modified Bessel function of the first kind, order zero (power series).
fn bessel_i0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..64 {
        term *= q / (k * k) as f64;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}
