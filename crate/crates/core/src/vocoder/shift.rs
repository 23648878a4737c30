use num_complex::Complex;

use crate::error::{Error, Result};
use crate::num::Real;
use crate::signal::SpectralFrame;

use super::{check_ratio, PeakSet};

/// Sub-bin peak position from a parabola through the log magnitudes.
pub(crate) fn refine_peak<T: Real>(magnitudes: &[T], peak: usize) -> T {
    let p = T::of_usize(peak);
    if peak == 0 || peak + 1 >= magnitudes.len() {
        return p;
    }
    let tiny = T::min_positive_value();
    let a = (magnitudes[peak - 1] + tiny).ln();
    let b = (magnitudes[peak] + tiny).ln();
    let c = (magnitudes[peak + 1] + tiny).ln();
    let den = a - T::lit(2.0) * b + c;
    if den.is_nan() || den >= T::zero() {
        return p;
    }
    let half = T::lit(0.5);
    p + (half * (a - c) / den).max(-half).min(half)
}

/// Whole-bin translation applied to a peak's region: the nearest integer to
/// `(ratio - 1)` times the refined peak position.
pub fn region_shift<T: Real>(magnitudes: &[T], peak: usize, ratio: T) -> isize {
    let target = (ratio - T::one()) * refine_peak(magnitudes, peak);
    target.round().to_isize().unwrap_or(0)
}

/// Moves every region of influence by its peak's whole-bin shift, keeping
/// relative amplitudes and phases inside the region. Bins pushed outside
/// `[0, pi]` are dropped; colliding bins add.
pub fn shift_coefficients<T: Real>(
    frame: &SpectralFrame<T>,
    peaks: &PeakSet,
    ratio: T,
) -> Result<SpectralFrame<T>> {
    check_ratio(ratio)?;
    let n = frame.len();
    if peaks.num_bins() != n {
        return Err(Error::Shape(format!(
            "peak set spans {} bins, frame has {n}",
            peaks.num_bins()
        )));
    }
    let magnitudes = frame.magnitudes();
    let mut out = SpectralFrame::zeros(n, frame.frame_index);
    for (peak, region) in peaks.regions() {
        let shift = region_shift(&magnitudes, peak, ratio);
        for k in region {
            let dest = k as isize + shift;
            if dest >= 0 && (dest as usize) < n {
                let slot: &mut Complex<T> = &mut out.bins[dest as usize];
                *slot = *slot + frame.bins[k];
            }
        }
    }
    out.make_edges_real();
    Ok(out)
}
