use num_complex::Complex;

use crate::error::Result;
use crate::num::{princarg, Real};
use crate::signal::{overlap_add, pad_both, stft_samples, unpad, AudioBuffer, SpectralFrame, StftConfig};

use super::WarpSpec;

/// Backward-mapped frequency warp: output bin at `w` takes the input value
/// at `g^-1(w)`. Magnitude is interpolated linearly, phase along the wrapped
/// difference between the two neighbouring bins. Phases are referenced to
/// the window centre while interpolating so a stationary partial has nearly
/// equal phase across its main lobe.
pub fn warp_spectrum<T: Real>(frame: &SpectralFrame<T>, spec: &WarpSpec<T>) -> Result<SpectralFrame<T>> {
    let n = frame.len();
    let last = n - 1;
    let centred: Vec<Complex<T>> = frame
        .bins
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 1 { -b } else { b })
        .collect();
    let mags: Vec<T> = centred.iter().map(|c| c.norm()).collect();
    let phases: Vec<T> = centred.iter().map(|c| c.arg()).collect();
    let to_bins = T::of_usize(last) / T::PI();
    let snap = T::lit(1e-9);

    let mut out = SpectralFrame::zeros(n, frame.frame_index);
    for k in 0..n {
        let source = spec.unmap(frame.omega(k)) * to_bins;
        let nearest = source.round();
        let value = if (source - nearest).abs() <= snap {
            centred[nearest.to_usize().unwrap().min(last)]
        } else {
            let i = source.floor().to_usize().unwrap().min(last - 1);
            let t = source - T::of_usize(i);
            let mag = mags[i] + t * (mags[i + 1] - mags[i]);
            let phase = phases[i] + t * princarg(phases[i + 1] - phases[i]);
            Complex::from_polar(mag, phase)
        };
        out.bins[k] = if k % 2 == 1 { -value } else { value };
    }
    out.make_edges_real();
    Ok(out)
}

/// STFT, per-frame [`warp_spectrum`], overlap-add. Duration is preserved.
pub fn vtln_transform<T: Real>(
    audio: &AudioBuffer<T>,
    spec: &WarpSpec<T>,
    cfg: &StftConfig,
) -> Result<AudioBuffer<T>> {
    if audio.is_empty() {
        return Err(crate::Error::Precondition("empty audio".into()));
    }
    let pad = cfg.window_size() / 2;
    let frames = stft_samples(&pad_both(audio.samples(), pad), cfg)
        .iter()
        .map(|f| warp_spectrum(f, spec))
        .collect::<Result<Vec<_>>>()?;
    let y = overlap_add(&frames, cfg, cfg.analysis_hop())?;
    AudioBuffer::from_clipped(unpad(y, pad, audio.len()), audio.sample_rate())
}
