//! Speech de-identification toolkit.
//!
//! Two families of voice transforms are provided: a peak-locked phase
//! vocoder for pitch shifting ([`vocoder`]) and frequency-axis warping of
//! short-time spectra ([`vtln`]). A pitch-based gender recognizer
//! ([`gender`]) and an experiment harness ([`harness`]) measure how strongly
//! each transform hides the speaker's gender as the modification degree
//! grows.
//!
//! All DSP code is generic over the sample scalar ([`Real`], implemented for
//! `f32` and `f64`). The experiment harness works in `f64`; the aliases below
//! name the concrete types it uses.

pub mod error;
pub mod gender;
pub mod harness;
pub mod num;
pub mod signal;
pub mod vocoder;
pub mod vtln;

pub use error::{Error, Result};
pub use gender::{classify_gender, estimate_pitch, Gender, GenderConfig, GenderLabel, PitchConfig, PitchEstimate};
pub use num::Real;
pub use signal::{istft, load_wav, resample, save_wav, stft, AudioBuffer, SpectralFrame, StftConfig, WindowKind};
pub use vocoder::{pitch_shift, Neighborhood, PeakSet, VocoderState, VocoderVariant};
pub use vtln::{vtln_transform, warp_spectrum, WarpKind, WarpSpec};

/// Double-precision audio buffer.
pub type Audio = signal::AudioBuffer<f64>;
/// Single-precision audio buffer.
pub type AudioF32 = signal::AudioBuffer<f32>;
/// Double-precision spectral frame.
pub type Frame = signal::SpectralFrame<f64>;
/// Single-precision spectral frame.
pub type FrameF32 = signal::SpectralFrame<f32>;
/// Double-precision warp specification.
pub type Warp = vtln::WarpSpec<f64>;
/// Double-precision phase-vocoder state.
pub type State = vocoder::VocoderState<f64>;
/// Double-precision pitch estimate.
pub type Pitch = gender::PitchEstimate<f64>;
