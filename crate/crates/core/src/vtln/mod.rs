//! Vocal tract length normalization: monotone warping of the normalized
//! frequency axis applied to short-time spectra.

mod spectrum;
mod warp;

pub use spectrum::{vtln_transform, warp_spectrum};
pub use warp::{grid, warp_inverse, warp_value, WarpKind, WarpSpec, MONOTONICITY_GRID};
