use crate::error::{Error, Result};
use crate::num::Real;
use crate::signal::SpectralFrame;

/// How many nearest neighbours a peak must strictly exceed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Neighborhood {
    /// One bin on each side.
    Two,
    /// Two bins on each side.
    #[default]
    Four,
}

impl Neighborhood {
    fn reach(self) -> usize {
        match self {
            Neighborhood::Two => 1,
            Neighborhood::Four => 2,
        }
    }
}

impl TryFrom<usize> for Neighborhood {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Neighborhood::Two),
            4 => Ok(Neighborhood::Four),
            _ => Err(Error::Parameter(format!("peak neighborhood must be 2 or 4, got {n}"))),
        }
    }
}

/// Peaks and their regions of influence. Region `i` is
/// `bounds[i]..bounds[i + 1]` and contains `peaks[i]`; the regions tile
/// `0..num_bins`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakSet {
    peaks: Vec<usize>,
    bounds: Vec<usize>,
}

impl PeakSet {
    /// A single region spanning the frame, anchored at `anchor`.
    pub fn whole(anchor: usize, num_bins: usize) -> Self {
        assert!(anchor < num_bins);
        Self { peaks: vec![anchor], bounds: vec![0, num_bins] }
    }

    pub fn peaks(&self) -> &[usize] {
        &self.peaks
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn num_bins(&self) -> usize {
        *self.bounds.last().unwrap()
    }

    /// `(peak, region)` pairs in ascending order.
    pub fn regions(&self) -> impl Iterator<Item = (usize, std::ops::Range<usize>)> + '_ {
        self.peaks
            .iter()
            .zip(self.bounds.windows(2))
            .map(|(&p, b)| (p, b[0]..b[1]))
    }

    /// Checks the partition invariant: no gaps, no overlaps, each peak inside its region.
    pub fn is_partition(&self) -> bool {
        self.bounds.len() == self.peaks.len() + 1
            && self.bounds[0] == 0
            && self.bounds.windows(2).all(|b| b[0] < b[1])
            && self.regions().all(|(p, r)| r.contains(&p))
    }
}

pub fn detect_peaks<T: Real>(frame: &SpectralFrame<T>, neighborhood: Neighborhood) -> Vec<usize> {
    detect_peaks_in(&frame.magnitudes(), neighborhood)
}

/// Bin `k` is a peak iff its magnitude strictly exceeds every existing
/// neighbour within the neighbourhood reach.
pub fn detect_peaks_in<T: Real>(magnitudes: &[T], neighborhood: Neighborhood) -> Vec<usize> {
    let reach = neighborhood.reach();
    let n = magnitudes.len();
    (0..n)
        .filter(|&k| {
            let lo = k.saturating_sub(reach);
            let hi = (k + reach).min(n - 1);
            let m = magnitudes[k];
            (lo..=hi).all(|j| j == k || m > magnitudes[j])
        })
        .collect()
}

/// Places each boundary at the lowest-magnitude bin strictly between two
/// consecutive peaks (lowest index on ties); that bin opens the next region.
pub fn regions_of_influence<T: Real>(peaks: &[usize], magnitudes: &[T]) -> Result<PeakSet> {
    if peaks.is_empty() {
        return Err(Error::Degenerate("no spectral peaks".into()));
    }
    let n = magnitudes.len();
    if peaks.windows(2).any(|p| p[0] >= p[1]) || *peaks.last().unwrap() >= n {
        return Err(Error::Parameter("peaks must be ascending bin indices".into()));
    }
    let mut bounds = Vec::with_capacity(peaks.len() + 1);
    bounds.push(0);
    for pair in peaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b - a < 2 {
            return Err(Error::Parameter(format!("adjacent peaks {a} and {b}")));
        }
        let mut best = a + 1;
        for k in a + 2..b {
            if magnitudes[k] < magnitudes[best] {
                best = k;
            }
        }
        bounds.push(best);
    }
    bounds.push(n);
    Ok(PeakSet { peaks: peaks.to_vec(), bounds })
}

/// Peak detection plus regions, falling back to one region anchored at the
/// strongest bin when nothing qualifies as a peak.
pub fn analyze_peaks<T: Real>(magnitudes: &[T], neighborhood: Neighborhood) -> PeakSet {
    let peaks = detect_peaks_in(magnitudes, neighborhood);
    match regions_of_influence(&peaks, magnitudes) {
        Ok(set) => set,
        Err(_) => {
            let anchor = magnitudes
                .iter()
                .enumerate()
                .fold(0, |best, (k, &m)| if m > magnitudes[best] { k } else { best });
            PeakSet::whole(anchor, magnitudes.len())
        }
    }
}
