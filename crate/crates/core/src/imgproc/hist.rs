//! Intensity histograms and Shannon entropy.

use crate::error::{Error, Result};
use crate::frame::Frame;

/// 256-bin intensity histogram; bin `k` counts pixels of intensity `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    bins: [u64; 256],
}

impl Histogram {
    pub fn of(frame: &Frame) -> Self {
        let mut bins = [0u64; 256];
        for &v in frame.luma() {
            bins[v as usize] += 1;
        }
        Self { bins }
    }

    pub fn from_bins(bins: [u64; 256]) -> Self {
        Self { bins }
    }

    pub fn bins(&self) -> &[u64; 256] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }

    /// Intensity level with the largest count; ties resolve to the lowest level.
    pub fn peak_level(&self) -> u8 {
        let mut best = 0usize;
        for (k, &count) in self.bins.iter().enumerate() {
            if count > self.bins[best] {
                best = k;
            }
        }
        best as u8
    }

    /// Sum of the bins within `half_width` levels of `center`. The window is
    /// truncated at 0 and 255 rather than wrapping.
    pub fn window_sum(&self, center: u8, half_width: usize) -> u64 {
        let lo = (center as usize).saturating_sub(half_width);
        let hi = (center as usize + half_width).min(255);
        self.bins[lo..=hi].iter().sum()
    }
}

/// Counts pixel intensities of a frame.
pub fn histogram(frame: &Frame) -> Histogram {
    Histogram::of(frame)
}

/// Shannon entropy of the intensity distribution in bits:
/// `E = -sum_k p_k log2(p_k)` with `p_k = bins[k] / total`.
/// Empty bins contribute nothing; an all-empty histogram is a domain error.
pub fn entropy(hist: &Histogram) -> Result<f64> {
    let total = hist.total();
    if total == 0 {
        return Err(Error::Domain("entropy of an empty histogram".into()));
    }
    let total = total as f64;
    let mut e = 0.0;
    for &count in hist.bins() {
        if count > 0 {
            let p = count as f64 / total;
            e -= p * p.log2();
        }
    }
    Ok(e)
}
