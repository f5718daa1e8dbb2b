//! Sobel gradients, Otsu thresholding, and binary edge maps.

use crate::error::{Error, Result};
use crate::frame::Frame;

/// Row-major grid of real values with frame dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarGrid {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || values.len() != width * height {
            return Err(Error::Domain(format!(
                "grid of {} values is not {width}x{height}",
                values.len()
            )));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }
}

/// Row-major boolean grid with frame dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMap {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMap {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || bits.len() != width * height {
            return Err(Error::Domain(format!(
                "map of {} bits is not {width}x{height}",
                bits.len()
            )));
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self::new(width, height, vec![false; width * height]).expect("zero map dimensions")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn count_set(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// Number of positions where the two maps disagree.
    pub fn diff_count(&self, other: &BinaryMap) -> Result<u64> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::Domain(format!(
                "map dimensions differ: {}x{} vs {}x{}",
                self.width, self.height, other.width, other.height
            )));
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count() as u64)
    }

    pub fn complement(&self) -> BinaryMap {
        BinaryMap {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

/// Gradient magnitude per pixel using the standard 3x3 Sobel kernels.
/// The one-pixel border is set to 0; frames smaller than 3x3 are rejected.
pub fn sobel_magnitude(frame: &Frame) -> Result<ScalarGrid> {
    let (w, h) = (frame.width(), frame.height());
    if w < 3 || h < 3 {
        return Err(Error::Domain(format!(
            "sobel needs at least 3x3, got {w}x{h}"
        )));
    }
    let mut values = vec![0.0f64; w * h];
    for y in 1..h - 1 {
        let above = frame.row(y - 1);
        let here = frame.row(y);
        let below = frame.row(y + 1);
        let out = &mut values[y * w..(y + 1) * w];
        for x in 1..w - 1 {
            let (l, r) = (x - 1, x + 1);
            let gx = (above[r] as i32 + 2 * here[r] as i32 + below[r] as i32)
                - (above[l] as i32 + 2 * here[l] as i32 + below[l] as i32);
            let gy = (below[l] as i32 + 2 * below[x] as i32 + below[r] as i32)
                - (above[l] as i32 + 2 * above[x] as i32 + above[r] as i32);
            out[x] = ((gx * gx + gy * gy) as f64).sqrt();
        }
    }
    ScalarGrid::new(w, h, values)
}

/// Otsu's threshold over a 256-bin quantization of `[0, max]`.
///
/// Returns the boundary value of the cut maximizing between-class variance,
/// ties resolved toward the lower cut. A grid whose values are all identical
/// returns that value.
pub fn otsu_threshold(grid: &ScalarGrid) -> f64 {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in grid.values() {
        min = min.min(v);
        max = max.max(v);
    }
    if min == max {
        return max;
    }

    let mut bins = [0u64; 256];
    for &v in grid.values() {
        bins[quantize(v, max)] += 1;
    }
    let cut = otsu_cut(&bins);
    (cut + 1) as f64 * max / 256.0
}

#[inline]
fn quantize(v: f64, max: f64) -> usize {
    ((v / max * 256.0) as usize).min(255)
}

/// Index `c` of the best cut: class 0 is bins `0..=c`, class 1 the rest.
fn otsu_cut(bins: &[u64; 256]) -> usize {
    let total: u64 = bins.iter().sum();
    let total_f = total as f64;
    let full_sum: f64 = bins
        .iter()
        .enumerate()
        .map(|(k, &c)| k as f64 * c as f64)
        .sum();

    let mut best_cut = 0usize;
    let mut best_sigma = f64::NEG_INFINITY;
    let mut weight0 = 0u64;
    let mut sum0 = 0.0f64;
    for cut in 0..255usize {
        weight0 += bins[cut];
        sum0 += cut as f64 * bins[cut] as f64;
        if weight0 == 0 {
            continue;
        }
        let weight1 = total - weight0;
        if weight1 == 0 {
            break;
        }
        let mean0 = sum0 / weight0 as f64;
        let mean1 = (full_sum - sum0) / weight1 as f64;
        let sigma =
            (weight0 as f64 / total_f) * (weight1 as f64 / total_f) * (mean0 - mean1).powi(2);
        if sigma > best_sigma {
            best_sigma = sigma;
            best_cut = cut;
        }
    }
    best_cut
}

/// Binary contour image with its edge-pixel count.
#[derive(Debug, Clone)]
pub struct EdgeMap {
    pub map: BinaryMap,
    /// Number of set pixels.
    pub count: u64,
}

/// Contour of a frame: Sobel magnitude, Otsu threshold, then `>= threshold`.
///
/// A frame with a flat gradient field (e.g. a constant frame) has no contour
/// and yields the all-zero map.
pub fn edge_map(frame: &Frame) -> Result<EdgeMap> {
    let grid = sobel_magnitude(frame)?;
    let first = grid.values()[0];
    if grid.values().iter().all(|&v| v == first) {
        return Ok(EdgeMap {
            map: BinaryMap::zeros(frame.width(), frame.height()),
            count: 0,
        });
    }
    let threshold = otsu_threshold(&grid);
    let bits: Vec<bool> = grid.values().iter().map(|&v| v >= threshold).collect();
    let map = BinaryMap::new(frame.width(), frame.height(), bits)?;
    let count = map.count_set();
    Ok(EdgeMap { map, count })
}
