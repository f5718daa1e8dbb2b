//! Canonical grayscale frame type shared by every stage of the pipeline.

use crate::error::{Error, Result};

/// One grayscale video frame: 8-bit luma samples stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: usize,
    height: usize,
    index: u64,
    luma: Vec<u8>,
}

impl Frame {
    /// Builds a frame, checking that `luma` covers exactly `width * height`
    /// samples and that both dimensions are at least 1.
    pub fn new(width: usize, height: usize, index: u64, luma: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Domain(format!(
                "frame dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if luma.len() != width * height {
            return Err(Error::Domain(format!(
                "luma length {} does not match {width}x{height}",
                luma.len()
            )));
        }
        Ok(Self {
            width,
            height,
            index,
            luma,
        })
    }

    /// Constant-valued frame.
    pub fn filled(width: usize, height: usize, index: u64, value: u8) -> Self {
        Self::new(width, height, index, vec![value; width * height])
            .expect("filled frame dimensions")
    }

    /// Builds a frame from a per-pixel function of `(x, y)`.
    pub fn from_fn(
        width: usize,
        height: usize,
        index: u64,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Self {
        let mut luma = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                luma.push(f(x, y));
            }
        }
        Self::new(width, height, index, luma).expect("from_fn frame dimensions")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn luma(&self) -> &[u8] {
        &self.luma
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        debug_assert!(x < self.width && y < self.height);
        self.luma[y * self.width + x]
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.luma[y * self.width..(y + 1) * self.width]
    }

    /// Same pixels under a new stream ordinal.
    pub fn with_index(mut self, index: u64) -> Self {
        self.index = index;
        self
    }

    pub fn same_dimensions(&self, other: &Frame) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub(crate) fn into_luma(self) -> Vec<u8> {
        self.luma
    }
}

/// Converts an RGB triple to luma with ITU-R BT.601 weights,
/// `round(0.299 r + 0.587 g + 0.114 b)`, clamped to `[0, 255]`.
pub fn rgb_to_luma(r: u8, g: u8, b: u8) -> u8 {
    let y = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
    y.round().clamp(0.0, 255.0) as u8
}
