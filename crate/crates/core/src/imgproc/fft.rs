//! 2D discrete Fourier transform and the high-frequency coefficient census.
//!
//! The forward transform carries the full `1/(width*height)` normalization;
//! the inverse carries none, so `ifft2(fft2(f)) = f`.

use std::cell::RefCell;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::frame::Frame;

/// Complex spectrum of a frame, row-major, same dimensions.
#[derive(Debug, Clone)]
pub struct FftSpectrum {
    width: usize,
    height: usize,
    coeffs: Vec<Complex<f64>>,
}

impl FftSpectrum {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn coeffs(&self) -> &[Complex<f64>] {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Complex<f64> {
        self.coeffs[y * self.width + x]
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn fft2_core(data: &mut [Complex<f64>], width: usize, height: usize, forward: bool) {
    PLANNER.with(|planner| {
        let mut planner = planner.borrow_mut();
        let direction = if forward {
            rustfft::FftDirection::Forward
        } else {
            rustfft::FftDirection::Inverse
        };
        let row_fft = planner.plan_fft(width, direction);
        for row in data.chunks_exact_mut(width) {
            row_fft.process(row);
        }

        let col_fft = planner.plan_fft(height, direction);
        let mut column = vec![Complex::default(); height];
        for x in 0..width {
            for y in 0..height {
                column[y] = data[y * width + x];
            }
            col_fft.process(&mut column);
            for y in 0..height {
                data[y * width + x] = column[y];
            }
        }
    });
}

/// Forward 2D DFT with `1/(width*height)` normalization.
pub fn fft2(frame: &Frame) -> FftSpectrum {
    let (w, h) = (frame.width(), frame.height());
    let mut coeffs: Vec<Complex<f64>> = frame
        .luma()
        .iter()
        .map(|&v| Complex::new(f64::from(v), 0.0))
        .collect();
    fft2_core(&mut coeffs, w, h, true);
    let scale = 1.0 / (w * h) as f64;
    for c in &mut coeffs {
        *c *= scale;
    }
    FftSpectrum {
        width: w,
        height: h,
        coeffs,
    }
}

/// Unnormalized inverse 2D DFT; exact inverse of [`fft2`].
pub fn ifft2(spec: &FftSpectrum) -> Vec<Complex<f64>> {
    let mut data = spec.coeffs.clone();
    fft2_core(&mut data, spec.width, spec.height, false);
    data
}

/// Whether shifted spectrum position `(u, v)` lies in the high-frequency
/// region: after moving DC to the grid center, the Chebyshev distance from
/// the center must exceed `min(width, height) / 4`.
#[inline]
fn in_hf_region(u: usize, v: usize, width: usize, height: usize) -> bool {
    let shifted_x = (u + width / 2) % width;
    let shifted_y = (v + height / 2) % height;
    let dx = (shifted_x as f64 - width as f64 / 2.0).abs();
    let dy = (shifted_y as f64 - height as f64 / 2.0).abs();
    dx.max(dy) > (width.min(height) as f64) / 4.0
}

/// Number of spectrum cells in the high-frequency region.
pub fn fft_hf_region_len(width: usize, height: usize) -> u64 {
    let mut count = 0u64;
    for v in 0..height {
        for u in 0..width {
            if in_hf_region(u, v, width, height) {
                count += 1;
            }
        }
    }
    count
}

/// Counts high-frequency coefficients with `|F(u,v)| > eps`.
pub fn count_hf_nonzero_fft(spec: &FftSpectrum, eps: f64) -> u64 {
    let mut count = 0u64;
    for v in 0..spec.height {
        for u in 0..spec.width {
            if in_hf_region(u, v, spec.width, spec.height) && spec.get(u, v).norm() > eps {
                count += 1;
            }
        }
    }
    count
}
