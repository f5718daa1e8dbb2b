//! Orthonormal 2D DCT-II and the high-frequency coefficient census.
//!
//! The transform is separable with per-axis basis
//! `T[k][i] = s_k cos(pi (2i+1) k / (2n))`, `s_0 = sqrt(1/n)`,
//! `s_k = sqrt(2/n)` otherwise. Orthonormality makes the inverse the
//! transpose and preserves energy exactly (Parseval), which the self-test
//! suite checks. The DC coefficient equals `mean * sqrt(width * height)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::rc::Rc;

use crate::frame::Frame;

/// Real cosine spectrum of a frame, row-major, same dimensions.
#[derive(Debug, Clone)]
pub struct DctSpectrum {
    width: usize,
    height: usize,
    coeffs: Vec<f64>,
}

impl DctSpectrum {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.coeffs[y * self.width + x]
    }
}

thread_local! {
    static BASIS_CACHE: RefCell<HashMap<usize, Rc<Vec<f64>>>> = RefCell::new(HashMap::new());
}

/// Orthonormal DCT-II basis matrix for length `n`, flattened `[k * n + i]`.
fn basis(n: usize) -> Rc<Vec<f64>> {
    BASIS_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| {
                let mut table = vec![0.0f64; n * n];
                let norm0 = (1.0 / n as f64).sqrt();
                let norm = (2.0 / n as f64).sqrt();
                for k in 0..n {
                    let scale = if k == 0 { norm0 } else { norm };
                    for i in 0..n {
                        table[k * n + i] =
                            scale * (PI * (2 * i + 1) as f64 * k as f64 / (2 * n) as f64).cos();
                    }
                }
                Rc::new(table)
            })
            .clone()
    })
}

/// Applies the basis (forward) or its transpose (inverse) to every row of an
/// `n`-column row-major buffer.
fn transform_rows(data: &mut [f64], n: usize, forward: bool) {
    let table = basis(n);
    let mut scratch = vec![0.0f64; n];
    for row in data.chunks_exact_mut(n) {
        for (k, out) in scratch.iter_mut().enumerate() {
            let mut acc = 0.0;
            if forward {
                let base = &table[k * n..(k + 1) * n];
                for (i, &v) in row.iter().enumerate() {
                    acc += base[i] * v;
                }
            } else {
                for (i, &v) in row.iter().enumerate() {
                    acc += table[i * n + k] * v;
                }
            }
            *out = acc;
        }
        row.copy_from_slice(&scratch);
    }
}

fn transpose(data: &[f64], width: usize, height: usize) -> Vec<f64> {
    let mut out = vec![0.0f64; data.len()];
    for y in 0..height {
        for x in 0..width {
            out[x * height + y] = data[y * width + x];
        }
    }
    out
}

fn dct2_core(mut data: Vec<f64>, width: usize, height: usize, forward: bool) -> Vec<f64> {
    transform_rows(&mut data, width, forward);
    let mut transposed = transpose(&data, width, height);
    transform_rows(&mut transposed, height, forward);
    transpose(&transposed, height, width)
}

/// Forward orthonormal 2D DCT-II of a frame.
pub fn dct2(frame: &Frame) -> DctSpectrum {
    let data: Vec<f64> = frame.luma().iter().map(|&v| f64::from(v)).collect();
    DctSpectrum {
        width: frame.width(),
        height: frame.height(),
        coeffs: dct2_core(data, frame.width(), frame.height(), true),
    }
}

/// Inverse transform back to real samples, row-major.
pub fn idct2(spec: &DctSpectrum) -> Vec<f64> {
    dct2_core(spec.coeffs.clone(), spec.width, spec.height, false)
}

/// Bottom-right quadrant holding the high frequencies of both axes:
/// columns `ceil(w/2)..w`, rows `ceil(h/2)..h`.
pub fn dct_hf_region(width: usize, height: usize) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
    (width.div_ceil(2)..width, height.div_ceil(2)..height)
}

/// Number of cells in the high-frequency quadrant.
pub fn dct_hf_region_len(width: usize, height: usize) -> u64 {
    let (xs, ys) = dct_hf_region(width, height);
    (xs.len() * ys.len()) as u64
}

/// Counts coefficients in the high-frequency quadrant with `|C(x,y)| > eps`.
///
/// A plain sign test is meaningless on floating-point spectra, so magnitudes
/// are compared against `eps` instead (default 1.0 in `DetectorConfig`).
pub fn count_hf_nonzero_dct(spec: &DctSpectrum, eps: f64) -> u64 {
    let (xs, ys) = dct_hf_region(spec.width, spec.height);
    let mut count = 0u64;
    for y in ys {
        let row = &spec.coeffs[y * spec.width..(y + 1) * spec.width];
        for x in xs.clone() {
            if row[x].abs() > eps {
                count += 1;
            }
        }
    }
    count
}
