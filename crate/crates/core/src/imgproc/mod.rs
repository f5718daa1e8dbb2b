//! Pure, stateless image-processing primitives shared by the detectors.
//!
//! Everything here is a plain function of its inputs and safe to call from
//! any number of threads.

mod blur;
mod dct;
mod edges;
mod fft;
mod hist;

pub use blur::box_blur;
pub use dct::{count_hf_nonzero_dct, dct2, dct_hf_region, dct_hf_region_len, idct2, DctSpectrum};
pub use edges::{edge_map, otsu_threshold, sobel_magnitude, BinaryMap, EdgeMap, ScalarGrid};
pub use fft::{count_hf_nonzero_fft, fft2, fft_hf_region_len, ifft2, FftSpectrum};
pub use hist::{entropy, histogram, Histogram};
