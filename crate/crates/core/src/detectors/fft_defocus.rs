//! Defocus detection from the population of high-frequency FFT coefficients.

use crate::detectors::{Detector, DetectorConfig, TamperEvent, TamperKind};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::imgproc::{count_hf_nonzero_fft, fft2};

/// Same baseline-and-ratio contract as [`super::DctDefocusDetector`], but the
/// census runs over the Fourier spectrum, whose high-frequency region spans
/// everything outside the central rectangle rather than one quadrant.
pub struct FftDefocusDetector {
    config: DetectorConfig,
    baseline: Option<u64>,
    unusable: bool,
}

impl FftDefocusDetector {
    pub fn new(config: DetectorConfig) -> Self {
        Self {
            config,
            baseline: None,
            unusable: false,
        }
    }

    fn census(&self, frame: &Frame) -> u64 {
        count_hf_nonzero_fft(&fft2(frame), self.config.eps_fft)
    }
}

impl Detector for FftDefocusDetector {
    fn id(&self) -> &'static str {
        "alg4"
    }

    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>> {
        if self.unusable {
            return Ok(None);
        }
        let count = self.census(frame);
        let Some(baseline) = self.baseline else {
            if count == 0 {
                self.unusable = true;
                return Err(Error::Config(format!(
                    "{}: reference frame has no high-frequency content above eps; \
                     sharpness loss cannot be measured on this scene",
                    self.id()
                )));
            }
            self.baseline = Some(count);
            return Ok(None);
        };
        if (count as f64) < baseline as f64 * self.config.beta_l {
            return Ok(Some(TamperEvent::new(
                self.id(),
                TamperKind::Defocus,
                frame.index(),
                count as f64 / baseline as f64,
            )));
        }
        Ok(None)
    }
}
