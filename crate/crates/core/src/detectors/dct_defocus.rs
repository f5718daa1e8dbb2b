//! Defocus detection from the population of high-frequency DCT coefficients.

use crate::detectors::{Detector, DetectorConfig, TamperEvent, TamperKind};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::imgproc::{count_hf_nonzero_dct, dct2};

/// Counts cosine-spectrum coefficients above `eps_dct` in the high-frequency
/// quadrant. The first frame freezes the baseline count `Q_base`; later
/// frames emit a defocus event whenever their count drops below
/// `beta_l * Q_base`. Blur drains exactly that census.
pub struct DctDefocusDetector {
    config: DetectorConfig,
    baseline: Option<u64>,
    unusable: bool,
}

impl DctDefocusDetector {
    pub fn new(config: DetectorConfig) -> Self {
        Self {
            config,
            baseline: None,
            unusable: false,
        }
    }

    fn census(&self, frame: &Frame) -> u64 {
        count_hf_nonzero_dct(&dct2(frame), self.config.eps_dct)
    }
}

impl Detector for DctDefocusDetector {
    fn id(&self) -> &'static str {
        "alg3"
    }

    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>> {
        if self.unusable {
            return Ok(None);
        }
        let count = self.census(frame);
        let Some(baseline) = self.baseline else {
            // The first frame is taken as the clear view of the scene.
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

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::imgproc::box_blur;

    pub(crate) fn textured(index: u64) -> Frame {
        Frame::from_fn(64, 48, index, |x, y| {
            let checker = if (x + y) % 2 == 0 { 0u8 } else { 90 };
            checker.wrapping_add((x * 51 ^ y * 87).wrapping_mul(29) as u8 / 2)
        })
    }

    #[test]
    fn steady_texture_stays_quiet() {
        let mut det = DctDefocusDetector::new(DetectorConfig::default());
        for i in 0..6 {
            assert!(det.step(&textured(0).with_index(i)).unwrap().is_none());
        }
    }

    #[test]
    fn blur_fires_defocus() {
        let cfg = DetectorConfig::default();
        let base = textured(0);
        let blurred = box_blur(&box_blur(&box_blur(&base, 5), 5), 5).with_index(1);

        // Quadrant-count oracle on the pair.
        let q_base = count_hf_nonzero_dct(&dct2(&base), cfg.eps_dct);
        let q_blur = count_hf_nonzero_dct(&dct2(&blurred), cfg.eps_dct);
        assert!(q_base > 0);
        assert!((q_blur as f64) < q_base as f64 * cfg.beta_l, "{q_blur} vs {q_base}");

        let mut det = DctDefocusDetector::new(cfg);
        det.step(&base).unwrap();
        let event = det.step(&blurred).unwrap().expect("defocus event");
        assert_eq!(event.kind, TamperKind::Defocus);
        assert!((event.score - q_blur as f64 / q_base as f64).abs() < 1e-12);
    }

    #[test]
    fn flat_reference_frame_is_a_config_error_once() {
        let mut det = DctDefocusDetector::new(DetectorConfig::default());
        assert!(matches!(
            det.step(&Frame::filled(32, 32, 0, 128)),
            Err(Error::Config(_))
        ));
        // Reported once; the detector goes quiet afterwards.
        assert!(det.step(&textured(1)).unwrap().is_none());
    }

    #[test]
    fn zero_beta_disables_the_detector() {
        let mut cfg = DetectorConfig::default();
        cfg.beta_l = 0.0;
        let mut det = DctDefocusDetector::new(cfg);
        det.step(&textured(0)).unwrap();
        let blurred = box_blur(&textured(0), 5).with_index(1);
        assert!(det.step(&blurred).unwrap().is_none());
    }
}
