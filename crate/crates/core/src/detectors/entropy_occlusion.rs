//! Occlusion detection from the frame-to-frame entropy ratio.

use crate::detectors::{Detector, DetectorConfig, TamperEvent, TamperKind};
use crate::error::Result;
use crate::frame::Frame;
use crate::imgproc::{entropy, histogram};

/// Emits an occlusion event when the intensity entropy of the current frame
/// falls below `alpha_entropy` times the previous frame's entropy. Covering
/// the lens collapses the intensity distribution, so the ratio plunges.
pub struct EntropyOcclusionDetector {
    config: DetectorConfig,
    previous_entropy: Option<f64>,
}

/// Below this, the previous entropy counts as zero and the ratio test is
/// skipped; an already-covered camera would otherwise divide by zero.
const ENTROPY_FLOOR: f64 = 1e-9;

impl EntropyOcclusionDetector {
    pub fn new(config: DetectorConfig) -> Self {
        Self {
            config,
            previous_entropy: None,
        }
    }
}

impl Detector for EntropyOcclusionDetector {
    fn id(&self) -> &'static str {
        "alg1"
    }

    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>> {
        let current = entropy(&histogram(frame))?;
        let event = match self.previous_entropy {
            Some(previous) => {
                let ratio = if previous < ENTROPY_FLOOR {
                    1.0
                } else {
                    current / previous
                };
                (ratio < self.config.alpha_entropy).then(|| {
                    TamperEvent::new(self.id(), TamperKind::Occlusion, frame.index(), ratio)
                })
            }
            None => None,
        };
        self.previous_entropy = Some(current);
        Ok(event)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn textured(index: u64) -> Frame {
        Frame::from_fn(32, 32, index, |x, y| (x * 23 ^ y * 151) as u8)
    }

    #[test]
    fn fires_when_texture_collapses() {
        let mut det = EntropyOcclusionDetector::new(DetectorConfig::default());
        assert!(det.step(&textured(0)).unwrap().is_none());
        let event = det.step(&Frame::filled(32, 32, 1, 0)).unwrap().unwrap();
        assert_eq!(event.kind, TamperKind::Occlusion);
        assert_eq!(event.frame_index, 1);
        assert_eq!(event.score, 0.0);
    }

    #[test]
    fn quiet_on_identical_frames() {
        let mut det = EntropyOcclusionDetector::new(DetectorConfig::default());
        for i in 0..5 {
            assert!(det.step(&textured(0).with_index(i)).unwrap().is_none());
        }
    }

    #[test]
    fn never_fires_on_first_frame() {
        let mut det = EntropyOcclusionDetector::new(DetectorConfig::default());
        assert!(det.step(&Frame::filled(8, 8, 0, 0)).unwrap().is_none());
    }

    #[test]
    fn covered_camera_does_not_divide_by_zero() {
        let mut det = EntropyOcclusionDetector::new(DetectorConfig::default());
        det.step(&Frame::filled(8, 8, 0, 0)).unwrap();
        // Previous entropy is 0; ratio defined as 1, no emission.
        assert!(det.step(&Frame::filled(8, 8, 1, 0)).unwrap().is_none());
        assert!(det.step(&textured(2)).unwrap().is_none());
    }

    #[test]
    fn threshold_matches_measured_ratio() {
        // Two frames whose entropies are computed directly from the
        // definition; the decision must match the measured ratio.
        let busy = textured(0);
        let dull = Frame::from_fn(32, 32, 1, |x, _| if x % 8 == 0 { 40 } else { 200 });
        let e_busy = entropy(&histogram(&busy)).unwrap();
        let e_dull = entropy(&histogram(&dull)).unwrap();
        let ratio = e_dull / e_busy;

        let mut cfg = DetectorConfig::default();
        cfg.alpha_entropy = 0.5;
        let mut det = EntropyOcclusionDetector::new(cfg);
        det.step(&busy).unwrap();
        let event = det.step(&dull).unwrap();
        assert_eq!(event.is_some(), ratio < 0.5);
        if let Some(event) = event {
            assert!((event.score - ratio).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_threshold_disables_the_detector() {
        let mut cfg = DetectorConfig::default();
        cfg.alpha_entropy = 0.0;
        let mut det = EntropyOcclusionDetector::new(cfg);
        det.step(&textured(0)).unwrap();
        assert!(det.step(&Frame::filled(32, 32, 1, 0)).unwrap().is_none());
    }

    #[test]
    fn decision_is_invariant_under_palette_permutation() {
        // Entropy depends only on the histogram multiset, so remapping the
        // gray levels of both frames identically cannot change the decision.
        let permute = |v: u8| v.wrapping_mul(167).wrapping_add(13);
        let a = textured(0);
        let b = Frame::from_fn(32, 32, 1, |x, y| ((x / 4) * 8 + y / 8) as u8);

        let run = |a: &Frame, b: &Frame| {
            let mut det = EntropyOcclusionDetector::new(DetectorConfig::default());
            det.step(a).unwrap();
            det.step(b).unwrap().is_some()
        };
        let mapped_a = Frame::from_fn(32, 32, 0, |x, y| permute(a.get(x, y)));
        let mapped_b = Frame::from_fn(32, 32, 1, |x, y| permute(b.get(x, y)));
        assert_eq!(run(&a, &b), run(&mapped_a, &mapped_b));
    }
}
