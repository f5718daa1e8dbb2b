//! Kind-agnostic tamper detection from contour churn between frames.

use crate::detectors::{Detector, DetectorConfig, TamperEvent, TamperKind};
use crate::error::Result;
use crate::frame::Frame;
use crate::imgproc::{edge_map, BinaryMap};

/// Compares consecutive binary edge maps. With `N` the current edge count
/// and `N_d` the number of positions where the maps disagree, tampering is
/// flagged when `N_d > alpha_edge * N`: occlusion erases contours, defocus
/// degrades them, motion relocates them, and all three inflate `N_d`
/// relative to what survives.
///
/// When the current frame has no contour at all (`N = 0`, e.g. a covered
/// lens), the rule would compare against zero and lose all selectivity, so
/// the detector instead requires the disagreement to exceed
/// `(alpha_edge - 1)` times the previous edge count: a sufficient share of
/// the previous contour must actually have vanished.
pub struct EdgeChangeDetector {
    config: DetectorConfig,
    previous: Option<(BinaryMap, u64)>,
}

impl EdgeChangeDetector {
    pub fn new(config: DetectorConfig) -> Self {
        Self {
            config,
            previous: None,
        }
    }
}

impl Detector for EdgeChangeDetector {
    fn id(&self) -> &'static str {
        "alg5"
    }

    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>> {
        let edges = edge_map(frame)?;
        let mut event = None;
        if let Some((previous_map, previous_count)) = &self.previous {
            let disagreement = edges.map.diff_count(previous_map)?;
            let alpha = self.config.alpha_edge;
            let fired = if edges.count > 0 {
                disagreement as f64 > alpha * edges.count as f64
            } else {
                disagreement as f64 > (alpha - 1.0) * *previous_count as f64
            };
            if fired {
                event = Some(TamperEvent::new(
                    self.id(),
                    TamperKind::Generic,
                    frame.index(),
                    disagreement as f64 / edges.count.max(1) as f64,
                ));
            }
        }
        self.previous = Some((edges.map, edges.count));
        Ok(event)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Flat field with sparse high-contrast speckles: the edge map is a
    /// sparse, irregular set of rings that decorrelates under translation.
    fn textured(index: u64) -> Frame {
        Frame::from_fn(64, 48, index, |x, y| {
            let mut h = (y * 64 + x) as u64;
            h ^= h >> 4;
            h = h.wrapping_mul(0x2545_f491_4f6c_dd1d);
            h ^= h >> 7;
            if h % 41 == 0 {
                220
            } else {
                60
            }
        })
    }

    #[test]
    fn quiet_on_identical_frames() {
        let mut det = EdgeChangeDetector::new(DetectorConfig::default());
        det.step(&textured(0)).unwrap();
        assert!(det.step(&textured(1)).unwrap().is_none());
    }

    #[test]
    fn texture_collapse_fires_via_the_degenerate_rule() {
        let base = textured(0);
        let covered = Frame::filled(64, 48, 1, 10);

        // Edge-map oracle: the covered frame has no contour, and every
        // previous edge pixel disagrees.
        let prev_edges = edge_map(&base).unwrap();
        let cur_edges = edge_map(&covered).unwrap();
        assert_eq!(cur_edges.count, 0);
        assert_eq!(
            cur_edges.map.diff_count(&prev_edges.map).unwrap(),
            prev_edges.count
        );

        let mut det = EdgeChangeDetector::new(DetectorConfig::default());
        det.step(&base).unwrap();
        let event = det.step(&covered).unwrap().expect("tamper event");
        assert_eq!(event.kind, TamperKind::Generic);
        assert_eq!(event.frame_index, 1);
    }

    #[test]
    fn blank_scene_stays_quiet() {
        let mut det = EdgeChangeDetector::new(DetectorConfig::default());
        det.step(&Frame::filled(16, 16, 0, 0)).unwrap();
        assert!(det.step(&Frame::filled(16, 16, 1, 0)).unwrap().is_none());
    }

    #[test]
    fn large_shift_fires() {
        let base = textured(0);
        // Shift by a quarter width: edges land between the old ones, so the
        // maps disagree nearly everywhere either has a contour.
        let shifted = Frame::from_fn(64, 48, 1, |x, y| base.get((x + 16 + 1) % 64, y));

        let prev_edges = edge_map(&base).unwrap();
        let cur_edges = edge_map(&shifted).unwrap();
        let disagreement = cur_edges.map.diff_count(&prev_edges.map).unwrap();
        assert!(disagreement as f64 > 1.3 * cur_edges.count as f64);

        let mut det = EdgeChangeDetector::new(DetectorConfig::default());
        det.step(&base).unwrap();
        let event = det.step(&shifted).unwrap().expect("tamper event");
        let expected_score = disagreement as f64 / cur_edges.count as f64;
        assert!((event.score - expected_score).abs() < 1e-12);
    }

    #[test]
    fn decision_survives_a_constant_intensity_offset() {
        // Sobel magnitudes ignore constant offsets, so offsetting both
        // frames (within clipping headroom) cannot change the decision.
        let run = |offset: u8| {
            let a = Frame::from_fn(64, 48, 0, |x, y| textured(0).get(x, y) / 2 + offset);
            let b = Frame::from_fn(64, 48, 1, |x, y| {
                textured(0).get((x + 17) % 64, y) / 2 + offset
            });
            let mut det = EdgeChangeDetector::new(DetectorConfig::default());
            det.step(&a).unwrap();
            det.step(&b).unwrap().is_some()
        };
        assert_eq!(run(0), run(40));
    }

    #[test]
    fn huge_alpha_disables_the_detector() {
        let mut cfg = DetectorConfig::default();
        cfg.alpha_edge = 1e12;
        let mut det = EdgeChangeDetector::new(cfg);
        det.step(&textured(0)).unwrap();
        assert!(det.step(&Frame::filled(64, 48, 1, 10)).unwrap().is_none());
        assert!(det
            .step(&Frame::from_fn(64, 48, 2, |x, y| textured(0).get((x + 9) % 64, y)))
            .unwrap()
            .is_none());
    }

    #[test]
    fn tiny_frames_are_a_domain_error() {
        let mut det = EdgeChangeDetector::new(DetectorConfig::default());
        assert!(det.step(&Frame::filled(2, 2, 0, 0)).is_err());
    }
}
