//! Occlusion/motion detection from frame differencing, histogram
//! concentration, and contour collapse.

use crate::background::frame_diff;
use crate::detectors::{Detector, DetectorConfig, TamperEvent, TamperKind};
use crate::error::Result;
use crate::frame::Frame;
use crate::imgproc::{edge_map, histogram, Histogram};

struct PreviousFrame {
    frame: Frame,
    hist: Histogram,
    edge_count: u64,
}

/// Three-phase decision against the previous frame:
///
/// 1. gate: the fraction of pixels changed by more than `tau` must exceed
///    `theta_b` (the whole scene is implicated, not a passing object);
/// 2. histogram phase: the mass within `n_hist` levels of the current peak
///    must have grown by `theta_obstruction` relative to the previous frame;
/// 3. contour phase: the edge count must have decayed below `theta_contour`
///    times the previous count.
///
/// Gate plus both phases reads as occlusion; gate with neither phase reads
/// as camera motion (the scene changed but kept its structure); anything
/// else stays quiet. State advances every frame regardless of the outcome.
pub struct HistContourDetector {
    config: DetectorConfig,
    previous: Option<PreviousFrame>,
}

impl HistContourDetector {
    pub fn new(config: DetectorConfig) -> Self {
        Self {
            config,
            previous: None,
        }
    }
}

impl Detector for HistContourDetector {
    fn id(&self) -> &'static str {
        "alg2"
    }

    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>> {
        let hist = histogram(frame);
        let edges = edge_map(frame)?;

        let mut event = None;
        if let Some(previous) = &self.previous {
            let diff = frame_diff(frame, &previous.frame, self.config.tau)?;
            if diff.changed_fraction > self.config.theta_b {
                let peak = hist.peak_level();
                let current_window = hist.window_sum(peak, self.config.n_hist);
                let previous_window = previous.hist.window_sum(peak, self.config.n_hist);
                let hist_grew = current_window as f64
                    >= previous_window as f64 * self.config.theta_obstruction;
                let edges_collapsed =
                    edges.count as f64 <= previous.edge_count as f64 * self.config.theta_contour;

                event = match (hist_grew, edges_collapsed) {
                    (true, true) => Some(TamperEvent::new(
                        self.id(),
                        TamperKind::Occlusion,
                        frame.index(),
                        current_window as f64 / previous_window.max(1) as f64,
                    )),
                    (false, false) => Some(TamperEvent::new(
                        self.id(),
                        TamperKind::Motion,
                        frame.index(),
                        diff.changed_fraction,
                    )),
                    _ => None,
                };
            }
        }

        self.previous = Some(PreviousFrame {
            frame: frame.clone(),
            hist,
            edge_count: edges.count,
        });
        Ok(event)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn textured(index: u64) -> Frame {
        Frame::from_fn(64, 48, index, |x, y| (x * 37 ^ y * 119).wrapping_mul(7) as u8)
    }

    #[test]
    fn quiet_on_identical_frames() {
        let mut det = HistContourDetector::new(DetectorConfig::default());
        assert!(det.step(&textured(0)).unwrap().is_none());
        assert!(det.step(&textured(1)).unwrap().is_none());
    }

    #[test]
    fn lens_cover_reads_as_occlusion() {
        let mut det = HistContourDetector::new(DetectorConfig::default());
        det.step(&textured(0)).unwrap();
        let covered = Frame::filled(64, 48, 1, 0);
        let event = det.step(&covered).unwrap().expect("occlusion event");
        assert_eq!(event.kind, TamperKind::Occlusion);

        // Phase oracles on the same pair.
        let prev = textured(0);
        let diff = frame_diff(&covered, &prev, 25.0).unwrap();
        assert!(diff.changed_fraction > 0.6);
        let cur_hist = histogram(&covered);
        let peak = cur_hist.peak_level();
        assert!(
            cur_hist.window_sum(peak, 10) as f64
                >= histogram(&prev).window_sum(peak, 10) as f64 * 2.0
        );
        assert!(edge_map(&covered).unwrap().count as f64 <= edge_map(&prev).unwrap().count as f64 * 0.5);
    }

    #[test]
    fn wholesale_shift_reads_as_motion() {
        // Same texture translated by half the width with novel content in
        // the vacated area: nearly every pixel changes but the histogram
        // window and the contour both survive.
        let w = 64;
        let value = |x: usize, y: usize| (x * 37 ^ y * 119).wrapping_mul(7) as u8;
        let a = Frame::from_fn(w, 48, 0, value);
        let b = Frame::from_fn(w, 48, 1, |x, y| value(x + w / 2, y + 1));

        let mut det = HistContourDetector::new(DetectorConfig::default());
        det.step(&a).unwrap();
        let event = det.step(&b).unwrap().expect("motion event");
        assert_eq!(event.kind, TamperKind::Motion);

        let diff = frame_diff(&b, &a, 25.0).unwrap();
        assert!(diff.changed_fraction > 0.6);
        assert!((event.score - diff.changed_fraction).abs() < 1e-12);
    }

    #[test]
    fn gate_blocks_small_changes() {
        let mut det = HistContourDetector::new(DetectorConfig::default());
        let base = textured(0);
        det.step(&base).unwrap();
        // A small bright square: well under theta_b coverage.
        let patched = Frame::from_fn(64, 48, 1, |x, y| {
            if x < 10 && y < 10 {
                255
            } else {
                base.get(x, y)
            }
        });
        assert!(det.step(&patched).unwrap().is_none());
    }

    #[test]
    fn theta_b_of_one_disables_the_detector() {
        let mut cfg = DetectorConfig::default();
        cfg.theta_b = 1.0;
        let mut det = HistContourDetector::new(cfg);
        det.step(&textured(0)).unwrap();
        assert!(det.step(&Frame::filled(64, 48, 1, 0)).unwrap().is_none());
    }

    #[test]
    fn dimension_mismatch_is_a_domain_error() {
        let mut det = HistContourDetector::new(DetectorConfig::default());
        det.step(&textured(0)).unwrap();
        assert!(det.step(&Frame::filled(32, 48, 1, 0)).is_err());
    }
}
