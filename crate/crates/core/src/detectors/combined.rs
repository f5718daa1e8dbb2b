//! Fused pipeline: edge-change gating, occlusion/defocus classification,
//! and persistence debouncing.

use crate::detectors::{Detector, DetectorConfig, TamperEvent, TamperKind};
use crate::error::Result;
use crate::frame::Frame;
use crate::imgproc::{
    count_hf_nonzero_dct, dct2, edge_map, histogram, BinaryMap, Histogram,
};

/// Last trusted view of the scene. Tracks the previous frame while the
/// stream is calm; freezes while a candidate accumulates so a sustained
/// tamper keeps being compared against the scene it displaced.
struct Reference {
    map: BinaryMap,
    edge_count: u64,
    hist: Histogram,
}

struct Candidate {
    kind: TamperKind,
    run: u32,
    score_sum: f64,
}

/// Combined tamper detector.
///
/// Per frame, the edge-change rule (see [`super::EdgeChangeDetector`]) gates
/// against the reference view. Gated frames are classified: histogram
/// concentration plus contour collapse reads as occlusion; otherwise a
/// high-frequency census below `beta_l` of the baseline reads as defocus;
/// anything else is motion. A classification must recur for `persistence`
/// consecutive gated frames to produce one event, after which emissions are
/// suppressed for `cooldown` frames and the tampered view becomes the new
/// reference. Single-frame glitches never survive the persistence filter.
pub struct CombinedDetector {
    config: DetectorConfig,
    hf_baseline: Option<u64>,
    reference: Option<Reference>,
    candidate: Option<Candidate>,
    cooldown_left: u32,
}

impl CombinedDetector {
    pub fn new(config: DetectorConfig) -> Self {
        Self {
            config,
            hf_baseline: None,
            reference: None,
            candidate: None,
            cooldown_left: 0,
        }
    }

    fn gate(&self, reference: &Reference, map: &BinaryMap, count: u64) -> Result<Option<f64>> {
        let disagreement = map.diff_count(&reference.map)?;
        let alpha = self.config.alpha_edge;
        let fired = if count > 0 {
            disagreement as f64 > alpha * count as f64
        } else {
            disagreement as f64 > (alpha - 1.0) * reference.edge_count as f64
        };
        Ok(fired.then(|| disagreement as f64 / count.max(1) as f64))
    }

    fn classify(
        &self,
        frame: &Frame,
        reference: &Reference,
        hist: &Histogram,
        edge_count: u64,
    ) -> TamperKind {
        let peak = hist.peak_level();
        let window = hist.window_sum(peak, self.config.n_hist) as f64;
        let reference_window = reference.hist.window_sum(peak, self.config.n_hist) as f64;
        let hist_grew = window >= reference_window * self.config.theta_obstruction;
        let edges_collapsed =
            edge_count as f64 <= reference.edge_count as f64 * self.config.theta_contour;
        if hist_grew && edges_collapsed {
            return TamperKind::Occlusion;
        }
        if let Some(baseline) = self.hf_baseline {
            let census = count_hf_nonzero_dct(&dct2(frame), self.config.eps_dct);
            if (census as f64) < baseline as f64 * self.config.beta_l {
                return TamperKind::Defocus;
            }
        }
        TamperKind::Motion
    }
}

impl Detector for CombinedDetector {
    fn id(&self) -> &'static str {
        "combined"
    }

    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>> {
        let edges = edge_map(frame)?;
        let hist = histogram(frame);
        let current = Reference {
            map: edges.map,
            edge_count: edges.count,
            hist,
        };

        let Some(reference) = &self.reference else {
            // First frame: the scene is taken as clear, fixing the
            // high-frequency baseline for defocus classification. A scene
            // without any census is tolerated; defocus then simply cannot
            // be told apart from motion.
            let census = count_hf_nonzero_dct(&dct2(frame), self.config.eps_dct);
            self.hf_baseline = (census > 0).then_some(census);
            self.reference = Some(current);
            return Ok(None);
        };

        if self.cooldown_left > 0 {
            self.cooldown_left -= 1;
            self.candidate = None;
            self.reference = Some(current);
            return Ok(None);
        }

        let Some(gate_score) = self.gate(reference, &current.map, current.edge_count)? else {
            self.candidate = None;
            self.reference = Some(current);
            return Ok(None);
        };

        let kind = self.classify(frame, reference, &current.hist, current.edge_count);
        let candidate = match self.candidate.take() {
            Some(mut existing) if existing.kind == kind => {
                existing.run += 1;
                existing.score_sum += gate_score;
                existing
            }
            _ => Candidate {
                kind,
                run: 1,
                score_sum: gate_score,
            },
        };

        if candidate.run >= self.config.persistence {
            let event = TamperEvent::new(
                self.id(),
                candidate.kind,
                frame.index(),
                candidate.score_sum / candidate.run as f64,
            );
            self.candidate = None;
            self.cooldown_left = self.config.cooldown;
            // The tampered view becomes the new reference so a sustained
            // condition alarms once, not continuously.
            self.reference = Some(current);
            return Ok(Some(event));
        }
        self.candidate = Some(candidate);
        // Reference stays frozen while the candidate accumulates.
        Ok(None)
    }
}
