//! Stateful per-stream tamper detectors.
//!
//! Each detector consumes frames one at a time through [`Detector::step`]
//! and occasionally emits a [`TamperEvent`]. One detector instance serves
//! one stream; distinct streams use distinct instances and may run on
//! different threads. No detector emits on its very first frame.

mod background_motion;
mod combined;
mod dct_defocus;
mod edge_change;
mod entropy_occlusion;
mod fft_defocus;
mod hist_contour;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;

pub use background_motion::BackgroundMotionDetector;
pub use combined::CombinedDetector;
pub use dct_defocus::DctDefocusDetector;
pub use edge_change::EdgeChangeDetector;
pub use entropy_occlusion::EntropyOcclusionDetector;
pub use fft_defocus::FftDefocusDetector;
pub use hist_contour::HistContourDetector;

/// Kind of tampering an event reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TamperKind {
    Occlusion,
    Defocus,
    Motion,
    /// Tampering detected without classification (edge-change detector).
    Generic,
}

impl TamperKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TamperKind::Occlusion => "occlusion",
            TamperKind::Defocus => "defocus",
            TamperKind::Motion => "motion",
            TamperKind::Generic => "generic",
        }
    }
}

/// One detected tamper event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TamperEvent {
    #[serde(rename = "detector")]
    pub detector_id: String,
    pub kind: TamperKind,
    #[serde(rename = "frame")]
    pub frame_index: u64,
    pub score: f64,
}

impl TamperEvent {
    pub fn new(detector_id: &str, kind: TamperKind, frame_index: u64, score: f64) -> Self {
        debug_assert!(score.is_finite(), "event score must be finite");
        Self {
            detector_id: detector_id.to_string(),
            kind,
            frame_index,
            score,
        }
    }
}

/// Thresholds shared by all detectors. Fields are independent; each detector
/// reads only the ones it documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    /// Entropy-ratio threshold: occlusion when `E_n / E_{n-1}` drops below it.
    pub alpha_entropy: f64,
    /// Intensity threshold for frame differencing.
    pub tau: f64,
    /// Changed-pixel fraction that gates the difference-based detectors.
    pub theta_b: f64,
    /// Half-width of the histogram window around the peak level.
    pub n_hist: usize,
    /// Growth factor the peak histogram window must reach to signal occlusion.
    pub theta_obstruction: f64,
    /// Decay factor the edge count must fall below to signal occlusion.
    pub theta_contour: f64,
    /// Fraction of the baseline high-frequency count below which a frame
    /// counts as defocused.
    pub beta_l: f64,
    /// Magnitude above which a DCT coefficient counts as nonzero.
    pub eps_dct: f64,
    /// Magnitude above which an FFT coefficient counts as nonzero.
    pub eps_fft: f64,
    /// Edge-change factor: tampering when changed edge pixels exceed
    /// `alpha_edge` times the current edge count.
    pub alpha_edge: f64,
    /// Consecutive gated frames required before the combined detector emits.
    pub persistence: u32,
    /// Frames suppressed after a combined-detector emission.
    pub cooldown: u32,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            alpha_entropy: 0.5,
            tau: 25.0,
            theta_b: 0.6,
            n_hist: 10,
            theta_obstruction: 2.0,
            theta_contour: 0.5,
            beta_l: 0.70,
            eps_dct: 1.0,
            eps_fft: 1.0,
            alpha_edge: 1.3,
            persistence: 5,
            cooldown: 30,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ((0.0..=1.0).contains(&self.alpha_entropy), "alpha_entropy in [0, 1]"),
            ((0.0..=255.0).contains(&self.tau), "tau in [0, 255]"),
            (self.theta_b > 0.0 && self.theta_b <= 1.0, "theta_b in (0, 1]"),
            (self.n_hist <= 255, "n_hist at most 255"),
            (self.theta_obstruction > 0.0, "theta_obstruction positive"),
            (
                (0.0..=1.0).contains(&self.theta_contour),
                "theta_contour in [0, 1]",
            ),
            ((0.0..=1.0).contains(&self.beta_l), "beta_l in [0, 1]"),
            (self.eps_dct >= 0.0, "eps_dct non-negative"),
            (self.eps_fft >= 0.0, "eps_fft non-negative"),
            (self.alpha_edge > 0.0, "alpha_edge positive"),
            (self.persistence >= 1, "persistence at least 1"),
        ];
        for (ok, what) in checks {
            if !ok {
                return Err(Error::Config(format!("{what} (got {self:?})")));
            }
        }
        Ok(())
    }

    /// Sets a field by name, for CLI overrides and parameter sweeps.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let as_count = |value: f64, what: &str| -> Result<u64> {
            if value < 0.0 || value.fract() != 0.0 {
                return Err(Error::Config(format!(
                    "{what} needs a non-negative integer, got {value}"
                )));
            }
            Ok(value as u64)
        };
        match name {
            "alpha_entropy" => self.alpha_entropy = value,
            "tau" => self.tau = value,
            "theta_b" => self.theta_b = value,
            "n_hist" => self.n_hist = as_count(value, name)? as usize,
            "theta_obstruction" => self.theta_obstruction = value,
            "theta_contour" => self.theta_contour = value,
            "beta_l" => self.beta_l = value,
            "eps_dct" => self.eps_dct = value,
            "eps_fft" => self.eps_fft = value,
            "alpha_edge" => self.alpha_edge = value,
            "persistence" => self.persistence = as_count(value, name)? as u32,
            "cooldown" => self.cooldown = as_count(value, name)? as u32,
            other => return Err(Error::Config(format!("unknown config field {other:?}"))),
        }
        Ok(())
    }
}

/// A per-stream tamper detector consuming frames in order.
pub trait Detector {
    /// Stable identifier used in event records and CLI selection.
    fn id(&self) -> &'static str;

    /// Consumes the next frame, possibly emitting one event.
    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>>;
}

/// Detector identifiers accepted by [`build_detector`].
pub const DETECTOR_IDS: &[&str] = &["alg1", "alg2", "alg3", "alg4", "alg5", "combined"];

/// Instantiates a detector by identifier.
pub fn build_detector(id: &str, config: &DetectorConfig) -> Result<Box<dyn Detector>> {
    config.validate()?;
    Ok(match id {
        "alg1" => Box::new(EntropyOcclusionDetector::new(config.clone())),
        "alg2" => Box::new(HistContourDetector::new(config.clone())),
        "alg3" => Box::new(DctDefocusDetector::new(config.clone())),
        "alg4" => Box::new(FftDefocusDetector::new(config.clone())),
        "alg5" => Box::new(EdgeChangeDetector::new(config.clone())),
        "combined" => Box::new(CombinedDetector::new(config.clone())),
        other => {
            return Err(Error::Config(format!(
                "unknown detector {other:?}; expected one of {DETECTOR_IDS:?}"
            )))
        }
    })
}

/// Runs a detector over a full clip, collecting its events.
pub fn run_detector(detector: &mut dyn Detector, frames: &[Frame]) -> Result<Vec<TamperEvent>> {
    let mut events = Vec::new();
    for frame in frames {
        if let Some(event) = detector.step(frame)? {
            events.push(event);
        }
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_validate() {
        DetectorConfig::default().validate().unwrap();
    }

    #[test]
    fn config_set_by_name() {
        let mut cfg = DetectorConfig::default();
        cfg.set("alpha_entropy", 0.25).unwrap();
        cfg.set("persistence", 3.0).unwrap();
        assert_eq!(cfg.alpha_entropy, 0.25);
        assert_eq!(cfg.persistence, 3);
        assert!(cfg.set("persistence", 2.5).is_err());
        assert!(matches!(
            cfg.set("no_such_field", 1.0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn config_validation_catches_bad_ranges() {
        let mut cfg = DetectorConfig::default();
        cfg.theta_b = 0.0;
        assert!(cfg.validate().is_err());
        cfg = DetectorConfig::default();
        cfg.persistence = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn factory_knows_every_listed_id() {
        let cfg = DetectorConfig::default();
        for id in DETECTOR_IDS {
            assert_eq!(build_detector(id, &cfg).unwrap().id(), *id);
        }
        assert!(build_detector("alg9", &cfg).is_err());
    }

    #[test]
    fn partial_config_json_merges_with_defaults() {
        let cfg: DetectorConfig = serde_json::from_str(r#"{"tau": 30.0}"#).unwrap();
        assert_eq!(cfg.tau, 30.0);
        assert_eq!(cfg.persistence, DetectorConfig::default().persistence);
        assert!(serde_json::from_str::<DetectorConfig>(r#"{"tau_typo": 1}"#).is_err());
    }

    #[test]
    fn event_serialization_shape() {
        let event = TamperEvent::new("alg1", TamperKind::Occlusion, 42, 0.125);
        assert_eq!(
            serde_json::to_string(&event).unwrap(),
            r#"{"detector":"alg1","kind":"occlusion","frame":42,"score":0.125}"#
        );
    }
}
