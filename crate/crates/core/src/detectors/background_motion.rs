//! Camera-motion detection from pixel-position changes against the
//! background model.

use crate::background::{BackgroundModel, DEFAULT_LEARNING_RATE};
use crate::detectors::{Detector, DetectorConfig, TamperEvent, TamperKind};
use crate::error::Result;
use crate::frame::Frame;

/// Counts pixels whose intensity moved more than `tau` away from the
/// background mean; when the count exceeds `theta_b` times the pixel total,
/// most positions changed at once and the camera itself has moved. The
/// model is updated after the test so the tampered frame does not mask
/// itself.
pub struct BackgroundMotionDetector {
    config: DetectorConfig,
    model: BackgroundModel,
}

impl BackgroundMotionDetector {
    pub fn new(config: DetectorConfig) -> Result<Self> {
        Self::with_learning_rate(config, DEFAULT_LEARNING_RATE)
    }

    pub fn with_learning_rate(config: DetectorConfig, alpha: f64) -> Result<Self> {
        Ok(Self {
            config,
            model: BackgroundModel::new(alpha)?,
        })
    }

    pub fn model(&self) -> &BackgroundModel {
        &self.model
    }
}

impl Detector for BackgroundMotionDetector {
    fn id(&self) -> &'static str {
        "motion"
    }

    fn step(&mut self, frame: &Frame) -> Result<Option<TamperEvent>> {
        let mut event = None;
        if self.model.initialized() {
            let deviating = self.model.deviation_count(frame, self.config.tau)?;
            let total = frame.pixel_count() as f64;
            if deviating as f64 > self.config.theta_b * total {
                event = Some(TamperEvent::new(
                    self.id(),
                    TamperKind::Motion,
                    frame.index(),
                    deviating as f64 / total,
                ));
            }
        }
        self.model.update(frame)?;
        Ok(event)
    }
}
