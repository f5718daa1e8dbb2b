//! Temporal scene models: frame differencing and the running-Gaussian
//! background with per-pixel mean and variance.

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::imgproc::BinaryMap;

/// Per-pixel variance assigned when the model sees its first frame.
/// A moderate prior spread (12 intensity levels) that decays below 1.0
/// within 100 frames at the default learning rate.
pub const INITIAL_VARIANCE: f64 = 144.0;

/// Number of standard deviations within which a pixel counts as
/// background-consistent. Fixed by the method definition.
pub const MATCH_SIGMA_FACTOR: f64 = 2.5;

/// Default learning rate: slow adaptation so sustained tampering is not
/// absorbed into the background.
pub const DEFAULT_LEARNING_RATE: f64 = 0.95;

/// Running-Gaussian background model.
///
/// Each update folds the current frame into a per-pixel mean and variance:
/// `F_t = alpha F_{t-1} + (1 - alpha) I_t`, then
/// `v_t = alpha v_{t-1} + (1 - alpha) (F_t - I_t)^2` using the new mean.
#[derive(Debug, Clone)]
pub struct BackgroundModel {
    alpha: f64,
    width: usize,
    height: usize,
    background: Vec<f64>,
    variance: Vec<f64>,
}

impl BackgroundModel {
    /// Creates an empty model; `alpha` is the learning rate in `[0, 1]`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Domain(format!("learning rate {alpha} not in [0, 1]")));
        }
        Ok(Self {
            alpha,
            width: 0,
            height: 0,
            background: Vec::new(),
            variance: Vec::new(),
        })
    }

    pub fn initialized(&self) -> bool {
        !self.background.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Background mean image, row-major. Empty before the first update.
    pub fn background(&self) -> &[f64] {
        &self.background
    }

    /// Variance image, row-major. Empty before the first update.
    pub fn variance(&self) -> &[f64] {
        &self.variance
    }

    fn check_dimensions(&self, frame: &Frame) -> Result<()> {
        if frame.width() != self.width || frame.height() != self.height {
            return Err(Error::Domain(format!(
                "frame is {}x{}, model is {}x{}",
                frame.width(),
                frame.height(),
                self.width,
                self.height
            )));
        }
        Ok(())
    }

    /// Folds a frame into the model. The first frame initializes the mean to
    /// the frame itself and the variance to [`INITIAL_VARIANCE`].
    pub fn update(&mut self, frame: &Frame) -> Result<()> {
        if !self.initialized() {
            self.width = frame.width();
            self.height = frame.height();
            self.background = frame.luma().iter().map(|&v| f64::from(v)).collect();
            self.variance = vec![INITIAL_VARIANCE; frame.pixel_count()];
            return Ok(());
        }
        self.check_dimensions(frame)?;
        let alpha = self.alpha;
        for ((bg, var), &pixel) in self
            .background
            .iter_mut()
            .zip(self.variance.iter_mut())
            .zip(frame.luma())
        {
            let intensity = f64::from(pixel);
            *bg = alpha * *bg + (1.0 - alpha) * intensity;
            let deviation = *bg - intensity;
            *var = alpha * *var + (1.0 - alpha) * deviation * deviation;
        }
        Ok(())
    }

    /// Map of pixels consistent with the background:
    /// `1` where `|I - F| < 2.5 sqrt(v)`.
    ///
    /// Note the strict inequality: a zero-variance pixel never matches, not
    /// even on an exact intensity match. Callers wanting the foreground take
    /// [`BinaryMap::complement`].
    pub fn background_mask(&self, frame: &Frame) -> Result<BinaryMap> {
        if !self.initialized() {
            return Err(Error::State("background model has no frames yet".into()));
        }
        self.check_dimensions(frame)?;
        let bits: Vec<bool> = self
            .background
            .iter()
            .zip(&self.variance)
            .zip(frame.luma())
            .map(|((&bg, &var), &pixel)| {
                (f64::from(pixel) - bg).abs() < MATCH_SIGMA_FACTOR * var.sqrt()
            })
            .collect();
        BinaryMap::new(self.width, self.height, bits)
    }

    /// Complement of [`BackgroundModel::background_mask`].
    pub fn foreground_mask(&self, frame: &Frame) -> Result<BinaryMap> {
        Ok(self.background_mask(frame)?.complement())
    }

    /// Number of pixels deviating from the background mean by more than `tau`.
    pub fn deviation_count(&self, frame: &Frame, tau: f64) -> Result<u64> {
        if !self.initialized() {
            return Err(Error::State("background model has no frames yet".into()));
        }
        self.check_dimensions(frame)?;
        Ok(self
            .background
            .iter()
            .zip(frame.luma())
            .filter(|(&bg, &pixel)| (f64::from(pixel) - bg).abs() > tau)
            .count() as u64)
    }
}

/// Thresholded absolute difference between two frames.
#[derive(Debug, Clone)]
pub struct DiffResult {
    pub mask: BinaryMap,
    pub changed_count: u64,
    /// `changed_count` over the total pixel count.
    pub changed_fraction: f64,
}

/// Marks pixels where `|current - delayed| > tau`.
pub fn frame_diff(current: &Frame, delayed: &Frame, tau: f64) -> Result<DiffResult> {
    if !current.same_dimensions(delayed) {
        return Err(Error::Domain(format!(
            "frame sizes differ: {}x{} vs {}x{}",
            current.width(),
            current.height(),
            delayed.width(),
            delayed.height()
        )));
    }
    if !(0.0..=255.0).contains(&tau) {
        return Err(Error::Domain(format!("tau {tau} not in [0, 255]")));
    }
    let bits: Vec<bool> = current
        .luma()
        .iter()
        .zip(delayed.luma())
        .map(|(&a, &b)| f64::from(a.abs_diff(b)) > tau)
        .collect();
    let mask = BinaryMap::new(current.width(), current.height(), bits)?;
    let changed_count = mask.count_set();
    let changed_fraction = changed_count as f64 / current.pixel_count() as f64;
    Ok(DiffResult {
        mask,
        changed_count,
        changed_fraction,
    })
}
