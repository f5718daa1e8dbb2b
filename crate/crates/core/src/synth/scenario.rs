//! Scenario descriptions: a procedural base plus scripted tamper events,
//! with the matching ground-truth label track.

use serde::{Deserialize, Serialize};

use crate::detectors::TamperKind;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::frame_io::FrameStream;
use crate::synth::procedural::base_frame;
use crate::synth::transforms::{apply_defocus, apply_occlusion, apply_shift, Rect};

/// Procedural clean-scene parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub width: usize,
    pub height: usize,
    /// Number of frames the scenario renders.
    pub frames: u64,
    /// Per-frame uniform noise in `[-a, a]` intensity levels.
    #[serde(default = "default_noise_amplitude")]
    pub noise_amplitude: u8,
    /// Whether the scene carries the detail patch (speckles + fine checker).
    #[serde(default = "default_true")]
    pub textured_patch: bool,
    /// Optional moving object crossing the scene.
    #[serde(default)]
    pub object: Option<MovingObject>,
}

fn default_noise_amplitude() -> u8 {
    2
}

fn default_true() -> bool {
    true
}

fn default_speed() -> usize {
    1
}

/// A filled rectangle bouncing through the scene.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovingObject {
    pub width: usize,
    pub height: usize,
    pub fill: u8,
    /// Pixels moved per frame along the bounce path.
    #[serde(default = "default_speed")]
    pub speed: usize,
    /// First frame the object is visible.
    #[serde(default)]
    pub enter_frame: u64,
    /// Frame the object disappears again (exclusive), if ever.
    #[serde(default)]
    pub exit_frame: Option<u64>,
}

/// One scripted tamper injection over a closed frame interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum EventSpec {
    Occlusion {
        start: u64,
        end: u64,
        rect: Rect,
        fill: u8,
        #[serde(default)]
        ramp_frames: u64,
    },
    Defocus {
        start: u64,
        end: u64,
        radius: usize,
        #[serde(default)]
        ramp_frames: u64,
    },
    Motion {
        start: u64,
        end: u64,
        dx: i32,
        dy: i32,
        fill: u8,
        #[serde(default)]
        ramp_frames: u64,
    },
}

impl EventSpec {
    pub fn kind(&self) -> TamperKind {
        match self {
            EventSpec::Occlusion { .. } => TamperKind::Occlusion,
            EventSpec::Defocus { .. } => TamperKind::Defocus,
            EventSpec::Motion { .. } => TamperKind::Motion,
        }
    }

    pub fn interval(&self) -> (u64, u64) {
        match *self {
            EventSpec::Occlusion { start, end, .. }
            | EventSpec::Defocus { start, end, .. }
            | EventSpec::Motion { start, end, .. } => (start, end),
        }
    }

    fn ramp_frames(&self) -> u64 {
        match *self {
            EventSpec::Occlusion { ramp_frames, .. }
            | EventSpec::Defocus { ramp_frames, .. }
            | EventSpec::Motion { ramp_frames, .. } => ramp_frames,
        }
    }

    /// Ramp factor in `(0, 1]`: how much of the effect applies at `index`.
    fn strength(&self, index: u64) -> f64 {
        let ramp = self.ramp_frames();
        if ramp == 0 {
            return 1.0;
        }
        let (start, _) = self.interval();
        (((index - start + 1) as f64) / ramp as f64).min(1.0)
    }

    fn apply(&self, frame: &Frame, index: u64) -> Result<Frame> {
        let s = self.strength(index);
        match *self {
            EventSpec::Occlusion { rect, fill, .. } => {
                // Ramping grows the painted area out from the rect center.
                let w = ((rect.width as f64 * s).round() as usize).min(rect.width);
                let h = ((rect.height as f64 * s).round() as usize).min(rect.height);
                if w == 0 || h == 0 {
                    return Ok(frame.clone());
                }
                let grown = Rect::new(
                    rect.x + (rect.width - w) / 2,
                    rect.y + (rect.height - h) / 2,
                    w,
                    h,
                );
                apply_occlusion(frame, grown, fill)
            }
            EventSpec::Defocus { radius, .. } => {
                let r = ((radius as f64 * s).round() as usize).clamp(1, radius);
                apply_defocus(frame, r)
            }
            EventSpec::Motion { dx, dy, fill, .. } => {
                let sx = (f64::from(dx) * s).round() as i32;
                let sy = (f64::from(dy) * s).round() as i32;
                apply_shift(frame, sx, sy, fill)
            }
        }
    }
}

/// A labeled tamper interval, closed on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledInterval {
    pub kind: TamperKind,
    pub start: u64,
    pub end: u64,
}

/// Ground-truth label track for one rendered clip.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub events: Vec<LabeledInterval>,
}

impl GroundTruth {
    pub fn empty() -> Self {
        Self::default()
    }
}

/// A renderable tamper scenario: base scene, seed, scripted events.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub base: BaseSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub events: Vec<EventSpec>,
}

impl Scenario {
    pub fn from_json(json: &str) -> Result<Self> {
        let scenario: Scenario = serde_json::from_str(json).map_err(|e| {
            Error::Config(format!(
                "scenario JSON invalid at line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let base = &self.base;
        if base.width < 8 || base.height < 8 {
            return Err(Error::Config(format!(
                "base must be at least 8x8, got {}x{}",
                base.width, base.height
            )));
        }
        if base.frames == 0 {
            return Err(Error::Config("base needs at least one frame".into()));
        }
        for event in &self.events {
            let (start, end) = event.interval();
            if start > end || end >= base.frames {
                return Err(Error::Config(format!(
                    "event interval [{start}, {end}] outside 0..{}",
                    base.frames
                )));
            }
            match *event {
                EventSpec::Occlusion { rect, .. } => {
                    if rect.x + rect.width > base.width || rect.y + rect.height > base.height {
                        return Err(Error::Config(format!(
                            "occlusion rect {rect:?} exceeds the {}x{} base",
                            base.width, base.height
                        )));
                    }
                }
                EventSpec::Defocus { radius, .. } => {
                    if radius == 0 {
                        return Err(Error::Config("defocus radius must be at least 1".into()));
                    }
                }
                EventSpec::Motion { dx, dy, .. } => {
                    if dx.unsigned_abs() as usize >= base.width
                        || dy.unsigned_abs() as usize >= base.height
                    {
                        return Err(Error::Config(format!(
                            "shift ({dx},{dy}) out of range for the {}x{} base",
                            base.width, base.height
                        )));
                    }
                }
            }
        }
        // Same-kind events must not overlap.
        for (i, a) in self.events.iter().enumerate() {
            for b in &self.events[i + 1..] {
                if a.kind() == b.kind() {
                    let (s1, e1) = a.interval();
                    let (s2, e2) = b.interval();
                    if s1 <= e2 && s2 <= e1 {
                        return Err(Error::Config(format!(
                            "overlapping {} events [{s1},{e1}] and [{s2},{e2}]",
                            a.kind().as_str()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Renders one frame, applying every event active at `index` in
    /// declaration order.
    pub fn render_frame(&self, index: u64) -> Result<Frame> {
        let mut frame = base_frame(&self.base, self.seed, index);
        for event in &self.events {
            let (start, end) = event.interval();
            if index >= start && index <= end {
                frame = event.apply(&frame, index)?;
            }
        }
        Ok(frame)
    }

    /// Renders the whole clip into memory.
    pub fn render(&self) -> Result<Vec<Frame>> {
        self.validate()?;
        (0..self.base.frames).map(|i| self.render_frame(i)).collect()
    }

    /// Label track mirroring the scripted events.
    pub fn ground_truth(&self) -> GroundTruth {
        GroundTruth {
            events: self
                .events
                .iter()
                .map(|event| {
                    let (start, end) = event.interval();
                    LabeledInterval {
                        kind: event.kind(),
                        start,
                        end,
                    }
                })
                .collect(),
        }
    }

    /// Lazy stream over the scenario's frames.
    pub fn stream(self) -> Result<ScenarioStream> {
        self.validate()?;
        Ok(ScenarioStream {
            scenario: self,
            next: 0,
        })
    }
}

/// Frame stream rendering a scenario on demand.
#[derive(Debug)]
pub struct ScenarioStream {
    scenario: Scenario,
    next: u64,
}

impl Iterator for ScenarioStream {
    type Item = Result<Frame>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.scenario.base.frames {
            return None;
        }
        let frame = self.scenario.render_frame(self.next);
        self.next += 1;
        Some(frame)
    }
}

impl FrameStream for ScenarioStream {
    fn dimensions(&self) -> (usize, usize) {
        (self.scenario.base.width, self.scenario.base.height)
    }
}
