//! The standard synthetic evaluation corpus: seeded clips with one injected
//! tamper event each, plus clean and stress variants.

use crate::error::Result;
use crate::frame::Frame;
use crate::synth::procedural::detail_patch;
use crate::synth::scenario::{BaseSpec, EventSpec, GroundTruth, MovingObject, Scenario};
use crate::synth::transforms::Rect;

pub const CLIP_WIDTH: usize = 128;
pub const CLIP_HEIGHT: usize = 96;
pub const CLIP_FRAMES: u64 = 300;
/// Injected events run over this closed interval.
pub const EVENT_START: u64 = 100;
pub const EVENT_END: u64 = 180;

/// One rendered clip with its label track.
#[derive(Debug, Clone)]
pub struct CorpusClip {
    pub name: String,
    pub frames: Vec<Frame>,
    pub truth: GroundTruth,
}

fn base(seed_offset: u64) -> BaseSpec {
    let _ = seed_offset;
    BaseSpec {
        width: CLIP_WIDTH,
        height: CLIP_HEIGHT,
        frames: CLIP_FRAMES,
        noise_amplitude: 2,
        textured_patch: true,
        object: Some(MovingObject {
            width: 14,
            height: 14,
            fill: 230,
            speed: 2,
            enter_frame: 0,
            exit_frame: None,
        }),
    }
}

fn clip(name: &str, seed: u64, events: Vec<EventSpec>) -> (String, Scenario) {
    (
        name.to_string(),
        Scenario {
            base: base(seed),
            seed,
            events,
        },
    )
}

/// Rectangle covering a quarter of the frame, placed over the detail patch
/// so the occlusion erases the scene's contour content.
fn quarter_rect() -> Rect {
    let patch = detail_patch(CLIP_WIDTH, CLIP_HEIGHT);
    let rect = Rect::new(0, CLIP_HEIGHT / 4, CLIP_WIDTH / 2, CLIP_HEIGHT / 2);
    debug_assert!(rect.contains(patch.x, patch.y));
    debug_assert!(rect.contains(patch.x + patch.width - 1, patch.y + patch.height - 1));
    rect
}

fn occlusion(rect: Rect, fill: u8) -> EventSpec {
    EventSpec::Occlusion {
        start: EVENT_START,
        end: EVENT_END,
        rect,
        fill,
        ramp_frames: 0,
    }
}

fn defocus(radius: usize) -> EventSpec {
    EventSpec::Defocus {
        start: EVENT_START,
        end: EVENT_END,
        radius,
        ramp_frames: 0,
    }
}

fn shift(dx: i32) -> EventSpec {
    EventSpec::Motion {
        start: EVENT_START,
        end: EVENT_END,
        dx,
        dy: 0,
        fill: 75,
        ramp_frames: 0,
    }
}

/// The ten scenarios of the standard corpus: three clean clips and seven
/// abrupt single-event tamper clips (occlusions at three fills/coverages,
/// two blur strengths, two shift magnitudes).
pub fn standard_scenarios(seed: u64) -> Vec<(String, Scenario)> {
    let full = Rect::new(0, 0, CLIP_WIDTH, CLIP_HEIGHT);
    vec![
        clip("clean_1", seed, vec![]),
        clip("clean_2", seed + 1, vec![]),
        clip("clean_3", seed + 2, vec![]),
        clip("occlusion_full_dark", seed + 3, vec![occlusion(full, 12)]),
        clip("occlusion_full_bright", seed + 4, vec![occlusion(full, 230)]),
        clip("occlusion_quarter", seed + 5, vec![occlusion(quarter_rect(), 200)]),
        clip("defocus_r5", seed + 6, vec![defocus(5)]),
        clip("defocus_r3", seed + 7, vec![defocus(3)]),
        clip("shift_quarter", seed + 8, vec![shift(CLIP_WIDTH as i32 / 4)]),
        clip("shift_half", seed + 9, vec![shift(CLIP_WIDTH as i32 / 2)]),
    ]
}

/// Single-frame corruption clips for false-alarm stress testing. The glitch
/// is rendered as a one-frame full cover, but the label track is empty: a
/// one-frame dropout is not a sustained tamper event, so any emission on
/// these clips counts as a false positive.
pub fn glitch_scenarios(seed: u64, count: usize) -> Vec<(String, Scenario)> {
    (0..count)
        .map(|i| {
            let glitch_frame = 140 + 7 * i as u64;
            clip(
                &format!("glitch_{}", i + 1),
                seed + 20 + i as u64,
                vec![EventSpec::Occlusion {
                    start: glitch_frame,
                    end: glitch_frame,
                    rect: Rect::new(0, 0, CLIP_WIDTH, CLIP_HEIGHT),
                    fill: 8,
                    ramp_frames: 0,
                }],
            )
        })
        .collect()
}

fn render(scenarios: Vec<(String, Scenario)>, empty_truth: bool) -> Result<Vec<CorpusClip>> {
    scenarios
        .into_iter()
        .map(|(name, scenario)| {
            let truth = if empty_truth {
                GroundTruth::empty()
            } else {
                scenario.ground_truth()
            };
            Ok(CorpusClip {
                name,
                frames: scenario.render()?,
                truth,
            })
        })
        .collect()
}

/// Renders the standard ten-clip corpus.
pub fn standard_corpus(seed: u64) -> Result<Vec<CorpusClip>> {
    render(standard_scenarios(seed), false)
}

/// Standard corpus extended with five single-frame glitch clips whose label
/// tracks are empty.
pub fn stress_corpus(seed: u64) -> Result<Vec<CorpusClip>> {
    let mut clips = standard_corpus(seed)?;
    clips.extend(render(glitch_scenarios(seed, 5), true)?);
    Ok(clips)
}

/// A clip with a large moving object entering abruptly mid-stream and
/// covering `coverage` of the frame area; no tamper events, empty truth.
pub fn moving_object_scenario(seed: u64, coverage: f64) -> Scenario {
    let total = CLIP_WIDTH * CLIP_HEIGHT;
    let target = (total as f64 * coverage.clamp(0.0, 1.0)).round() as usize;
    let (width, height) = if target >= total {
        (CLIP_WIDTH, CLIP_HEIGHT)
    } else {
        let side = ((target as f64).sqrt().round() as usize).max(1);
        if side > CLIP_HEIGHT {
            ((target / CLIP_HEIGHT).min(CLIP_WIDTH), CLIP_HEIGHT)
        } else {
            (side, side)
        }
    };
    Scenario {
        base: BaseSpec {
            object: Some(MovingObject {
                width,
                height,
                fill: 190,
                speed: 2,
                enter_frame: 60,
                exit_frame: None,
            }),
            ..base(seed)
        },
        seed,
        events: vec![],
    }
}
