//! Procedural clean scenes: a gently graded background, a detail-rich patch,
//! and an optional moving object, with per-frame sensor noise.
//!
//! Frames are independently computable: the static layout derives from the
//! scenario seed alone, and each frame's noise comes from its own counter
//! stream, so rendering frame `k` never requires frames `0..k`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frame::Frame;
use crate::synth::scenario::{BaseSpec, MovingObject};
use crate::synth::transforms::Rect;

/// Background intensity at the left edge; a shallow horizontal ramp keeps
/// the histogram realistic without adding contour content.
const BACKDROP_LEVEL: u8 = 70;
const BACKDROP_SPAN: usize = 10;

/// Mid level of the detail patch, aligned with the backdrop so defocus
/// collapses the patch toward the surrounding intensity.
const PATCH_LEVEL: u8 = 75;
/// Checker amplitude. A one-pixel checker sits at the Nyquist frequency:
/// strong in both spectra yet invisible to the 3x3 Sobel kernel, so it feeds
/// the defocus detectors without touching edge maps.
const CHECKER_AMPLITUDE: u8 = 45;
/// Intensity of the sparse speckle dots whose Sobel rings form the scene's
/// contour set.
const DOT_LEVEL: u8 = 195;
/// Approximate dot pitch in pixels.
const DOT_PITCH: usize = 5;

/// Detail-patch placement: left-of-center so that rightward shifts keep the
/// patch in view, sized to roughly a fifth of the frame.
pub fn detail_patch(width: usize, height: usize) -> Rect {
    let x0 = (width / 32).max(1);
    let y0 = height / 4 + 2;
    let x1 = width / 2 - (width / 32).max(1);
    let y1 = 3 * height / 4 - 2;
    Rect::new(x0, y0, x1.saturating_sub(x0).max(1), y1.saturating_sub(y0).max(1))
}

fn mix(mut h: u64) -> u64 {
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h = h.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    h ^ (h >> 33)
}

/// Static scene value at `(x, y)` before noise and objects.
fn scene_value(spec: &BaseSpec, seed: u64, patch: Rect, x: usize, y: usize) -> u8 {
    let backdrop = BACKDROP_LEVEL + (x * BACKDROP_SPAN / spec.width.max(1)) as u8;
    if !spec.textured_patch || !patch.contains(x, y) {
        return backdrop;
    }
    // Jittered speckle lattice.
    let (cell_x, off_x) = ((x - patch.x) / DOT_PITCH, (x - patch.x) % DOT_PITCH);
    let (cell_y, off_y) = ((y - patch.y) / DOT_PITCH, (y - patch.y) % DOT_PITCH);
    let h = mix(seed ^ ((cell_x as u64) << 32 | cell_y as u64));
    let (jitter_x, jitter_y) = ((h % 3) as usize, ((h >> 8) % 3) as usize);
    if off_x == 1 + jitter_x && off_y == 1 + jitter_y {
        return DOT_LEVEL;
    }
    if (x + y) % 2 == 0 {
        PATCH_LEVEL + CHECKER_AMPLITUDE
    } else {
        PATCH_LEVEL - CHECKER_AMPLITUDE
    }
}

/// Bouncing position: triangle wave over `0..=range`.
fn bounce(step: u64, range: usize) -> usize {
    if range == 0 {
        return 0;
    }
    let period = 2 * range as u64;
    let m = step % period;
    if m <= range as u64 {
        m as usize
    } else {
        (period - m) as usize
    }
}

fn object_rect(object: &MovingObject, spec: &BaseSpec, seed: u64, index: u64) -> Option<Rect> {
    if index < object.enter_frame || object.exit_frame.is_some_and(|exit| index >= exit) {
        return None;
    }
    let w = object.width.min(spec.width);
    let h = object.height.min(spec.height);
    let step = (index - object.enter_frame) * object.speed as u64;
    let phase = mix(seed ^ 0x0b1e);
    let x = bounce(step + phase % 29, spec.width - w);
    let y = bounce(step + (phase >> 16) % 23, spec.height - h);
    Some(Rect::new(x, y, w, h))
}

/// Renders the clean base frame `index` of a scenario.
pub fn base_frame(spec: &BaseSpec, seed: u64, index: u64) -> Frame {
    let patch = detail_patch(spec.width, spec.height);
    let object = spec
        .object
        .as_ref()
        .and_then(|obj| object_rect(obj, spec, seed, index).map(|r| (r, obj.fill)));

    let mut frame = Frame::from_fn(spec.width, spec.height, index, |x, y| {
        if let Some((rect, fill)) = &object {
            if rect.contains(x, y) {
                return *fill;
            }
        }
        scene_value(spec, seed, patch, x, y)
    });

    if spec.noise_amplitude > 0 {
        let span = 2 * u32::from(spec.noise_amplitude) + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1 + index);
        let (w, h, idx) = (frame.width(), frame.height(), frame.index());
        let mut luma = frame.into_luma();
        for v in &mut luma {
            let noise = (rng.next_u32() % span) as i32 - i32::from(spec.noise_amplitude);
            *v = (i32::from(*v) + noise).clamp(0, 255) as u8;
        }
        frame = Frame::new(w, h, idx, luma).expect("noise keeps dimensions");
    }
    frame
}
