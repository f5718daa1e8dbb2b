//! Pixel transforms that realize the three tamper classes on a frame.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::imgproc::box_blur;

/// Axis-aligned pixel rectangle, `x..x+width` by `y..y+height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn new(x: usize, y: usize, width: usize, height: usize) -> Self {
        Self {
            x,
            y,
            width,
            height,
        }
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x >= self.x && x < self.x + self.width && y >= self.y && y < self.y + self.height
    }

    fn fits(&self, width: usize, height: usize) -> bool {
        self.x + self.width <= width && self.y + self.height <= height
    }
}

/// Paints `rect` with the constant `fill`, leaving other pixels untouched.
pub fn apply_occlusion(frame: &Frame, rect: Rect, fill: u8) -> Result<Frame> {
    if !rect.fits(frame.width(), frame.height()) {
        return Err(Error::Domain(format!(
            "occlusion rectangle {rect:?} exceeds {}x{}",
            frame.width(),
            frame.height()
        )));
    }
    let width = frame.width();
    let mut luma = frame.clone().into_luma();
    for y in rect.y..rect.y + rect.height {
        luma[y * width + rect.x..y * width + rect.x + rect.width].fill(fill);
    }
    Frame::new(width, frame.height(), frame.index(), luma)
}

/// Blurs the frame with three box-filter passes of the given radius; the
/// iterated box approaches a Gaussian while staying in integer arithmetic.
pub fn apply_defocus(frame: &Frame, radius: usize) -> Result<Frame> {
    if radius == 0 {
        return Err(Error::Domain("defocus radius must be at least 1".into()));
    }
    Ok(box_blur(&box_blur(&box_blur(frame, radius), radius), radius))
}

/// Translates the content by `(dx, dy)`, filling the exposed border.
pub fn apply_shift(frame: &Frame, dx: i32, dy: i32, fill: u8) -> Result<Frame> {
    let (w, h) = (frame.width() as i64, frame.height() as i64);
    if i64::from(dx).abs() >= w || i64::from(dy).abs() >= h {
        return Err(Error::Domain(format!(
            "shift ({dx},{dy}) out of range for {w}x{h}"
        )));
    }
    let out = Frame::from_fn(frame.width(), frame.height(), frame.index(), |x, y| {
        let sx = x as i64 - i64::from(dx);
        let sy = y as i64 - i64::from(dy);
        if sx >= 0 && sx < w && sy >= 0 && sy < h {
            frame.get(sx as usize, sy as usize)
        } else {
            fill
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgproc::{count_hf_nonzero_dct, dct2};

    fn textured() -> Frame {
        Frame::from_fn(32, 24, 0, |x, y| ((x * 77) ^ (y * 45)) as u8)
    }

    #[test]
    fn full_frame_occlusion_paints_everything() {
        let out = apply_occlusion(&textured(), Rect::new(0, 0, 32, 24), 0).unwrap();
        assert!(out.luma().iter().all(|&v| v == 0));
    }

    #[test]
    fn zero_area_occlusion_is_identity() {
        let frame = textured();
        let out = apply_occlusion(&frame, Rect::new(5, 5, 0, 0), 99).unwrap();
        assert_eq!(out, frame);
    }

    #[test]
    fn quarter_occlusion_changes_exactly_a_quarter() {
        // Fill value absent from the source frame, so every painted pixel
        // counts as changed.
        let frame = Frame::from_fn(32, 24, 0, |x, y| 100 + ((x + y) % 50) as u8);
        let rect = Rect::new(0, 0, 16, 12);
        let out = apply_occlusion(&frame, rect, 7).unwrap();
        let changed = out
            .luma()
            .iter()
            .zip(frame.luma())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(changed, 32 * 24 / 4);
    }

    #[test]
    fn out_of_bounds_rect_is_rejected() {
        assert!(apply_occlusion(&textured(), Rect::new(20, 0, 16, 8), 0).is_err());
    }

    #[test]
    fn defocus_keeps_constants_and_rejects_zero_radius() {
        let flat = Frame::filled(16, 16, 0, 88);
        assert_eq!(apply_defocus(&flat, 5).unwrap(), flat);
        assert!(apply_defocus(&flat, 0).is_err());
    }

    #[test]
    fn defocus_drains_high_frequencies() {
        let frame = textured();
        let before = count_hf_nonzero_dct(&dct2(&frame), 1.0);
        let after = count_hf_nonzero_dct(&dct2(&apply_defocus(&frame, 5).unwrap()), 1.0);
        assert!(after < before, "{after} !< {before}");
    }

    #[test]
    fn defocus_spreads_a_step_edge() {
        let w = 64;
        let step = Frame::from_fn(w, 16, 0, |x, _| if x < w / 2 { 0 } else { 200 });
        let blurred = apply_defocus(&step, 5).unwrap();
        // The transition band spans roughly 6 * radius columns; outside it
        // the halves stay flat.
        let mid = w / 2;
        let band = 3 * 5;
        assert_eq!(blurred.get(mid - band - 2, 8), 0);
        assert_eq!(blurred.get(mid + band + 1, 8), 200);
        assert_ne!(blurred.get(mid - band + 2, 8), 0);
        assert_ne!(blurred.get(mid + band - 3, 8), 200);
    }

    #[test]
    fn zero_shift_is_identity() {
        let frame = textured();
        assert_eq!(apply_shift(&frame, 0, 0, 0).unwrap(), frame);
    }

    #[test]
    fn shift_then_inverse_restores_the_interior() {
        let frame = textured();
        let there = apply_shift(&frame, 7, -4, 0).unwrap();
        let back = apply_shift(&there, -7, 4, 0).unwrap();
        for y in 4..24 {
            for x in 0..32 - 7 {
                assert_eq!(back.get(x, y), frame.get(x, y), "pixel ({x},{y})");
            }
        }
    }

    #[test]
    fn half_width_shift_layout_is_exact() {
        // Left half dark, right half bright; shifting right by half the
        // width pushes the dark half into the right half and fills the left.
        let w = 32;
        let frame = Frame::from_fn(w, 8, 0, |x, _| if x < w / 2 { 10 } else { 240 });
        let shifted = apply_shift(&frame, w as i32 / 2, 0, 128).unwrap();
        let expected = Frame::from_fn(w, 8, 0, |x, _| if x < w / 2 { 128 } else { 10 });
        assert_eq!(shifted, expected);
    }

    #[test]
    fn oversized_shift_is_rejected() {
        assert!(apply_shift(&textured(), 32, 0, 0).is_err());
        assert!(apply_shift(&textured(), 0, -24, 0).is_err());
    }
}
