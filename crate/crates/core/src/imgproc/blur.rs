//! Box filtering, used both as a primitive and for defocus synthesis.

use crate::frame::Frame;

/// Separable `(2r+1) x (2r+1)` mean filter with edge-clamped borders.
///
/// The window sum is kept in integers and divided once at the end, rounding
/// to the nearest value, so the result equals a direct 2D windowed mean.
/// Radius 0 is the identity.
pub fn box_blur(frame: &Frame, radius: usize) -> Frame {
    if radius == 0 {
        return frame.clone();
    }
    let (w, h) = (frame.width(), frame.height());
    let side = 2 * radius + 1;

    // Horizontal pass: clamped window sums per row.
    let mut row_sums = vec![0u64; w * h];
    for y in 0..h {
        let row = frame.row(y);
        let out = &mut row_sums[y * w..(y + 1) * w];
        let clamp = |x: isize| row[x.clamp(0, w as isize - 1) as usize] as u64;
        let mut sum = 0u64;
        for dx in -(radius as isize)..=radius as isize {
            sum += clamp(dx);
        }
        out[0] = sum;
        for x in 1..w {
            sum += clamp(x as isize + radius as isize);
            sum -= clamp(x as isize - 1 - radius as isize);
            out[x] = sum;
        }
    }

    // Vertical pass over the horizontal sums, then one rounded division.
    let divisor = (side * side) as u64;
    let mut luma = vec![0u8; w * h];
    for x in 0..w {
        let clamp = |y: isize| row_sums[(y.clamp(0, h as isize - 1) as usize) * w + x];
        let mut sum = 0u64;
        for dy in -(radius as isize)..=radius as isize {
            sum += clamp(dy);
        }
        luma[x] = ((sum + divisor / 2) / divisor) as u8;
        for y in 1..h {
            sum += clamp(y as isize + radius as isize);
            sum -= clamp(y as isize - 1 - radius as isize);
            luma[y * w + x] = ((sum + divisor / 2) / divisor) as u8;
        }
    }

    Frame::new(w, h, frame.index(), luma).expect("blur preserves dimensions")
}
