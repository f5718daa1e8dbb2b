//! Binary PGM ("P5") reading and writing, maxval 255 only.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::frame::Frame;

/// Loads a binary PGM file as a frame with stream index 0.
pub fn load_pgm(path: impl AsRef<Path>) -> Result<Frame> {
    decode_pgm(&fs::read(path)?)
}

/// Decodes an in-memory binary PGM image.
pub fn decode_pgm(bytes: &[u8]) -> Result<Frame> {
    let mut cursor = HeaderCursor::new(bytes);
    let magic = cursor.token()?;
    if magic != b"P5" {
        return Err(Error::Format(format!(
            "not a binary PGM: magic {:?}",
            String::from_utf8_lossy(magic)
        )));
    }
    let width = cursor.unsigned("width")?;
    let height = cursor.unsigned("height")?;
    let maxval = cursor.unsigned("maxval")?;
    if maxval != 255 {
        return Err(Error::Unsupported(format!(
            "PGM maxval {maxval}; only 255 is handled"
        )));
    }
    if width == 0 || height == 0 {
        return Err(Error::Format(format!("degenerate PGM size {width}x{height}")));
    }
    // Exactly one whitespace byte separates the header from the payload.
    cursor.skip_single_whitespace()?;
    let payload = cursor.rest();
    let expected = width * height;
    if payload.len() < expected {
        return Err(Error::Io(io::Error::new(
            io::ErrorKind::UnexpectedEof,
            format!(
                "PGM payload truncated: {} of {expected} bytes",
                payload.len()
            ),
        )));
    }
    Frame::new(width, height, 0, payload[..expected].to_vec())
}

/// Encodes a frame as a binary PGM image.
pub fn encode_pgm(frame: &Frame) -> Vec<u8> {
    let mut out = Vec::with_capacity(frame.pixel_count() + 32);
    // The single-space header form keeps files byte-stable across writers.
    write!(out, "P5\n{} {}\n255\n", frame.width(), frame.height()).expect("vec write");
    out.extend_from_slice(frame.luma());
    out
}

/// Writes a frame to disk as binary PGM.
pub fn save_pgm(frame: &Frame, path: impl AsRef<Path>) -> Result<()> {
    Ok(fs::write(path, encode_pgm(frame))?)
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    /// Skips whitespace and `#` comment lines between header tokens.
    fn skip_separators(&mut self) {
        loop {
            while self
                .bytes
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_whitespace())
            {
                self.pos += 1;
            }
            if self.bytes.get(self.pos) == Some(&b'#') {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else {
                return;
            }
        }
    }

    fn token(&mut self) -> Result<&'a [u8]> {
        self.skip_separators();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Format("PGM header ended early".into()));
        }
        Ok(&self.bytes[start..self.pos])
    }

    fn unsigned(&mut self, what: &str) -> Result<usize> {
        let token = self.token()?;
        std::str::from_utf8(token)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                Error::Format(format!(
                    "bad PGM {what}: {:?}",
                    String::from_utf8_lossy(token)
                ))
            })
    }

    fn skip_single_whitespace(&mut self) -> Result<()> {
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::Format(
                "PGM header not terminated by whitespace".into(),
            )),
        }
    }

    fn rest(&self) -> &'a [u8] {
        &self.bytes[self.pos..]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_one_pixel() {
        let frame = decode_pgm(b"P5\n1 1\n255\n\x00").unwrap();
        assert_eq!((frame.width(), frame.height()), (1, 1));
        assert_eq!(frame.luma(), &[0]);
    }

    #[test]
    fn decodes_row_major() {
        let frame = decode_pgm(b"P5\n2 2\n255\n\x0a\x14\x1e\x28").unwrap();
        assert_eq!(frame.luma(), &[10, 20, 30, 40]);
    }

    #[test]
    fn rejects_wide_maxval() {
        let err = decode_pgm(b"P5\n1 1\n65535\n\x00\x00").unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn rejects_bad_magic() {
        assert!(matches!(
            decode_pgm(b"P6\n1 1\n255\n\x00").unwrap_err(),
            Error::Format(_)
        ));
    }

    #[test]
    fn truncated_payload_is_io_error() {
        assert!(matches!(
            decode_pgm(b"P5\n2 2\n255\n\x00\x01").unwrap_err(),
            Error::Io(_)
        ));
    }

    #[test]
    fn tolerates_header_comments() {
        let frame = decode_pgm(b"P5\n# made by hand\n2 1\n255\n\x05\x06").unwrap();
        assert_eq!(frame.luma(), &[5, 6]);
    }

    #[test]
    fn roundtrip_is_identity() {
        let frame = Frame::from_fn(13, 7, 0, |x, y| (x * 31 + y * 7) as u8);
        assert_eq!(decode_pgm(&encode_pgm(&frame)).unwrap().luma(), frame.luma());
    }
}
