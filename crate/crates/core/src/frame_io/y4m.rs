//! YUV4MPEG2 demuxing. Only the luma plane is kept; 4:2:0 chroma is skipped.
//!
//! Accepted colorspace tags: `C420`, `C420jpeg`, `C420paldv` (all three share
//! the same plane sizes) and `Cmono`. A missing `C` parameter means `C420`
//! per the mjpegtools convention.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::frame_io::FrameStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    /// 4:2:0 subsampling: two chroma planes of `ceil(w/2) * ceil(h/2)` bytes.
    C420,
    /// Luma only.
    Mono,
}

/// Streaming YUV4MPEG2 reader yielding luma-only frames.
#[derive(Debug)]
pub struct Y4mReader<R> {
    input: R,
    width: usize,
    height: usize,
    layout: Layout,
    frame_rate: Option<(u32, u32)>,
    next_index: u64,
}

impl Y4mReader<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_reader(BufReader::new(File::open(path)?))
    }
}

impl<R: BufRead> Y4mReader<R> {
    pub fn from_reader(mut input: R) -> Result<Self> {
        let header = read_line(&mut input)?;
        let mut parts = header.split(' ');
        if parts.next() != Some("YUV4MPEG2") {
            return Err(Error::Format("missing YUV4MPEG2 signature".into()));
        }

        let mut width = None;
        let mut height = None;
        let mut layout = None;
        let mut frame_rate = None;
        for param in parts.filter(|p| !p.is_empty()) {
            let (tag, value) = param.split_at(1);
            match tag {
                "W" => width = Some(parse_dim(value, "width")?),
                "H" => height = Some(parse_dim(value, "height")?),
                "C" => {
                    layout = Some(match value {
                        "420" | "420jpeg" | "420paldv" => Layout::C420,
                        "mono" => Layout::Mono,
                        other => {
                            return Err(Error::Unsupported(format!(
                                "y4m colorspace C{other}"
                            )))
                        }
                    })
                }
                "F" => frame_rate = parse_ratio(value),
                // Interlacing, aspect and extension parameters do not affect
                // luma extraction.
                _ => {}
            }
        }

        Ok(Self {
            input,
            width: width.ok_or_else(|| Error::Format("y4m header lacks W".into()))?,
            height: height.ok_or_else(|| Error::Format("y4m header lacks H".into()))?,
            layout: layout.unwrap_or(Layout::C420),
            frame_rate,
            next_index: 0,
        })
    }

    fn chroma_bytes(&self) -> usize {
        match self.layout {
            Layout::C420 => 2 * (self.width.div_ceil(2) * self.height.div_ceil(2)),
            Layout::Mono => 0,
        }
    }

    fn read_frame(&mut self) -> Result<Option<Frame>> {
        let marker = match read_line_or_eof(&mut self.input)? {
            None => return Ok(None),
            Some(line) => line,
        };
        if marker != "FRAME" && !marker.starts_with("FRAME ") {
            return Err(Error::Format(format!("expected FRAME record, got {marker:?}")));
        }
        let mut luma = vec![0u8; self.width * self.height];
        self.input.read_exact(&mut luma)?;
        let mut chroma = vec![0u8; self.chroma_bytes()];
        self.input.read_exact(&mut chroma)?;
        let frame = Frame::new(self.width, self.height, self.next_index, luma)?;
        self.next_index += 1;
        Ok(Some(frame))
    }
}

impl<R: BufRead> Iterator for Y4mReader<R> {
    type Item = Result<Frame>;

    fn next(&mut self) -> Option<Self::Item> {
        self.read_frame().transpose()
    }
}

impl<R: BufRead> FrameStream for Y4mReader<R> {
    fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    fn frame_rate(&self) -> Option<(u32, u32)> {
        self.frame_rate
    }
}

fn parse_dim(value: &str, what: &str) -> Result<usize> {
    match value.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(Error::Format(format!("bad y4m {what}: {value:?}"))),
    }
}

fn parse_ratio(value: &str) -> Option<(u32, u32)> {
    let (num, den) = value.split_once(':')?;
    Some((num.parse().ok()?, den.parse().ok()?))
}

fn read_line(input: &mut impl BufRead) -> Result<String> {
    read_line_or_eof(input)?.ok_or_else(|| Error::Format("unexpected end of y4m stream".into()))
}

/// Reads a `\n`-terminated header line, bounded to keep malformed files from
/// buffering unbounded garbage.
fn read_line_or_eof(input: &mut impl BufRead) -> Result<Option<String>> {
    let mut line = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        match input.read(&mut byte)? {
            0 => {
                return if line.is_empty() {
                    Ok(None)
                } else {
                    Err(Error::Format("y4m record line not terminated".into()))
                }
            }
            _ => {
                if byte[0] == b'\n' {
                    break;
                }
                line.push(byte[0]);
                if line.len() > 1024 {
                    return Err(Error::Format("y4m record line too long".into()));
                }
            }
        }
    }
    String::from_utf8(line).map(Some).map_err(|_| {
        Error::Format("y4m record line is not valid ASCII".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn y4m_bytes(header: &str, frames: &[(&[u8], &[u8])]) -> Vec<u8> {
        let mut bytes = format!("{header}\n").into_bytes();
        for (luma, chroma) in frames {
            bytes.extend_from_slice(b"FRAME\n");
            bytes.extend_from_slice(luma);
            bytes.extend_from_slice(chroma);
        }
        bytes
    }

    #[test]
    fn reads_two_mono_frames() {
        let bytes = y4m_bytes(
            "YUV4MPEG2 W4 H4 F25:1 Cmono",
            &[(&[0u8; 16], &[]), (&[0u8; 16], &[])],
        );
        let frames: Vec<_> = Y4mReader::from_reader(Cursor::new(bytes))
            .unwrap()
            .collect::<Result<_>>()
            .unwrap();
        assert_eq!(frames.len(), 2);
        assert_eq!(frames[0].index(), 0);
        assert_eq!(frames[1].index(), 1);
        assert!(frames.iter().all(|f| f.luma().iter().all(|&v| v == 0)));
    }

    #[test]
    fn extracts_luma_and_skips_420_chroma() {
        let luma: Vec<u8> = (0..16).collect();
        let chroma = vec![0x55u8; 8];
        let bytes = y4m_bytes("YUV4MPEG2 W4 H4 C420jpeg", &[(&luma, &chroma)]);
        let mut reader = Y4mReader::from_reader(Cursor::new(bytes)).unwrap();
        let frame = reader.next().unwrap().unwrap();
        assert_eq!(frame.luma(), &luma[..]);
        assert!(reader.next().is_none());
    }

    #[test]
    fn default_colorspace_is_420() {
        let bytes = y4m_bytes("YUV4MPEG2 W2 H2", &[(&[9u8; 4], &[0u8; 2])]);
        let mut reader = Y4mReader::from_reader(Cursor::new(bytes)).unwrap();
        assert_eq!(reader.next().unwrap().unwrap().luma(), &[9u8; 4]);
    }

    #[test]
    fn rejects_unknown_colorspace() {
        let err =
            Y4mReader::from_reader(Cursor::new(b"YUV4MPEG2 W4 H4 C444\n".to_vec())).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn rejects_bad_signature() {
        let err = Y4mReader::from_reader(Cursor::new(b"JUNK W4 H4\n".to_vec())).unwrap_err();
        assert!(matches!(err, Error::Format(_)));
    }

    #[test]
    fn truncated_plane_is_io_error() {
        let bytes = y4m_bytes("YUV4MPEG2 W4 H4 Cmono", &[(&[0u8; 7], &[])]);
        let mut reader = Y4mReader::from_reader(Cursor::new(bytes)).unwrap();
        assert!(matches!(reader.next().unwrap().unwrap_err(), Error::Io(_)));
    }
}
