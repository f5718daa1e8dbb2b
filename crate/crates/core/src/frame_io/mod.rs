//! Frame decoding: binary PGM files, PGM directories, and YUV4MPEG2 streams.

mod pgm;
mod y4m;

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::frame::Frame;

pub use pgm::{decode_pgm, encode_pgm, load_pgm, save_pgm};
pub use y4m::Y4mReader;

/// A sequential, single-consumer source of frames.
///
/// All frames yielded by one stream share the dimensions reported by
/// [`FrameStream::dimensions`], and their indices increase strictly.
pub trait FrameStream: Iterator<Item = Result<Frame>> {
    fn dimensions(&self) -> (usize, usize);

    /// Frames per second as a rational, when the container declares one.
    /// Informational only; detection never depends on wall-clock timing.
    fn frame_rate(&self) -> Option<(u32, u32)> {
        None
    }
}

/// Streams the `.pgm` files of a directory in lexicographic filename order,
/// re-indexing frames from 0. This is the layout `synth` writes
/// (`frame_000001.pgm`, `frame_000002.pgm`, ...).
pub struct PgmDirReader {
    paths: std::vec::IntoIter<PathBuf>,
    dimensions: Option<(usize, usize)>,
    next_index: u64,
}

impl PgmDirReader {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let mut paths: Vec<PathBuf> = fs::read_dir(dir.as_ref())?
            .collect::<std::io::Result<Vec<_>>>()?
            .into_iter()
            .map(|entry| entry.path())
            .filter(|p| p.extension().is_some_and(|e| e == "pgm"))
            .collect();
        if paths.is_empty() {
            return Err(Error::Format(format!(
                "no .pgm files in {}",
                dir.as_ref().display()
            )));
        }
        paths.sort();
        Ok(Self {
            paths: paths.into_iter(),
            dimensions: None,
            next_index: 0,
        })
    }

    fn read_next(&mut self, path: &Path) -> Result<Frame> {
        let frame = load_pgm(path)?.with_index(self.next_index);
        match self.dimensions {
            None => self.dimensions = Some((frame.width(), frame.height())),
            Some(dims) if dims != (frame.width(), frame.height()) => {
                return Err(Error::Format(format!(
                    "{} is {}x{}, stream is {}x{}",
                    path.display(),
                    frame.width(),
                    frame.height(),
                    dims.0,
                    dims.1
                )))
            }
            Some(_) => {}
        }
        self.next_index += 1;
        Ok(frame)
    }
}

impl Iterator for PgmDirReader {
    type Item = Result<Frame>;

    fn next(&mut self) -> Option<Self::Item> {
        let path = self.paths.next()?;
        Some(self.read_next(&path))
    }
}

impl FrameStream for PgmDirReader {
    fn dimensions(&self) -> (usize, usize) {
        self.dimensions.unwrap_or((0, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dir_reader_orders_and_reindexes() {
        let dir = tempfile::tempdir().unwrap();
        for (name, value) in [("frame_000002.pgm", 2u8), ("frame_000001.pgm", 1u8)] {
            save_pgm(&Frame::filled(3, 2, 9, value), dir.path().join(name)).unwrap();
        }
        fs::write(dir.path().join("notes.txt"), "ignored").unwrap();

        let frames: Vec<_> = PgmDirReader::open(dir.path())
            .unwrap()
            .collect::<Result<_>>()
            .unwrap();
        assert_eq!(frames.len(), 2);
        assert_eq!(frames[0].index(), 0);
        assert_eq!(frames[0].luma()[0], 1);
        assert_eq!(frames[1].index(), 1);
        assert_eq!(frames[1].luma()[0], 2);
    }

    #[test]
    fn dir_reader_rejects_mixed_dimensions() {
        let dir = tempfile::tempdir().unwrap();
        save_pgm(&Frame::filled(3, 2, 0, 0), dir.path().join("a.pgm")).unwrap();
        save_pgm(&Frame::filled(2, 2, 0, 0), dir.path().join("b.pgm")).unwrap();
        let result: Result<Vec<_>> = PgmDirReader::open(dir.path()).unwrap().collect();
        assert!(matches!(result.unwrap_err(), Error::Format(_)));
    }

    #[test]
    fn empty_dir_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(PgmDirReader::open(dir.path()).is_err());
    }
}
