//! Camera-tamper detection for grayscale video.
//!
//! The toolkit covers three sustained tamper classes — occlusion (lens
//! covered), defocus (sharpness lost), and camera motion (mount displaced) —
//! with five single-feature detectors and a fused pipeline, plus a synthetic
//! scenario generator and an evaluation harness for scoring detections
//! against ground truth.
//!
//! ```no_run
//! use tamperwatch_core::detectors::{build_detector, DetectorConfig};
//! use tamperwatch_core::frame_io::{FrameStream, Y4mReader};
//!
//! let mut detector = build_detector("combined", &DetectorConfig::default())?;
//! for frame in Y4mReader::open("camera.y4m")? {
//!     if let Some(event) = detector.step(&frame?)? {
//!         println!("{} at frame {}", event.kind.as_str(), event.frame_index);
//!     }
//! }
//! # Ok::<(), tamperwatch_core::Error>(())
//! ```

pub mod background;
pub mod detectors;
mod error;
pub mod eval;
mod frame;
pub mod frame_io;
pub mod imgproc;
pub mod selftest;
pub mod synth;

pub use error::{Error, Result};
pub use frame::{rgb_to_luma, Frame};
