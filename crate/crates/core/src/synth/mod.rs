//! Synthetic tamper injection: scripted scenarios over procedural clean
//! scenes, with ground-truth label tracks for evaluation.

pub mod corpus;
mod procedural;
mod scenario;
mod transforms;

pub use corpus::{standard_corpus, stress_corpus, CorpusClip};
pub use procedural::base_frame;
pub use scenario::{
    BaseSpec, EventSpec, GroundTruth, LabeledInterval, MovingObject, Scenario, ScenarioStream,
};
pub use transforms::{apply_defocus, apply_occlusion, apply_shift, Rect};
