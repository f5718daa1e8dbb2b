//! Prints per-clip detector measurements over the standard corpus.
//!
//! Useful when tuning detector thresholds: for every clip it reports the
//! scene statistics around the event onset and the events each detector
//! emits.
//!
//!     cargo run --release -p tamperwatch-core --example corpus_report

use tamperwatch_core::detectors::{build_detector, DetectorConfig, DETECTOR_IDS};
use tamperwatch_core::imgproc::{
    count_hf_nonzero_dct, count_hf_nonzero_fft, dct2, edge_map, entropy, fft2, histogram,
};
use tamperwatch_core::synth::stress_corpus;

fn main() {
    let config = DetectorConfig::default();
    let clips = stress_corpus(42).expect("corpus renders");

    for clip in &clips {
        let onset = 100.min(clip.frames.len() - 1);
        let before = &clip.frames[onset.saturating_sub(1)];
        let during = &clip.frames[(onset + 20).min(clip.frames.len() - 1)];

        let stats = |f: &tamperwatch_core::Frame| {
            let edges = edge_map(f).expect("edge map");
            (
                entropy(&histogram(f)).expect("entropy"),
                edges.count,
                count_hf_nonzero_dct(&dct2(f), config.eps_dct),
                count_hf_nonzero_fft(&fft2(f), config.eps_fft),
            )
        };
        let (e0, n0, qd0, qf0) = stats(before);
        let (e1, n1, qd1, qf1) = stats(during);
        let edges_before = edge_map(before).expect("edge map");
        let edges_during = edge_map(during).expect("edge map");
        let disagreement = edges_during
            .map
            .diff_count(&edges_before.map)
            .expect("same dims");

        println!("== {} ({} frames)", clip.name, clip.frames.len());
        println!(
            "   pre-onset : entropy {e0:.3}  edges {n0}  dct_hf {qd0}  fft_hf {qf0}"
        );
        println!(
            "   mid-event : entropy {e1:.3}  edges {n1}  dct_hf {qd1}  fft_hf {qf1}  \
             edge_diff(vs pre) {disagreement}"
        );

        for id in DETECTOR_IDS {
            let mut detector = build_detector(id, &config).expect("detector");
            let mut events = Vec::new();
            let mut error = None;
            for frame in &clip.frames {
                match detector.step(frame) {
                    Ok(Some(event)) => events.push(event),
                    Ok(None) => {}
                    Err(e) => {
                        error = Some(e);
                        break;
                    }
                }
            }
            let summary: Vec<String> = events
                .iter()
                .take(4)
                .map(|e| format!("{}@{}", e.kind.as_str(), e.frame_index))
                .collect();
            match error {
                Some(e) => println!("   {id:9} ERROR: {e}"),
                None => println!(
                    "   {id:9} {:3} events  {}{}",
                    events.len(),
                    summary.join(" "),
                    if events.len() > 4 { " ..." } else { "" }
                ),
            }
        }
    }
}
