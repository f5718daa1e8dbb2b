//! Traces the edge-change gate frame by frame around a chosen window.
//!
//!     cargo run --release -p tamperwatch-core --example gate_trace -- defocus_r5 95 112

use tamperwatch_core::imgproc::{edge_map, otsu_threshold, sobel_magnitude};
use tamperwatch_core::synth::stress_corpus;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let clip_name = args.get(1).map(String::as_str).unwrap_or("defocus_r5");
    let from: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(95);
    let to: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(112);

    let clips = stress_corpus(42).expect("corpus");
    let clip = clips
        .iter()
        .find(|c| c.name == clip_name)
        .expect("clip name");

    println!("frame |     N    N_d(prev)  1.3*N   gate | otsu  max_grad");
    let mut previous = None;
    for (i, frame) in clip.frames.iter().enumerate().take(to + 1) {
        let edges = edge_map(frame).expect("edges");
        let grid = sobel_magnitude(frame).expect("sobel");
        let otsu = otsu_threshold(&grid);
        let max_grad = grid.values().iter().cloned().fold(0.0f64, f64::max);
        if i >= from {
            let (n_d, gate) = match &previous {
                Some((map, count)) => {
                    let n_d = edges.map.diff_count(map).expect("dims");
                    let gate = if edges.count > 0 {
                        n_d as f64 > 1.3 * edges.count as f64
                    } else {
                        n_d as f64 > 0.3 * *count as f64
                    };
                    (n_d, gate)
                }
                None => (0, false),
            };
            println!(
                "{i:5} | {:5}  {n_d:9}  {:6.0}  {:5} | {otsu:5.0}  {max_grad:6.0}",
                edges.count,
                1.3 * edges.count as f64,
                gate
            );
        }
        previous = Some((edges.map, edges.count));
    }
}
