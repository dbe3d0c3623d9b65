//! Runs a corpus experiment from a JSON config (default: the bundled
//! `examples/configs/corpus.json`) and prints the CSV table and summary.

use std::path::{Path, PathBuf};

use bisectlab::harness::{run_experiment, ExperimentConfig};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs/corpus.json"));
    let cfg = ExperimentConfig::load(&path).unwrap();
    let base = path.parent().unwrap_or(Path::new("."));
    let report = run_experiment(&cfg, base).unwrap();
    print!("{}", report.to_csv());
    println!("{}", serde_json::to_string_pretty(&report.summary).unwrap());
}
