//! File-format walkthrough: the same pipeline the CLI runs, driven through
//! the CLI entry point against files in a temporary directory.
//!
//! oracle (trace) -> correlate -> spectrum -> correct -> compare-temps,
//! printing the head of each artifact along the way.
//!
//! Run: cargo run --release --example csv_pipeline

use std::fs;
use std::path::Path;

use gapkit::cli::run;

fn show(path: &Path, lines: usize) {
    println!("--- {} ---", path.file_name().unwrap().to_string_lossy());
    let text = fs::read_to_string(path).unwrap();
    for line in text.lines().take(lines) {
        let mut line = line.to_string();
        if line.len() > 100 {
            line.truncate(100);
            line.push_str("...");
        }
        println!("{line}");
    }
    println!();
}

fn gapkit(args: &[&str]) {
    let mut full = vec!["gapkit".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    let code = run(full);
    assert_eq!(code, 0, "gapkit {} failed", args.join(" "));
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let at = |name: &str| dir.path().join(name);
    let s = |p: &Path| p.display().to_string();

    fs::write(
        at("modes.csv"),
        "# two-mode oracle bath\nomega_cm1,huang_rhys\n100,0.5\n220,0.25\n",
    )
    .unwrap();
    show(&at("modes.csv"), 5);

    // A concatenated oracle trace stands in for a production gap trajectory.
    gapkit(&[
        "oracle",
        "--modes",
        &s(&at("modes.csv")),
        "--temperature-kelvin",
        "300",
        "--distribution",
        "boltzmann",
        "--samples",
        "4",
        "--steps",
        "2500",
        "--dt-fs",
        "4",
        "--coupling",
        "linear",
        "--seed",
        "42",
        "--emit",
        "trace",
        "--output",
        &s(&at("traj.csv")),
    ]);
    show(&at("traj.csv"), 5);

    gapkit(&[
        "correlate",
        "--input",
        &s(&at("traj.csv")),
        "--max-lag",
        "400",
        "--output",
        &s(&at("corr.csv")),
    ]);
    show(&at("corr.csv"), 5);

    gapkit(&[
        "spectrum",
        "--input",
        &s(&at("corr.csv")),
        "--window-fraction",
        "0.09",
        "--freq-max",
        "2000",
        "--freq-step",
        "1",
        "--output",
        &s(&at("spec.json")),
    ]);
    show(&at("spec.json"), 1);

    gapkit(&[
        "correct",
        "--input",
        &s(&at("spec.json")),
        "--method",
        "harmonic",
        "--temperature-kelvin",
        "300",
        "--output",
        &s(&at("J300.json")),
        "--output-g",
        &s(&at("G300.json")),
    ]);
    show(&at("J300.json"), 1);

    // Second temperature for the invariance report, straight from the
    // ensemble correlator this time.
    gapkit(&[
        "oracle",
        "--modes",
        &s(&at("modes.csv")),
        "--temperature-kelvin",
        "77",
        "--samples",
        "20000",
        "--steps",
        "401",
        "--emit",
        "correlator",
        "--seed",
        "7",
        "--output",
        &s(&at("corr77.csv")),
    ]);
    gapkit(&[
        "spectrum",
        "--input",
        &s(&at("corr77.csv")),
        "--output",
        &s(&at("spec77.json")),
    ]);
    gapkit(&[
        "correct",
        "--input",
        &s(&at("spec77.json")),
        "--method",
        "harmonic",
        "--output",
        &s(&at("J77.json")),
    ]);
    gapkit(&[
        "compare-temps",
        "--a",
        &s(&at("J77.json")),
        "--b",
        &s(&at("J300.json")),
        "--output",
        &s(&at("report.json")),
    ]);
    show(&at("report.json"), 40);

    // Three-time significance on the trace.
    gapkit(&[
        "significance",
        "--input",
        &s(&at("traj.csv")),
        "--surrogates",
        "50",
        "--seed",
        "7",
        "--max-k",
        "40",
        "--max-j",
        "40",
        "--output",
        &s(&at("sig.json")),
    ]);
    show(&at("sig.json"), 10);
}
