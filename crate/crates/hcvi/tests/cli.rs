//! End-to-end checks of the binary's surface: subcommands, formats, label
//! channels, and error reporting.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hcvi"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("hcvi-cli-tests").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn synth_blobs(dir: &Path, seed: u64, noise: f64) -> (PathBuf, PathBuf) {
    let csv = dir.join(format!("blobs-{seed}.csv"));
    let labels = dir.join(format!("blobs-{seed}.labels"));
    let out = run(&[
        "synth",
        "blobs",
        "--clusters",
        "4",
        "--points-per",
        "60",
        "--spread",
        "1.0",
        "--separation",
        "12.0",
        "--noise-fraction",
        &noise.to_string(),
        "--seed",
        &seed.to_string(),
        "--output",
        csv.to_str().unwrap(),
        "--labels-out",
        labels.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    (csv, labels)
}

#[test]
fn synth_writes_points_and_labels() {
    let dir = workdir("synth");
    let (csv, labels) = synth_blobs(&dir, 3, 0.05);
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count();
    let label_rows = std::fs::read_to_string(&labels).unwrap().lines().count();
    assert_eq!(rows, 252); // 240 blob points + ceil(5%) noise
    assert_eq!(rows, label_rows);
}

#[test]
fn sweep_human_output_ends_with_optimal_l() {
    let dir = workdir("human");
    let (csv, _) = synth_blobs(&dir, 1, 0.0);
    let text = stdout_of(&run(&["sweep", "--input", csv.to_str().unwrap(), "--seed", "1"]));
    let last = text.lines().last().unwrap();
    assert!(
        last.starts_with("optimal_l: "),
        "final line was '{last}'"
    );
    assert_eq!(last, "optimal_l: 4");
}

#[test]
fn sweep_json_has_the_documented_keys() {
    let dir = workdir("json");
    let (csv, _) = synth_blobs(&dir, 2, 0.0);
    let text = stdout_of(&run(&[
        "sweep",
        "--input",
        csv.to_str().unwrap(),
        "--seed",
        "2",
        "--format",
        "json",
        "--no-timings",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["config", "granulation", "sweep", "baselines", "timings"] {
        assert!(doc.get(key).is_some(), "missing key {key}");
    }
    assert!(doc["timings"].is_null());
    assert_eq!(doc["sweep"]["optimal_l"], 4);
    assert!(doc["sweep"]["rows"].as_array().unwrap().len() >= 2);
    assert_eq!(doc["config"]["command"], "sweep");
    assert_eq!(doc["config"]["seed"], 2);
}

#[test]
fn sweep_csv_curve_matches_json_selection() {
    let dir = workdir("curve");
    let (csv, _) = synth_blobs(&dir, 4, 0.0);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&run(&[
        "sweep",
        "--input",
        csv.to_str().unwrap(),
        "--seed",
        "4",
        "--format",
        "json",
        "--no-timings",
    ])))
    .unwrap();
    let curve = stdout_of(&run(&[
        "sweep",
        "--input",
        csv.to_str().unwrap(),
        "--seed",
        "4",
        "--format",
        "csv-curve",
    ]));

    let mut lines = curve.lines();
    assert_eq!(
        lines.next().unwrap(),
        "l,normalized_avg_hcvi,silhouette,davies_bouldin,calinski_harabasz"
    );
    let mut best: Option<(usize, f64)> = None;
    let mut count = 0;
    for line in lines {
        count += 1;
        let cells: Vec<&str> = line.split(',').collect();
        let l: usize = cells[0].parse().unwrap();
        let score: f64 = cells[1].parse().unwrap();
        if best.is_none() || score < best.unwrap().1 {
            best = Some((l, score));
        }
    }
    assert_eq!(count, json["sweep"]["rows"].as_array().unwrap().len());
    assert_eq!(best.unwrap().0 as u64, json["sweep"]["optimal_l"].as_u64().unwrap());
}

#[test]
fn evaluate_scores_sidecar_labels() {
    let dir = workdir("evaluate");
    let (csv, labels) = synth_blobs(&dir, 5, 0.0);
    let text = stdout_of(&run(&[
        "evaluate",
        "--input",
        csv.to_str().unwrap(),
        "--labels",
        labels.to_str().unwrap(),
        "--format",
        "json",
        "--no-timings",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["l"], 4);
    assert_eq!(doc["valid"], true);
    assert!(doc["avg_hcvi"].as_f64().unwrap() > 0.0);
    assert!(doc["baselines"]["silhouette"].as_f64().unwrap() > 0.5);
}

#[test]
fn evaluate_reads_labels_from_a_csv_column() {
    let dir = workdir("label-column");
    let path = dir.join("tiny.csv");
    let mut text = String::new();
    for i in 0..30 {
        let (x, label) = if i % 2 == 0 { (0.0, 0) } else { (50.0, 1) };
        text.push_str(&format!("{},{},{label}\n", x + (i % 5) as f64 * 0.3, (i % 3) as f64 * 0.2));
    }
    std::fs::write(&path, text).unwrap();
    let out = stdout_of(&run(&[
        "evaluate",
        "--input",
        path.to_str().unwrap(),
        "--label-column",
        "2",
        "--bd-threshold-fraction",
        "0.02",
        "--format",
        "json",
        "--no-timings",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["l"], 2);
    assert_eq!(doc["valid"], true);
}

#[test]
fn granulate_emits_balls_as_json() {
    let dir = workdir("granulate");
    let (csv, _) = synth_blobs(&dir, 6, 0.0);
    let text = stdout_of(&run(&[
        "granulate",
        "--input",
        csv.to_str().unwrap(),
        "--format",
        "json",
        "--no-timings",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let balls = doc["balls"].as_array().unwrap();
    assert_eq!(balls.len(), doc["granulation"]["m"].as_u64().unwrap() as usize);
    let covered: usize = balls
        .iter()
        .chain(doc["noise_balls"].as_array().unwrap())
        .map(|b| b["member_ids"].as_array().unwrap().len())
        .sum();
    assert_eq!(covered, 240);
    for ball in balls {
        let rm = ball["radius_max"].as_f64().unwrap();
        let ra = ball["radius_avg"].as_f64().unwrap();
        assert!(ra <= rm);
    }
}

#[test]
fn external_labels_mode_scores_each_file() {
    let dir = workdir("external");
    let (csv, truth) = synth_blobs(&dir, 7, 0.0);
    // a deliberately bad labeling: split by parity of the row index
    let n = std::fs::read_to_string(&csv).unwrap().lines().count();
    let bad = dir.join("parity.labels");
    let text: String = (0..n).map(|i| format!("{}\n", i % 2)).collect();
    std::fs::write(&bad, text).unwrap();

    let out = stdout_of(&run(&[
        "sweep",
        "--input",
        csv.to_str().unwrap(),
        "--clusterer",
        "external-labels",
        "--labels",
        truth.to_str().unwrap(),
        "--labels",
        bad.to_str().unwrap(),
        "--format",
        "json",
        "--no-timings",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = doc["sweep"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let truth_score = rows[0]["avg_hcvi"].as_f64().unwrap();
    let bad_score = rows[1]["avg_hcvi"].as_f64().unwrap();
    assert!(truth_score < bad_score);
    assert_eq!(doc["sweep"]["rows"][0]["source"], truth.to_str().unwrap());
}

#[test]
fn missing_input_fails_with_one_line_diagnostic() {
    let out = run(&["sweep", "--input", "/nonexistent/data.csv"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "stderr was: {stderr}");
    assert!(stderr.starts_with("error: "));
}

#[test]
fn bad_cell_reports_row_and_column_and_fails() {
    let dir = workdir("bad-cell");
    let path = dir.join("broken.csv");
    std::fs::write(&path, "1,2\n3,abc\n").unwrap();
    let out = run(&["granulate", "--input", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":2:2:"), "stderr was: {stderr}");
}

#[test]
fn coarse_granulation_advises_a_smaller_threshold() {
    let dir = workdir("coarse");
    let path = dir.join("tight.csv");
    let text: String = (0..30)
        .map(|i| format!("{},{}\n", (i % 6) as f64 * 0.01, (i / 6) as f64 * 0.01))
        .collect();
    std::fs::write(&path, text).unwrap();
    let out = run(&["sweep", "--input", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("bd-threshold-fraction"),
        "stderr was: {stderr}"
    );
}

#[test]
fn output_flag_writes_the_document_to_disk() {
    let dir = workdir("output-flag");
    let (csv, _) = synth_blobs(&dir, 8, 0.0);
    let target = dir.join("report.json");
    let out = run(&[
        "sweep",
        "--input",
        csv.to_str().unwrap(),
        "--seed",
        "8",
        "--format",
        "json",
        "--no-timings",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "stdout should stay clean");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc["config"]["output"], target.to_str().unwrap());
}

#[test]
fn timings_appear_unless_suppressed() {
    let dir = workdir("timings");
    let (csv, _) = synth_blobs(&dir, 9, 0.0);
    let with: serde_json::Value = serde_json::from_str(&stdout_of(&run(&[
        "sweep",
        "--input",
        csv.to_str().unwrap(),
        "--format",
        "json",
    ])))
    .unwrap();
    assert!(with["timings"]["total_ms"].as_f64().unwrap() > 0.0);
    assert!(
        with["timings"]["total_ms"].as_f64().unwrap()
            >= with["timings"]["granulate_ms"].as_f64().unwrap()
    );
}
