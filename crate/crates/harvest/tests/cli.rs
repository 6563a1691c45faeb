use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use harvest::output::{csv_string, CSV_HEADER};
use harvest::{run_sweep, Grid, RunOptions, SweepConfig};

fn harvest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harvest")).args(args).output().expect("binary runs")
}

fn small_sweep(out: &Path, extra: &[&str]) -> Output {
    let out = out.to_str().unwrap();
    let mut args = vec!["sweep", "--out", out, "--distance", "0.3", "--grid-xi", "0.5,2.5,5", "--grid-eb", "0,4,3"];
    args.extend_from_slice(extra);
    harvest(&args)
}

fn cache_lines(out: &Path) -> Vec<String> {
    let dir = out.join(".resume");
    let file = fs::read_dir(&dir).unwrap().next().unwrap().unwrap().path();
    fs::read_to_string(file).unwrap().lines().map(String::from).collect()
}

#[test]
fn sweep_writes_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let run = small_sweep(dir.path(), &["--no-resume"]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let csv = fs::read_to_string(dir.path().join("results.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.count(), 15);
    assert!(dir.path().join("results.json").exists());
    let svg = fs::read_to_string(dir.path().join("heatmap_perturbative.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("xi_x") && svg.contains("epsilon_b"));
    assert!(!dir.path().join(".resume").exists());
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_grid = small_sweep(dir.path(), &["--grid-xi", "2,1,5"]);
    assert_eq!(bad_grid.status.code(), Some(2));
    let bad_engine = small_sweep(dir.path(), &["--engine", "quantum"]);
    assert_eq!(bad_engine.status.code(), Some(2));

    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "coupling = 7.5e-3\nno_such_key = 1\n").unwrap();
    let unknown = harvest(&["sweep", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(!dir.path().join("results.csv").exists());
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "coupling = 5e-3\nxi_x = [0.5, 2.5, 3]\nepsilon_b = [0.0, 2.0, 2]\n").unwrap();
    let out = dir.path().join("out");
    let run = harvest(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--grid-eb",
        "0,2,4",
        "--no-resume",
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let csv = fs::read_to_string(out.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 4);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("results.json")).unwrap()).unwrap();
    assert_eq!(json["config"]["coupling"], 5e-3);
}

#[test]
fn resume_skips_completed_points() {
    let dir = tempfile::tempdir().unwrap();
    let first = small_sweep(dir.path(), &[]);
    assert_eq!(first.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("results.csv")).unwrap();
    let lines = cache_lines(dir.path());
    assert_eq!(lines.len(), 15);

    let second = small_sweep(dir.path(), &[]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(cache_lines(dir.path()).len(), 15);
    assert_eq!(fs::read_to_string(dir.path().join("results.csv")).unwrap(), csv);

    // drop the last six records and tear the line before them
    let cache = fs::read_dir(dir.path().join(".resume")).unwrap().next().unwrap().unwrap().path();
    let mut kept = lines[..9].join("\n");
    kept.truncate(kept.len() - 10);
    fs::write(&cache, kept).unwrap();
    let third = small_sweep(dir.path(), &[]);
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("results.csv")).unwrap(), csv);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("results.json")).unwrap()).unwrap();
    assert_eq!(json["metadata"]["resumed"], 8);

    let fourth = small_sweep(dir.path(), &[]);
    assert_eq!(fourth.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("results.json")).unwrap()).unwrap();
    assert_eq!(json["metadata"]["resumed"], 15);
}

#[test]
fn empty_result_is_header_only() {
    let mut config = SweepConfig::default();
    config.xi_x = Grid::new(0.5, 1.0, 2);
    config.epsilon_b = Grid::new(0.0, 1.0, 2);
    let mut result = run_sweep(&config, &RunOptions::default()).unwrap();
    assert_eq!(csv_string(&result).lines().count(), 5);
    result.records.clear();
    assert_eq!(csv_string(&result), format!("{CSV_HEADER}\n"));
}

#[test]
fn feasibility_report_prints_numbers() {
    let run = harvest(&["feasibility"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("feasible true"), "{text}");
}

#[test]
fn profile_table_has_header_and_rows() {
    let run = harvest(&["profile", "--cells", "5", "--pitch", "1e-3", "--b0", "1e-3"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# cell flux_phi0");
    assert_eq!(lines.len(), 6);
    assert!(lines[3].starts_with("2 5.000000000000e-01"), "{text}");
}
