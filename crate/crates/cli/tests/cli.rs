//! End-to-end tests of the `nogold` binary: exit codes, report formats,
//! file ingestion, and the verification subcommands.

use std::process::{Command, Output};

fn nogold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nogold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn version_names_engine_and_statistic() {
    let out = nogold(&["--version"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("buehler-bisect-1"), "{text}");
    assert!(text.contains("wald-cc-lower"), "{text}");
}

#[test]
fn bound_reference_table_reproduces_reported_values() {
    let started = std::time::Instant::now();
    let out = nogold(&[
        "bound", "--k00", "210", "--k01", "20", "--k10", "4", "--k11", "22", "--beta", "0.95",
        "--prevalence-max", "0.15", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let gain = report["gain_product_lower"].as_f64().unwrap();
    let cap = report["gain_lower_at_cap"].as_f64().unwrap();
    let se1 = report["se1_upper"].as_f64().unwrap();
    let implied = report["se1_upper_from_gain"].as_f64().unwrap();
    assert!((gain - 0.0320).abs() <= 0.01, "gain = {gain}");
    assert!((cap - gain / 0.15).abs() < 1e-12);
    assert!((se1 - 0.83).abs() <= 0.01, "se1 = {se1}");
    assert!((implied - (1.0 - cap)).abs() < 1e-12);
    assert!(
        report["full_model_statement"]
            .as_str()
            .unwrap()
            .contains("/π₁"),
    );
    eprintln!("reference table via CLI took {:?}", started.elapsed());
}

#[test]
fn bound_json_round_trips_byte_identical() {
    let out = nogold(&[
        "bound", "--k00", "5", "--k01", "2", "--k10", "1", "--k11", "2", "--beta", "0.9",
        "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let report: nogold::analysis::Report = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(text.trim_end(), again, "re-serialization changed bytes");
}

#[test]
fn bound_text_and_json_agree_on_displayed_values() {
    let args = ["bound", "--k00", "5", "--k01", "3", "--k10", "1", "--k11", "3", "--beta", "0.9"];
    let text_out = nogold(&args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json_out = nogold(&json_args);
    assert_eq!(exit_code(&text_out), 0);
    assert_eq!(exit_code(&json_out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let text = stdout(&text_out);
    let gain_display = report["gain_product_lower_display"].as_f64().unwrap();
    let se1_display = report["se1_upper_display"].as_f64().unwrap();
    assert!(text.contains(&format!("{gain_display:.4}")), "{text}");
    assert!(text.contains(&format!("{se1_display:.4}")), "{text}");
}

#[test]
fn bound_missing_cell_names_field() {
    let out = nogold(&["bound", "--k00", "5", "--k01", "2", "--k11", "2"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("k10"), "{}", stderr(&out));
}

#[test]
fn bound_rejects_bad_level() {
    let out = nogold(&[
        "bound", "--k00", "5", "--k01", "2", "--k10", "1", "--k11", "2", "--beta", "1.5",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("beta"), "{}", stderr(&out));
}

#[test]
fn bound_rejects_empty_table() {
    let out = nogold(&["bound", "--k00", "0", "--k01", "0", "--k10", "0", "--k11", "0"]);
    assert_eq!(exit_code(&out), 2);
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("nogold-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn bound_reads_json_and_csv_files() {
    let json = temp_file("table.json", r#"{"k00": 5, "k01": 2, "k10": 1, "k11": 2}"#);
    let csv = temp_file("table.csv", "5,2\n1,2\n");
    let from_json = nogold(&[
        "bound", "--input", json.to_str().unwrap(), "--beta", "0.9", "--format", "json",
    ]);
    let from_csv = nogold(&[
        "bound", "--input", csv.to_str().unwrap(), "--beta", "0.9", "--format", "json",
    ]);
    assert_eq!(exit_code(&from_json), 0, "{}", stderr(&from_json));
    assert_eq!(exit_code(&from_csv), 0, "{}", stderr(&from_csv));
    assert_eq!(stdout(&from_json), stdout(&from_csv));
    std::fs::remove_file(json).ok();
    std::fs::remove_file(csv).ok();
}

#[test]
fn bound_bad_csv_cell_names_position() {
    let csv = temp_file("bad.csv", "5,x\n1,2\n");
    let out = nogold(&["bound", "--input", csv.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("k01"), "{}", stderr(&out));
    std::fs::remove_file(csv).ok();
}

#[test]
fn feasible_extremes_prints_sensitivity_ratio() {
    let out = nogold(&[
        "feasible", "--from-counts", "210,20,4,22", "--set", "E_le", "--extremes",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    // 26/42 = 0.6190..., shown rounded to stay inside the exact interval.
    assert!(stdout(&out).contains("0.6190"), "{}", stdout(&out));
}

#[test]
fn feasible_membership_gain_anchor() {
    // (Pr, dSe) = (1, q01 - q10) with q from the reference table:
    // (20 - 4)/256 = 0.0625.
    let out = nogold(&[
        "feasible", "--from-counts", "210,20,4,22", "--set", "C_le", "--pr", "1.0", "--dse",
        "0.0625",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("member"), "{}", stdout(&out));

    let out = nogold(&[
        "feasible", "--from-counts", "210,20,4,22", "--set", "C_le", "--pr", "1.0", "--dse",
        "0.5",
    ]);
    assert!(stdout(&out).contains("not a member"), "{}", stdout(&out));
}

#[test]
fn feasible_rejects_off_simplex_density() {
    let out = nogold(&[
        "feasible", "--q00", "0.5", "--q01", "0.5", "--q10", "0.5", "--q11", "0.5", "--set", "A",
        "--pr", "0.5", "--sp1", "0.5", "--se1", "0.5", "--sp2", "0.5", "--se2", "0.5",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn feasible_extremes_requires_prevalence_where_needed() {
    let out = nogold(&[
        "feasible", "--from-counts", "210,20,4,22", "--set", "C", "--extremes",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("--pr"), "{}", stderr(&out));
}

#[test]
fn coverage_small_run_passes() {
    let out = nogold(&["coverage", "--n", "3", "--beta", "0.8", "--grid", "11"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS"), "{}", stdout(&out));
}

#[test]
fn coverage_budget_exceeded_exits_3() {
    let out = nogold(&["coverage", "--n", "100", "--beta", "0.8"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("required"), "{}", stderr(&out));
}

#[test]
fn oracle_suite_passes_and_is_thread_capped() {
    let out = Command::new(env!("CARGO_BIN_EXE_nogold"))
        .args(["oracle", "--seed", "7", "--samples", "2000"])
        .env("NOGOLD_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS forward-full-model"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn bad_thread_cap_is_a_validation_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_nogold"))
        .args(["coverage", "--n", "2", "--beta", "0.5"])
        .env("NOGOLD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("NOGOLD_THREADS"), "{}", stderr(&out));
}

#[test]
fn mc_coverage_subcommand_reports() {
    let out = nogold(&[
        "mc-coverage", "--n", "8", "--beta", "0.8", "--reps", "40", "--seed", "11",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("gain="), "{}", stdout(&out));
}
