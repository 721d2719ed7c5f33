//! End-to-end tests of the `trirev` binary: subcommands, config layering, exit
//! codes, and byte-level report determinism.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trirev"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("trirev-test-{}-{name}", std::process::id()));
    p
}

fn strip_timestamp(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for line in s.lines() {
        if line.trim_start().starts_with("\"timestamp_unix\"") {
            out.push_str("\"timestamp_unix\": 0,\n");
        } else {
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}

#[test]
fn verify_all_is_deterministic_modulo_timestamp() {
    let (out1, out2) = (tmp("det1.json"), tmp("det2.json"));
    for out in [&out1, &out2] {
        let status = bin()
            .args([
                "verify",
                "--suite",
                "all",
                "--trials",
                "25",
                "--seed",
                "42",
                "--out",
            ])
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success(), "verify exited with {status}");
    }
    let a = std::fs::read_to_string(&out1).unwrap();
    let b = std::fs::read_to_string(&out2).unwrap();
    assert_eq!(strip_timestamp(&a), strip_timestamp(&b));
    let _ = std::fs::remove_file(out1);
    let _ = std::fs::remove_file(out2);
}

#[test]
fn verify_writes_parseable_report_to_stdout() {
    let output = bin()
        .args(["verify", "--suite", "constants", "--trials", "3", "--seed", "7"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["envelope"]["seed"], 7);
    assert_eq!(report["envelope"]["suites"][0], "constants");
    // agreement records present
    let ids: Vec<&str> = report["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["theorem_id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"C2_AGREEMENT"));
}

#[test]
fn config_file_layering_and_flag_precedence() {
    let cfg_path = tmp("layer.cfg");
    std::fs::write(
        &cfg_path,
        "# comment\nsuite = discrete\ntrials = 4\nseed = 5\ntol_abs = 1e-9\n",
    )
    .unwrap();
    let output = bin()
        .args(["verify", "--config"])
        .arg(&cfg_path)
        .args(["--seed", "11"]) // flag wins over file
        .output()
        .unwrap();
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["envelope"]["seed"], 11);
    assert_eq!(report["envelope"]["trials"], 4);
    let _ = std::fs::remove_file(cfg_path);
}

#[test]
fn env_seed_fallback() {
    let output = bin()
        .args(["verify", "--suite", "constants", "--trials", "2"])
        .env("TRIREV_SEED", "314")
        .output()
        .unwrap();
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["envelope"]["seed"], 314);
}

#[test]
fn bad_config_exits_4() {
    let status = bin()
        .args(["verify", "--suite", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(4));

    let cfg_path = tmp("bad.cfg");
    std::fs::write(&cfg_path, "unknown_key = 3\n").unwrap();
    let status = bin().args(["verify", "--config"]).arg(&cfg_path).output().unwrap();
    assert_eq!(status.status.code(), Some(4));
    let _ = std::fs::remove_file(cfg_path);

    let status = bin().args(["verify", "--trials", "0"]).output().unwrap();
    assert_eq!(status.status.code(), Some(4));
}

#[test]
fn constants_subcommand_reports_agreement() {
    let output = bin()
        .args([
            "constants", "--space", "lp", "--p", "2", "--dim", "3", "--members", "2",
            "--starts", "16", "--iters", "120", "--seed", "9",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["method"], "gram_eigen");
    let est = doc["estimate"].as_f64().unwrap();
    let cap = doc["cap"].as_f64().unwrap();
    assert!(est <= cap + 1e-9);
    let agreement = doc["agreement_rel"].as_f64().unwrap();
    assert!(agreement <= 1e-6, "agreement {agreement}");
}

#[test]
fn constants_subcommand_cmod_and_cinf() {
    let output = bin()
        .args(["constants", "--space", "cmod", "--space-p", "4", "--p", "inf", "--members", "3"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["space"], "cmod(4)");
    assert!(doc["estimate"].as_f64().unwrap() <= doc["cap"].as_f64().unwrap() + 1e-9);
}

#[test]
fn sharpness_subcommand_reaches_bound() {
    let output = bin()
        .args(["sharpness", "--theorem", "DM_SINGLE", "--budget", "10000", "--seed", "42"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let best = doc["best_ratio"].as_f64().unwrap();
    assert!((1.0 - 1e-3..=1.0 + 1e-7).contains(&best), "best {best}");
    assert_eq!(doc["bound_exceeded"], false);
    // witness embedded as (re, im) pair arrays
    assert!(doc["witness"]["vectors"][0][0].is_array());
}

#[test]
fn sharpness_rejects_continuous_ids() {
    let output = bin()
        .args(["sharpness", "--theorem", "CONT_MULT_SINGLE", "--budget", "10"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(4));
}
