//! CLI surface tests: argument handling, exit codes, output formats.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wormkit"))
}

#[test]
fn lp_range_matches_closed_form() {
    let out = bin()
        .args(["lp-range", "--beta", "1.5*pi"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p_min=1.3333333333333333"), "{text}");
    assert!(text.contains("p_max=4"), "{text}");
}

#[test]
fn exhaustion_verdicts() {
    let out = bin()
        .args(["exhaustion", "--mu", "pi", "--delta", "0.6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict=infeasible"), "{text}");
    assert!(text.contains("margin=-0.3"), "{text}");

    let out = bin()
        .args(["exhaustion", "--mu", "pi", "--delta", "0.4"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict=feasible"), "{text}");
    assert!(text.contains("witness_checked=true"), "{text}");
}

#[test]
fn domain_errors_exit_2() {
    let out = bin()
        .args(["kernel-eval", "--z", "0,0", "--w", "0,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn accuracy_errors_exit_3() {
    // An interior point hugging the slanted edge leaves no decay margin.
    let out = bin()
        .args([
            "kernel-eval",
            "--beta",
            "1.5*pi",
            "--z",
            "0+4.7107i,4.8066",
            "--w",
            "0+4.7107i,4.8066",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn unknown_flags_exit_64() {
    let out = bin().args(["lp-range", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(64));
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn help_is_success() {
    let out = bin().arg("--help").output().unwrap();
    assert!(out.status.success());
}

#[test]
fn json_output_is_valid_and_schema_tagged() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kernel.json");
    let out = bin()
        .args([
            "kernel-eval",
            "--beta",
            "1.5*pi",
            "--z",
            "0.2+0.1i,1.1",
            "--w",
            "0,1",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed["schema"], "wormkit.v1");
    assert_eq!(parsed["command"], "kernel-eval");
    assert!(parsed["scalars"]["value"]["re"].is_f64());
    assert!(parsed["scalars"]["err_estimate"].as_f64().unwrap() >= 0.0);

    // Manifest sits next to the output and records enough to re-run.
    let manifest_path = dir.path().join("kernel.json.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["schema"], "wormkit.v1");
    assert!(manifest["argv"].as_array().unwrap().len() >= 2);
    assert!(manifest["configuration"]["beta"].is_f64());
    assert!(manifest["wall_time_ms"].is_f64());
}

#[test]
fn csv_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = bin()
        .args([
            "singularity-scan",
            "--beta",
            "1.5*pi",
            "--points",
            "6",
            "--output",
            path.to_str().unwrap(),
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers, csv::StringRecord::from(vec!["t", "magnitude", "err_estimate"]));
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    // Magnitudes grow monotonically toward t -> 0 (rows are ascending in t).
    let mags: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    for w in mags.windows(2) {
        assert!(w[1] < w[0], "{mags:?}");
    }
}

#[test]
fn lp_range_csv_emits_scalars_as_key_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("range.csv");
    let out = bin()
        .args([
            "lp-range",
            "--beta",
            "1.5*pi",
            "--format",
            "csv",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("key,value\n"), "{text}");
    assert!(text.contains("p_max,4"), "{text}");
}

/// Structural validation of a result document against the shipped schema
/// description (`schema/wormkit.v1.json`): required keys, the schema tag,
/// and the value shapes it admits.
#[test]
fn json_output_matches_shipped_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/wormkit.v1.json")).unwrap();
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let out = bin()
        .args([
            "singularity-scan",
            "--beta",
            "1.5*pi",
            "--points",
            "4",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();

    for key in required {
        assert!(doc.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(doc["schema"], schema["properties"]["schema"]["const"]);
    assert!(doc["columns"].as_array().unwrap().iter().all(|c| c.is_string()));
    let n_cols = doc["columns"].as_array().unwrap().len();
    for row in doc["rows"].as_array().unwrap() {
        assert_eq!(row.as_array().unwrap().len(), n_cols);
        for cell in row.as_array().unwrap() {
            let ok = cell.is_number()
                || cell.is_string()
                || (cell.is_object() && cell["re"].is_number() && cell["im"].is_number());
            assert!(ok, "cell {cell} not admitted by the schema");
        }
    }
}

#[test]
fn threads_env_is_honored() {
    let out = bin()
        .env("WORMKIT_THREADS", "1")
        .args(["lp-range", "--beta", "2*pi"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

/// Byte-compare two files, with a readable panic message.
fn assert_same_bytes(a: &Path, b: &Path) {
    let ba = std::fs::read(a).unwrap();
    let bb = std::fs::read(b).unwrap();
    assert!(
        ba == bb,
        "outputs differ: {} vs {}",
        a.display(),
        b.display()
    );
}

#[test]
fn seeded_reruns_are_bit_identical() {
    // Quick determinism check on the seeded random commands (the full
    // suite-level check lives in the acceptance test).
    let dir = tempfile::tempdir().unwrap();
    for (name, run) in [("a", "one"), ("b", "two")] {
        let _ = run;
        let path = dir.path().join(format!("levi-{name}.csv"));
        let out = bin()
            .args([
                "levi",
                "--beta",
                "1.5*pi",
                "--samples",
                "12",
                "--seed",
                "42",
                "--format",
                "csv",
                "--output",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    assert_same_bytes(
        &dir.path().join("levi-a.csv"),
        &dir.path().join("levi-b.csv"),
    );
}
