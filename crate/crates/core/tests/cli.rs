use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bessel-rbf"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("run.toml");
    fs::write(&path, text).unwrap();
    path
}

fn run(command: &str, config: Option<&Path>, out: &Path, extra: &[&str]) -> (i32, String) {
    let mut cmd = bin();
    cmd.arg(command).arg("--out").arg(out).arg("--quiet");
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    let output = cmd.args(extra).output().unwrap();
    (output.status.code().unwrap(), String::from_utf8_lossy(&output.stderr).into_owned())
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn zeros_command_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "order = -0.5\ncount = 12\n");
    let (code, _) = run("zeros", Some(&cfg), &dir.path().join("out"), &[]);
    assert_eq!(code, 0);
    let rows = csv_rows(&dir.path().join("out/zeros.csv"));
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0][2], "");
    for row in &rows[1..] {
        let spacing: f64 = row[2].parse().unwrap();
        assert!((spacing - std::f64::consts::PI).abs() < 1e-12);
    }
    assert!(dir.path().join("out/manifest.json").exists());
}

#[test]
fn zero_count_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "order = 0.0\ncount = 0\n");
    let (code, err) = run("zeros", Some(&cfg), &dir.path().join("out"), &[]);
    assert_eq!(code, 1);
    assert!(err.contains("count"), "{err}");
}

#[test]
fn missing_key_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n = 1\nJ = 4\n");
    let (code, err) = run("expand", Some(&cfg), &dir.path().join("out"), &[]);
    assert_eq!(code, 1);
    assert!(err.contains("`R`"), "{err}");
    let (code, _) = run("expand", None, &dir.path().join("out"), &[]);
    assert_eq!(code, 1);
    let (code, _) = run("expand", Some(&cfg), &dir.path().join("out"), &["--seed", "not-a-number"]);
    assert_eq!(code, 1);
}

#[test]
fn cosine_mode_expands_to_a_delta() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 1\nR = 1.0\nJ = 8\nweight_mode = \"orthogonality_consistent\"\nfield = { name = \"cosine_mode\", m = 1 }\n",
    );
    let (code, _) = run("expand", Some(&cfg), &dir.path().join("out"), &[]);
    assert_eq!(code, 0);
    for row in csv_rows(&dir.path().join("out/coefficients.csv")) {
        let j: usize = row[0].parse().unwrap();
        if j == 0 {
            continue;
        }
        let a: f64 = row[2].parse().unwrap();
        let target = if j == 1 { 1.0 } else { 0.0 };
        assert!((a - target).abs() <= 1e-6, "j={j}: {a}");
    }
}

#[test]
fn zero_field_gives_zero_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n = 2\nR = 1.0\nJ = 4\nfield = { name = \"zero\" }\n");
    assert_eq!(run("expand", Some(&cfg), &dir.path().join("out"), &[]).0, 0);
    for row in csv_rows(&dir.path().join("out/coefficients.csv")) {
        assert_eq!(row[2].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn zero_field_transform_is_flagged_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 1\nfield = { name = \"zero\" }\nlambda_max = 6.0\nspectral_nodes = 16\ncenter_nodes = 32\nR_cut = 4.0\neval_nodes = 21\n",
    );
    assert_eq!(run("transform", Some(&cfg), &dir.path().join("out"), &[]).0, 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/calibration.json")).unwrap()).unwrap();
    let bessel = report["bessel"].as_array().unwrap();
    assert_eq!(bessel.len(), 2);
    assert!(bessel.iter().all(|e| e["degenerate"] == true));
}

#[test]
fn outputs_are_byte_identical_and_rerunnable_from_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 4\nR = 1.0\nJ = 3\nmc_samples = 300\nradial_order = 12\nfield = { name = \"bump\" }\nsamples = 50\n",
    );
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    assert_eq!(run("reconstruct", Some(&cfg), &a, &["--seed", "9"]).0, 0);
    assert_eq!(run("reconstruct", Some(&cfg), &b, &["--seed", "9"]).0, 0);
    assert_eq!(run("reconstruct", Some(&a.join("manifest.json")), &c, &[]).0, 0);
    for name in ["coefficients.csv", "samples.csv"] {
        let first = fs::read(a.join(name)).unwrap();
        assert_eq!(first, fs::read(b.join(name)).unwrap(), "{name}");
        assert_eq!(first, fs::read(c.join(name)).unwrap(), "{name} from manifest");
    }
    let other = dir.path().join("d");
    assert_eq!(run("reconstruct", Some(&cfg), &other, &["--seed", "10"]).0, 0);
    assert_ne!(fs::read(a.join("coefficients.csv")).unwrap(), fs::read(other.join("coefficients.csv")).unwrap());
}

#[test]
fn verify_passes_and_detects_a_wrong_zero_table() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run("verify", None, &dir.path().join("ok"), &[]);
    assert_eq!(code, 0);
    let cfg = write_config(dir.path(), "inject_fault = \"wrong_zero_table\"\n");
    let (code, err) = run("verify", Some(&cfg), &dir.path().join("bad"), &[]);
    assert_eq!(code, 3);
    assert!(err.contains("zero_residual"), "{err}");
    let rows = csv_rows(&dir.path().join("bad/verify.csv"));
    assert!(rows.iter().any(|r| r[0] == "gram_identity" && r[3] == "false"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("bad/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["exit_status"], 3);
}

#[test]
fn gram_and_spacetime_commands_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n = 1\nR = 1.0\nJ = 3\ncenters = [[-0.5], [0.5]]\nradial_order = 48\n");
    assert_eq!(run("gram", Some(&cfg), &dir.path().join("g"), &[]).0, 0);
    assert_eq!(csv_rows(&dir.path().join("g/gram.csv")).len(), 36);

    let cfg = write_config(
        dir.path(),
        "n = 1\nR = 1.0\nJ = 3\nc = 1.0\ncenter_times = [0.0]\nfield = { name = \"cosine_mode\", m = 1 }\ncoefficients = \"oracle\"\nsamples = 64\n",
    );
    assert_eq!(run("spacetime", Some(&cfg), &dir.path().join("s"), &[]).0, 0);
    let rows = csv_rows(&dir.path().join("s/samples.csv"));
    assert!(!rows.is_empty());
    for row in rows {
        let err: f64 = row[4].parse().unwrap();
        assert!(err < 1e-8, "{row:?}");
    }
}

#[test]
fn box_before_every_cone_is_a_numeric_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 1\nR = 1.0\nJ = 3\nc = 1.0\ncenter_times = [5.0]\nt0 = 0.0\nt1 = 1.0\nfield = { name = \"gaussian\" }\n",
    );
    let (code, err) = run("spacetime", Some(&cfg), &dir.path().join("out"), &[]);
    assert_eq!(code, 2, "{err}");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["exit_status"], 2);
}
