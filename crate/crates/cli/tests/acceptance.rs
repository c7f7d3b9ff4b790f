//! CLI acceptance tests: the exit-code contract, the config-time
//! superluminality gate (criterion 8), and byte-identical artifact
//! determinism (criterion 10), plus the documented CSV content checks.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rdi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdi"))
        .args(args)
        .env_remove("RDI_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const FIG1_SMALL: &str = r#"
[scenario]
family = "planar"
name = "ellipse-fig1"

[parameters]
b_tesla = 0.35
a1_m = 1.0e-6
a2_m = 2.0e-6
omega_per_s = 0.5e9

[grid]
nt = 3
nx = 3
ny = 3
half_widths = 3.0
times = 3
z = 0.0

[output]
trajectory_steps = 2500
"#;

/// Criterion 8 (config gate): a superluminal configuration exits with
/// code 2 and the error names the guard.
#[test]
fn acceptance_08_superluminality_config_gate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.toml",
        r#"
[scenario]
family = "planar"

[parameters]
b_tesla = 0.35
a1_m = 1.0
a2_m = 2.0
omega_per_s = 0.5e9
"#,
    );
    let out = rdi(&["run", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let err = String::from_utf8_lossy(&out.stderr);
    let parsed: serde_json::Value =
        serde_json::from_str(err.trim()).expect("machine-readable error JSON");
    assert!(parsed["error"].as_str().unwrap().contains("superluminality"));
    assert_eq!(parsed["exit_code"], 2);
    assert_eq!(parsed["kind"], "config");
    println!("ACCEPTANCE 8 (config gate): PASS");
}

/// Criterion 10: identical config + grid produce byte-identical artifacts.
#[test]
fn acceptance_10_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fig1.toml", FIG1_SMALL);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let r = rdi(&["run", &cfg, "--out", out.to_str().unwrap(), "--seed", "7"]);
        assert_eq!(r.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&r.stderr));
    }
    for name in [
        "density.csv",
        "fields.csv",
        "trajectory.csv",
        "report.json",
        "manifest.json",
    ] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
    println!("ACCEPTANCE 10: PASS (5 byte-identical artifacts)");
}

/// Exit-code contract: 0 on pass, 1 on physics fail, 2 on config fail,
/// 3 on I/O fail.
#[test]
fn exit_code_contract() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fig1.toml", FIG1_SMALL);

    // 0: clean pass
    let ok = rdi(&["run", &cfg, "--out", dir.path().join("ok").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    // 1: physics fail via an absurd tolerance override
    let fail = rdi(&[
        "run",
        &cfg,
        "--out",
        dir.path().join("fail").to_str().unwrap(),
        "--tol",
        "dirac_residual=1e-300",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    // the report still landed, with the failing law recorded
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fail/report.json")).unwrap())
            .unwrap();
    let laws = report["laws"].as_array().unwrap();
    assert!(laws
        .iter()
        .any(|l| l["law"] == "dirac_residual" && l["pass"] == false));

    // 2: malformed config (unknown key)
    let bad = write_config(
        dir.path(),
        "bad.toml",
        "[scenario]\nfamily = \"planar\"\nnope = 1\n",
    );
    let out = rdi(&["run", &bad]);
    assert_eq!(out.status.code(), Some(2));

    // 2: unknown scenario name on verify
    let out = rdi(&["verify", "no-such-scenario"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: unwritable output path
    let out = rdi(&["run", &cfg, "--out", "/proc/definitely/not/writable"]);
    assert_eq!(out.status.code(), Some(3));
    println!("exit-code contract: PASS");
}

/// The density CSV of ellipse-fig1 peaks at (x, y) = (1 um, 0) at t = 0.
#[test]
fn density_peak_sits_at_one_micron() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fig1.toml", FIG1_SMALL);
    let out = dir.path().join("out");
    assert_eq!(
        rdi(&["run", &cfg, "--out", out.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let csv = fs::read_to_string(out.join("density.csv")).unwrap();
    let mut best = (0.0f64, 0.0f64, 0.0f64); // x, y, density
    for line in csv.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        if cols[0] == 0.0 && cols[4] > best.2 {
            best = (cols[1], cols[2], cols[4]);
        }
    }
    assert!(
        (best.0 - 1.0e-6).abs() < 1.0e-8 && best.1.abs() < 1.0e-8,
        "peak at ({:.3e}, {:.3e})",
        best.0,
        best.1
    );
    // and the trajectory CSV traces the 1 um x 2 um ellipse
    let traj = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    let (mut max_x, mut max_y) = (0.0f64, 0.0f64);
    for line in traj.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        max_x = max_x.max(cols[1].abs());
        max_y = max_y.max(cols[2].abs());
    }
    assert!((max_x - 1.0e-6).abs() < 1.0e-8, "a1 = {max_x:.3e}");
    assert!((max_y - 2.0e-6).abs() < 2.0e-8, "a2 = {max_y:.3e}");
    println!("density peak at (1 um, 0) and 1x2 um trajectory: PASS");
}

/// The Redmond field CSV has a constant Bz column equal to -b (scaled).
#[test]
fn redmond_bz_column_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "redmond.toml",
        r#"
[scenario]
family = "redmond"
name = "redmond-fig2"

[parameters]
b_tesla = 0.13
a0_tesla = 3.24
wavelength_m = 800e-9

[grid]
nt = 3
nx = 3
ny = 3
half_widths = 2.0
times = 2
z = 0.0

[output]
trajectory_steps = 400
"#,
    );
    let out = dir.path().join("out");
    let run = rdi(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&run.stderr));
    let csv = fs::read_to_string(out.join("fields.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let bz = cols[9];
        assert!((bz + 1.0).abs() < 1e-12, "Bz = {bz}"); // b = eB/(m omega) = 1
    }
    // the manifest flags the wavelength/omega discrepancy
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let notes = manifest["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("wavelength")));
    println!("redmond Bz column constant: PASS");
}

/// Every emitted file is listed in the manifest with its correct hash.
#[test]
fn manifest_hashes_every_artifact() {
    use sha2::{Digest, Sha256};
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fig1.toml", FIG1_SMALL);
    let out = dir.path().join("out");
    assert_eq!(
        rdi(&["run", &cfg, "--out", out.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    let names: Vec<&str> = files.iter().map(|f| f["name"].as_str().unwrap()).collect();
    for expected in ["density.csv", "fields.csv", "trajectory.csv", "report.json"] {
        assert!(names.contains(&expected), "{expected} missing from manifest");
    }
    for f in files {
        let body = fs::read(out.join(f["name"].as_str().unwrap())).unwrap();
        let mut hasher = Sha256::new();
        hasher.update(&body);
        assert_eq!(
            hex::encode(hasher.finalize()),
            f["sha256"].as_str().unwrap(),
            "hash mismatch for {}",
            f["name"]
        );
    }
    // constants table and scaled groups are embedded
    assert!(manifest["constants"]["speed_of_light_m_per_s"].as_f64().unwrap() == 299792458.0);
    assert!(manifest["scaled_groups"]["mu"].as_f64().unwrap() > 1.0e12);
    println!("manifest hashes: PASS");
}

/// `verify` with a seed appends the randomized inversion sweep and both the
/// listing and schema subcommands respond.
#[test]
fn auxiliary_subcommands() {
    let out = rdi(&["list-scenarios"]);
    assert_eq!(out.status.code(), Some(0));
    let list = String::from_utf8_lossy(&out.stdout);
    for name in ["ellipse-fig1", "redmond-fig2", "bagrov-sourcefree"] {
        assert!(list.contains(name));
    }

    let out = rdi(&["schema"]);
    assert_eq!(out.status.code(), Some(0));
    let schema = String::from_utf8_lossy(&out.stdout);
    assert!(schema.contains("t,x,y,z,Ex,Ey,Ez,Bx,By,Bz"));
    assert!(schema.contains("Exit codes"));

    let out = rdi(&["verify", "ellipse-generic", "--grid", "3x3x3", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    let laws = report["laws"].as_array().unwrap();
    assert!(laws.iter().any(|l| l["law"] == "inversion_sweep" && l["pass"] == true));
    println!("auxiliary subcommands: PASS");
}
