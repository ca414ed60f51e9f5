//! End-to-end checks of the `nls` binary: config parsing strictness, exit
//! codes, report structure and byte-stable output.

use std::path::Path;
use std::process::{Command, Output};

fn run_nls(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nls"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("failed to launch nls")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const VIRIAL_HOLDS: &str = r#"
analysis = "check-virial"

[symbol]
kind = "fractional"
alpha = 1.0

[potential]
family = "inverse-power"
dim = 3
coupling = 1.0
beta = 1.0
"#;

#[test]
fn virial_holds_exits_zero_with_report() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "run.toml", VIRIAL_HOLDS);
    let out = run_nls(&["check-virial", "--config", &cfg, "--out", "out"], tmp.path());
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("out/report.json")).unwrap())
            .unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["analysis"], "check-virial");
    assert_eq!(report["result"]["status"], "Holds");
    assert_eq!(report["config"]["symbol"]["alpha"], 1.0);
}

#[test]
fn virial_fails_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "run.toml",
        &VIRIAL_HOLDS.replace("beta = 1.0", "beta = 1.5"),
    );
    let out = run_nls(&["check-virial", "--config", &cfg], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("verdict JSON on stdout");
    assert_eq!(report["result"]["status"], "Fails");
    // Witness at the onset radius √((β/α-1)^{-1}) = √2.
    let witness = report["result"]["witness"].as_f64().unwrap();
    assert!((witness - 2f64.sqrt()).abs() < 1e-6, "witness {witness}");
}

#[test]
fn unknown_key_is_config_parse_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "run.toml",
        &format!("{VIRIAL_HOLDS}\nunknown_key = 1\n"),
    );
    let out = run_nls(&["check-virial", "--config", &cfg], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["error_kind"], "config-parse");
}

#[test]
fn misplaced_physical_key_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    // mass is not a fractional-symbol key
    let cfg = write(
        tmp.path(),
        "run.toml",
        &VIRIAL_HOLDS.replace("alpha = 1.0", "alpha = 1.0\nmass = 1.0"),
    );
    let out = run_nls(&["check-virial", "--config", &cfg], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analysis_mismatch_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "run.toml", VIRIAL_HOLDS);
    let out = run_nls(&["check-mourre", "--config", &cfg], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dicho_threshold_report_carries_intermediates() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "run.toml",
        r#"
analysis = "dicho-threshold"

[symbol]
kind = "fractional"
alpha = 1.75
"#,
    );
    let out = run_nls(&["dicho-threshold", "--config", &cfg, "--out", "out"], tmp.path());
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("out/report.json")).unwrap())
            .unwrap();
    let inter = &report["result"]["intermediates"];
    for key in ["i_alpha", "rho_min", "f_rho_min", "c_3_alpha"] {
        assert!(inter[key].is_number(), "missing intermediate {key}");
    }
    // I_{7/4} = 2/15.
    assert!((inter["i_alpha"].as_f64().unwrap() - 2.0 / 15.0).abs() < 1e-12);
}

#[test]
fn reports_are_byte_stable() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "run.toml", VIRIAL_HOLDS);
    run_nls(&["check-virial", "--config", &cfg, "--out", "a"], tmp.path());
    run_nls(&["check-virial", "--config", &cfg, "--out", "b"], tmp.path());
    let a = std::fs::read(tmp.path().join("a/report.json")).unwrap();
    let b = std::fs::read(tmp.path().join("b/report.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sweep_writes_csv_with_documented_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "run.toml",
        r#"
analysis = "sweep"

[symbol]
kind = "fractional"
alpha = 0.75

[torus]
dim = 1
n = 64
half_length = 12.0

[solver]
k = 3
tol = 1e-8
max_iter = 200

[sweep]
beta = 1.5
couplings = [0.0, 1.0]
"#,
    );
    let out = run_nls(
        &["sweep", "--config", &cfg, "--out", "out", "--format", "both"],
        tmp.path(),
    );
    assert!(
        out.status.success(),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let csv = std::fs::read_to_string(tmp.path().join("out/sweep.csv")).unwrap();
    assert!(csv.starts_with("# coupling sweep: C, lambda_min, n_negative, residual"));
    assert!(csv.contains("C,lambda_min,n_negative,residual"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 3);

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("out/report.json")).unwrap())
            .unwrap();
    assert_eq!(report["result"]["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn hs_norm_and_thm5_run() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "run.toml",
        r#"
analysis = "hs-norm"

[symbol]
kind = "relativistic"
alpha = 1.5
mass = 1.0

[resolvent]
weight_s = 2.0
z_re = 0.0
z_im = 0.0
"#,
    );
    let out = run_nls(&["hs-norm", "--config", &cfg, "--out", "out"], tmp.path());
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("out/report.json")).unwrap())
            .unwrap();
    // Closed-form anchor: at (s, α, m) = (2, 3/2, 1) the HS norm is π/6.
    let hs = report["result"]["hs_norm"].as_f64().unwrap();
    assert!((hs - std::f64::consts::PI / 6.0).abs() < 1e-7, "hs = {hs}");

    let cfg = write(
        tmp.path(),
        "thm5.toml",
        r#"
analysis = "thm5"

[symbol]
kind = "relativistic"
alpha = 1.5
mass = 1.0

[potential]
family = "inverse-power"
dim = 3
coupling = 0.1
beta = 4.0

[resolvent]
weight_s = 2.0
"#,
    );
    let out = run_nls(&["thm5", "--config", &cfg], tmp.path());
    assert!(
        out.status.success(),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn tabulated_symbol_from_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let mut rows = String::from("u,psi\n");
    for i in 0..400 {
        let u = (i as f64 / 399.0).powi(2) * 1e6;
        rows.push_str(&format!("{},{}\n", u, (2.0 * u).sqrt()));
    }
    let csv = write(tmp.path(), "psi.csv", &rows);
    let cfg = write(
        tmp.path(),
        "run.toml",
        &format!(
            r#"
analysis = "check-virial"

[symbol]
kind = "tabulated"
csv = "{csv}"

[potential]
family = "inverse-power"
dim = 3
coupling = 1.0
beta = 0.5

[radii]
min = 1e-3
max = 1e2
count = 256
"#
        ),
    );
    let out = run_nls(&["check-virial", "--config", &cfg], tmp.path());
    // A tabulated |ξ|-like symbol with a mild inverse-power potential holds.
    assert!(
        out.status.success(),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
}
