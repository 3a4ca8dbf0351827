use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn aps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aps-spin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn json_stderr(out: &Output) -> Value {
    assert!(!out.status.success());
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &[
            "stern-gerlach",
            "--theta",
            "0.7",
            "--x-points",
            "401",
            "--t-points",
            "3",
        ][..],
        &["lorentz", "--tau", "5", "--e-field", "0.2,0,0.1"][..],
        &["dirac-planewave", "--p", "0.1,0,0", "--p", "0,0.3,0"][..],
    ] {
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        for path in [&a, &b] {
            let mut full = args.to_vec();
            full.extend(["--output", path.to_str().unwrap()]);
            let out = aps(&full);
            assert!(
                out.status.success(),
                "{}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert!(!x.is_empty());
        assert_eq!(x, y, "{args:?}");
    }
}

#[test]
fn identity_check_passes_and_is_versioned() {
    let v = json_stdout(&aps(&[
        "check-identities",
        "--trials",
        "10000",
        "--seed",
        "42",
    ]));
    assert_eq!(v["all_passed"], true);
    assert!(v["max_rel_err"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["spec_version"], aps_spin_cli::SPEC_VERSION);
}

#[test]
fn stern_gerlach_summary() {
    let v = json_stdout(&aps(&[
        "stern-gerlach",
        "--theta",
        "1.0472",
        "--v",
        "0.01",
        "--dv",
        "0.001",
        "--format",
        "json",
    ]));
    assert!((v["p_up"].as_f64().unwrap() - 0.75).abs() < 1e-4);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn magnetic_moment_si_numbers() {
    let v = json_stdout(&aps(&["magnetic-moment", "--particle", "electron", "--si"]));
    let w0 = v["omega0"].as_f64().unwrap();
    let bc = v["threshold_field"].as_f64().unwrap();
    assert!((w0 / 0.776e21 - 1.0).abs() < 5e-3, "{w0}");
    assert!((bc / 4.414e9 - 1.0).abs() < 5e-3, "{bc}");
}

#[test]
fn module_errors_name_the_module() {
    let v = json_stderr(&aps(&["stern-gerlach", "--v", "1.5"]));
    assert_eq!(v["kind"], "ModuleError");
    assert_eq!(v["module"], "stern_gerlach");
    assert!(v["message"].as_str().unwrap().contains('v'));

    let v = json_stderr(&aps(&["lorentz", "--velocity", "0.8,0.8,0"]));
    assert_eq!(
        (v["module"].as_str(), v["error"].as_str()),
        (Some("spacetime"), Some("SuperluminalVelocity"))
    );

    let v = json_stderr(&aps(&["fermion-gen", "--modes", "40"]));
    assert_eq!(v["error"], "TooManyModes");
}

#[test]
fn configuration_errors() {
    let v = json_stderr(&aps(&["check-identities", "--format", "csv"]));
    assert_eq!(
        (v["kind"].as_str(), v["parameter"].as_str()),
        (Some("InvalidConfig"), Some("format"))
    );
    let v = json_stderr(&aps(&["magnetic-moment", "--particle", "muon"]));
    assert_eq!(v["parameter"], "particle");
    let v = json_stderr(&aps(&["no-such-scenario"]));
    assert_eq!(v["kind"], "InvalidConfig");
    let out = aps(&["check-identities", "--config", "/nonexistent/aps.ini"]);
    assert_eq!(json_stderr(&out)["kind"], "IOFailure");
    assert_eq!(out.status.code(), Some(4));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn flags_override_config_and_config_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.ini",
        "format = json\n[stern-gerlach]\ntheta = 3.14159265358979 # spin down\n[lorentz]\nmass = oops\n",
    );
    let v = json_stdout(&aps(&["stern-gerlach", "--config", &cfg]));
    assert!(v["p_down"].as_f64().unwrap() > 0.999);
    let v = json_stdout(&aps(&["stern-gerlach", "--config", &cfg, "--theta", "0"]));
    assert!(v["p_up"].as_f64().unwrap() > 0.999);
    // Keys for other scenarios are not parsed.
    let v = json_stdout(&aps(&[
        "check-identities",
        "--config",
        &cfg,
        "--trials",
        "10",
    ]));
    assert_eq!(v["trials"], 10);
    let v = json_stderr(&aps(&["lorentz", "--config", &cfg]));
    assert_eq!(v["parameter"], "lorentz.mass");
}

#[test]
fn constants_come_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "k.ini", "[constants]\nhbar = 2.109143634e-34\n");
    let v = json_stdout(&aps(&["magnetic-moment", "--si", "--config", &cfg]));
    assert!((v["omega0"].as_f64().unwrap() / 3.88172e20 - 1.0).abs() < 1e-4);
    let bad = write(dir.path(), "bad.ini", "[constants]\nc = 0\n");
    let v = json_stderr(&aps(&["magnetic-moment", "--si", "--config", &bad]));
    assert_eq!(v["parameter"], "constants.c");
}
