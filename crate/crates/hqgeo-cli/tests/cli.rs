//! Contract tests for the binary: exit codes, output schemas, and the
//! output-directory override.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hqgeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn dist_example_prints_both_distances_and_ratio() {
    let out = run(&[
        "dist",
        "--from",
        "0,0,0,0,0,0,0",
        "--to",
        "1,0,0,0,0,0,0",
        "--metric",
        "both",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "d_cc = 1\nd_koranyi = 1\nratio = 1\n");
}

#[test]
fn hmc_example_prints_the_gauge_sphere_value() {
    let out = run(&[
        "hmc",
        "--surface",
        "koranyi-sphere",
        "--params",
        "R=1",
        "--grid",
        "r=0.5",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "4.5");
}

#[test]
fn flag_errors_exit_two() {
    let bad_point = run(&["dist", "--from", "1,2", "--to", "0,0,0,0,0,0,0"]);
    assert_eq!(bad_point.status.code(), Some(2));

    let unknown_surface = run(&[
        "hmc",
        "--surface",
        "moebius",
        "--params",
        "R=1",
        "--grid",
        "r=0.5",
    ]);
    assert_eq!(unknown_surface.status.code(), Some(2));
    assert!(!unknown_surface.stderr.is_empty(), "diagnostic goes to stderr");
    assert!(unknown_surface.stdout.is_empty(), "stdout stays clean");

    let unknown_suite = run(&["verify", "--suite", "spectral"]);
    assert_eq!(unknown_suite.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    // The gauge-sphere pole is characteristic; curvature refuses it.
    let out = run(&[
        "hmc",
        "--surface",
        "koranyi-sphere",
        "--params",
        "R=1",
        "--grid",
        "r=0:1:3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn curve_artifacts_use_the_shared_csv_schema() {
    for args in [
        vec![
            "geodesic",
            "--target",
            "0.3,0.1,-0.2,0.4,0.02,0.01,-0.03",
        ],
        vec![
            "geodesic",
            "--target",
            "0.3,0.1,-0.2,0.4,0.02,0.01,-0.03",
            "--L",
            "1.5",
        ],
        vec!["path", "--from", "0,0,0,0,0,0,0", "--to", "1,1,0,0,0.3,0,0"],
    ] {
        let out = run(&args);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "lambda,x1,x2,x3,x4,t1,t2,t3,theta1,theta2,theta3,res_horizontality"
        );
        assert_eq!(text.lines().count(), text.lines().filter(|l| !l.is_empty()).count());
    }
}

#[test]
fn horizontal_geodesic_rows_have_negligible_residual_and_gl_rows_do_not() {
    let cc = run(&["geodesic", "--target", "0,0,0,0,0.5,0,0"]);
    let text = String::from_utf8(cc.stdout).unwrap();
    for line in text.lines().skip(1) {
        let res: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(res.abs() < 1e-9, "horizontal geodesic residual {res}");
    }

    let gl = run(&["geodesic", "--target", "0,0,0,0,0.5,0,0", "--L", "1"]);
    let text = String::from_utf8(gl.stdout).unwrap();
    let last_res: f64 = text
        .lines()
        .last()
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(
        last_res.abs() > 1e-3,
        "extension-metric geodesics are not horizontal, residual was {last_res}"
    );
}

#[test]
fn relative_out_paths_resolve_against_the_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hqgeo"))
        .args(["curvature", "--L", "1,1,1", "--out", "report.json"])
        .env("HQGEO_OUT_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let written = dir.path().join("report.json");
    let content = std::fs::read_to_string(written).unwrap();
    let value: serde_json::Value = serde_json::from_str(&content).unwrap();
    assert_eq!(value["schema"], "hqgeo/1");
    assert_eq!(value["paper_match_flags"]["ricci_vertical"], false);
}

#[test]
fn sphere_emits_the_requested_number_of_on_sphere_samples() {
    let out = run(&[
        "sphere",
        "--radius",
        "2",
        "--samples",
        "25",
        "--metric",
        "koranyi",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let samples = value["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 25);
    for s in samples {
        let d = s["distance"].as_f64().unwrap();
        assert!((d - 2.0).abs() < 1e-10, "gauge distance {d}");
    }
}
