//! The `gauging` binary end to end: exit codes, error JSON and artifacts.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gauging(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauging"))
        .args(args)
        .env("GAUGING_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).expect("stderr is JSON")
}

#[test]
fn unknown_and_missing_subcommands_are_usage_errors() {
    assert_eq!(gauging(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(gauging(&[]).status.code(), Some(64));
    assert_eq!(gauging(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_plan_file_is_a_validation_error() {
    let out = gauging(&[
        "gauge",
        "run",
        "--code",
        "toy-zz",
        "--plan",
        "/nonexistent/plan.json",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let e = error_json(&out);
    assert_eq!(e["error"], "file");
    assert!(e["message"].as_str().unwrap().contains("plan.json"));
}

#[test]
fn bad_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"code": "surface-3", "colour": "blue"}"#).unwrap();
    let out = gauging(&["gauge", "deform", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_json(&out)["error"], "json");
}

#[test]
fn exhausted_budgets_exit_three() {
    let out = gauging(&[
        "spacetime",
        "search",
        "--code",
        "four-two-two",
        "--logical",
        "XXII",
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_json(&out)["error"], "budget");
}

#[test]
fn config_file_drives_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("project.json");
    std::fs::write(
        &cfg,
        r#"{"code": "four-two-two", "logical": "XXII", "schedule": {"pre": 2, "rounds": 3, "post": 2, "cadence": "EndpointsOnly"}}"#,
    )
    .unwrap();
    let out = gauging(&["spacetime", "verify", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["time_logical"]["weight"], 3);
    assert_eq!(v["time_logical"]["silent"], true);
}

#[test]
fn plan_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    let p = plan.to_str().unwrap();
    assert!(gauging(&[
        "gauge",
        "plan",
        "--code",
        "surface-3",
        "--logical",
        "Z",
        "--out",
        p
    ])
    .status
    .success());
    let from_file = gauging(&["gauge", "deform", "--code", "surface-3", "--plan", p]);
    let direct = gauging(&["gauge", "deform", "--code", "surface-3", "--logical", "Z"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, direct.stdout);
    assert_eq!(json(&direct)["counting_identity"][0], -1);
}

#[test]
fn gross_exports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(gauging(&[
        "gauge",
        "deform",
        "--preset",
        "gross",
        "--format",
        "text-matrix",
        "--out",
        d
    ])
    .status
    .success());
    let shape = |name: &str| {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let mut lines = text.lines();
        let header = lines.next().unwrap().to_string();
        let rows: Vec<&str> = lines.collect();
        assert_eq!(header, format!("{} {}", rows.len(), rows[0].len()));
        (rows.len(), rows[0].len())
    };
    assert_eq!(shape("hx.txt"), (84, 166));
    assert_eq!(shape("hz.txt"), (79, 166));

    let dot = gauging(&["gauge", "deform", "--preset", "gross", "--format", "dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert_eq!(text.matches(" -- ").count(), 22);
    let vertices = text
        .lines()
        .filter(|l| l.trim_start().starts_with('v') && !l.contains("--"))
        .count();
    assert_eq!(vertices, 12);
}

#[test]
fn repro_matches_goldens() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for preset in ["gross", "double-gross"] {
        let out = gauging(&["repro", preset, "--check", golden.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = json(&out);
        let total = if preset == "gross" { 41 } else { 65 };
        assert_eq!(v["total_additions"], total);
    }
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("gross.summary.json"), "{}\n").unwrap();
    let out = gauging(&["repro", "gross", "--check", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn codes_subcommands() {
    let list = json(&gauging(&["codes", "list"]));
    assert!(list["codes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c == "gross"));
    let built = json(&gauging(&["codes", "build", "surface-3"]));
    assert_eq!(
        (built["n"].as_u64(), built["k"].as_u64()),
        (Some(9), Some(1))
    );
    let report = json(&gauging(&["codes", "report", "gross"]));
    assert_eq!(report["max_weight"], 6);
    let exact = json(&gauging(&["codes", "distance", "surface-3", "--exact"]));
    assert_eq!(exact["distance"], 3);
    let upper = json(&gauging(&[
        "codes",
        "distance",
        "surface-3",
        "--upper",
        "--trials",
        "20",
        "--seed",
        "2",
    ]));
    assert_eq!(upper["distance_upper"], 3);
    assert_eq!(
        gauging(&["codes", "distance", "surface-3", "--exact", "--upper"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn recipes_and_cheeger() {
    let ladder = json(&gauging(&[
        "gauge",
        "recipe",
        "ladder",
        "--code",
        "surface-3",
    ]));
    assert_eq!(ladder["summary"]["k"], 1);
    assert_eq!(ladder["summary"]["k_base"], 2);
    let init = json(&gauging(&[
        "gauge",
        "recipe",
        "css-init",
        "--code",
        "surface-3",
        "--seed",
        "4",
    ]));
    assert_eq!(init["prepared"], true);
    let shor = json(&gauging(&[
        "gauge",
        "recipe",
        "shor",
        "--code",
        "four-two-two",
        "--logical",
        "XXII",
    ]));
    assert_eq!(shor["summary"]["k"], 1);
    let exact = json(&gauging(&[
        "sparsify", "cheeger", "--preset", "gross", "--exact",
    ]));
    let spectral = json(&gauging(&[
        "sparsify",
        "cheeger",
        "--preset",
        "gross",
        "--spectral",
    ]));
    assert!(spectral["value"].as_f64().unwrap() <= exact["value"].as_f64().unwrap());
}

#[test]
fn spacetime_detectors_export() {
    let v = json(&gauging(&[
        "spacetime",
        "detectors",
        "--code",
        "toy-zz",
        "--logical",
        "XX",
    ]));
    let ds = v.as_array().unwrap();
    assert!(!ds.is_empty());
    for d in ds {
        assert!(d["id"].is_u64() && d["phase"].is_string());
        for m in d["members"].as_array().unwrap() {
            assert!(m["label"].is_string());
            assert_eq!(m["t"].as_f64().unwrap().fract(), 0.5);
        }
    }
}
