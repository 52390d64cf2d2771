use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str], cfg: Option<&Path>, out: &Path) -> i32 {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qwalk"));
    if let Some(c) = cfg {
        cmd.arg("--config").arg(c);
    }
    cmd.arg("--out").arg(out).args(args);
    let o = cmd.output().expect("binary runs");
    o.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn phase_diagram_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = config("default.toml");
    assert_eq!(run(&["phase-diagram"], Some(&cfg), a.path()), 0);
    assert_eq!(run(&["--threads", "1", "phase-diagram"], Some(&cfg), b.path()), 0);
    let x = std::fs::read(a.path().join("phase_diagram.csv")).unwrap();
    let y = std::fs::read(b.path().join("phase_diagram.csv")).unwrap();
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta1,theta2,gap_at_plus,gap_at_minus,winding,si_right,agree,status"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        // angles carry 17 significant digits
        assert_eq!(f[0].split('e').next().unwrap().trim_start_matches('-').len(), 18);
        match f[7] {
            "ok" => assert_eq!(f[6], "true"),
            "gap_closed" => assert_eq!(f[6], "NA"),
            other => panic!("status {other}"),
        }
    }
}

#[test]
fn config_errors_exit_with_two() {
    let out = tempfile::tempdir().unwrap();
    assert_eq!(run(&["phase-diagram"], Some(&config("bad_grid.toml")), out.path()), 2);
    assert_eq!(run(&["verify"], Some(&config("missing.toml")), out.path()), 2);
    let bad = out.path().join("unknown.toml");
    std::fs::write(&bad, "[model]\nkind = \"split_step\"\nflavour = 1\n").unwrap();
    assert_eq!(run(&["verify"], Some(&bad), out.path()), 2);
    assert_eq!(run(&["no-such-command"], None, out.path()), 2);
}

#[test]
fn undersized_window_fails_verification() {
    let out = tempfile::tempdir().unwrap();
    assert_eq!(run(&["verify"], Some(&config("window6.toml")), out.path()), 1);
    let v = read_json(&out.path().join("verify.json"));
    assert_eq!(v["all_pass"], false);
}

#[test]
fn gap_closed_points_are_skipped() {
    let out = tempfile::tempdir().unwrap();
    let cfg = config("gap_closed.toml");
    assert_eq!(run(&["verify"], Some(&cfg), out.path()), 0);
    let v = read_json(&out.path().join("verify.json"));
    let checks = v["points"][0]["checks"].as_array().unwrap();
    assert!(checks[1..].iter().all(|c| c["status"] == "skipped"));
    assert_eq!(run(&["edge-states"], Some(&cfg), out.path()), 3);
}

#[test]
fn trivial_point_verifies() {
    let out = tempfile::tempdir().unwrap();
    assert_eq!(run(&["--seed", "7", "verify"], Some(&config("trivial_point.toml")), out.path()), 0);
    let v = read_json(&out.path().join("verify.json"));
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["seed"], 7);
}

#[test]
fn four_step_tables() {
    let out = tempfile::tempdir().unwrap();
    let entries = |v: &Value| -> Vec<i64> {
        ["si_plus_left", "si_plus_right", "si_minus_left", "si_minus_right"]
            .iter()
            .map(|k| v["table"][k]["value"].as_i64().unwrap())
            .collect()
    };
    assert_eq!(run(&["edge-states"], Some(&config("four_step_gentle.toml")), out.path()), 0);
    let g = read_json(&out.path().join("four_step_gentle.json"));
    assert_eq!(entries(&g), [-1, 1, 0, 0]);
    assert_eq!(run(&["edge-states"], Some(&config("four_step_reflection.toml")), out.path()), 0);
    let r = read_json(&out.path().join("four_step_reflection.json"));
    assert_eq!(entries(&r), [-1, 2, 0, -1]);
    assert_eq!(g["table"]["si_total"], r["table"]["si_total"]);
    let csv = std::fs::read_to_string(out.path().join("four_step_gentle_eigenfunctions.csv")).unwrap();
    assert!(csv.starts_with("state,x,component,re,im,chirality,eigenvalue_target\n"));
}

#[test]
fn schur_probe_matches_dense_counts() {
    let out = tempfile::tempdir().unwrap();
    assert_eq!(run(&["schur-probe"], Some(&config("schur.toml")), out.path()), 0);
    let v = read_json(&out.path().join("schur_probe.json"));
    for d in v["eigendetect"].as_array().unwrap() {
        assert_eq!(d["dimension"], d["dense_count"]);
    }
    assert_eq!(v["renewal_matching"]["formula"], "v_f");
}
