use std::process::{Command, Output};

use conelab::error::{EXIT_CONFIG, EXIT_USAGE};
use conelab::serial;

fn conelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conelab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn point_polynomiality_at_zero_is_minus_z() {
    let o = conelab(&["verify", "--target", "point", "--suites", "polynomiality", "--t", "zero"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS polynomiality"), "{out}");
    assert!(out.contains("image = (-1) z^1 φ_0 Q^() ε^0"), "{out}");
}

#[test]
fn full_p2_run_passes_and_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let o = conelab(&[
            "verify", "--target", "P2", "--D", "2", "--E", "3", "--T", "1", "--seed", "7", "--suites", "all", "--format",
            "json", "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        v["millis"] = 0.into();
        for c in v["checks"].as_array_mut().unwrap() {
            c["millis"] = 0.into();
        }
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
    let r = &reports[0];
    assert_eq!(r["seed"], 7);
    assert_eq!(r["truncation"]["D"], 2);
    assert_eq!(r["checks"].as_array().unwrap().len(), 13);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn narrow_window_is_a_configuration_error() {
    let o = conelab(&["verify", "--target", "P1", "--z-max", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_CONFIG));
    assert!(stderr(&o).contains("z_min <="), "{}", stderr(&o));
}

#[test]
fn usage_errors_have_their_own_code() {
    for args in [
        vec!["verify", "--target", "P7"],
        vec!["verify", "--target", "P1", "--suites", "nonsense"],
        vec!["verify", "--bogus"],
        vec!["correlator", "--target", "P2", "d=1 (2,0)"],
    ] {
        let o = conelab(&args);
        assert_eq!(o.status.code(), Some(EXIT_USAGE), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn correlator_queries() {
    for (target, q, want) in [
        ("P2", "d=1; (2,0) (2,0)", "1"),
        ("point", "d=(); (0,0) (0,0) (0,0)", "1"),
        ("P2", "d=3; (2,0) ×8", "12"),
        ("P1", "d=1; (0,1)", "-2"),
        ("point", "d=(); (1,0) (0,0) (0,0) (0,0) (0,0)", ""),
    ] {
        let o = conelab(&["correlator", "--target", target, q]);
        if want.is_empty() {
            assert!(!o.status.success());
            continue;
        }
        assert!(o.status.success(), "{q}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), want, "{q}");
    }
    let o = conelab(&["correlator", "--target", "P2", "--format", "json", "d=4; (2,0)x11"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"num": "620", "den": "1"}));
}

#[test]
fn unstable_correlator_error_is_reported() {
    let o = conelab(&["correlator", "--target", "P1", "d=0; (0,0)"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("unstable"), "{}", stderr(&o));
}

#[test]
fn series_dumps_round_trip_and_locsum_matches_sl() {
    let common = ["--target", "P1", "--D", "2", "--E", "2", "--T", "1", "--seed", "3"];
    let dump = |which: &str| {
        let mut args = vec!["series", which];
        args.extend(common);
        let o = conelab(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
    };
    let sl = dump("SL");
    let locsum = dump("locsum");
    assert_eq!(sl, locsum);
    let cone = dump("cone");
    let parsed = serial::parse(&cone).unwrap();
    assert!(!parsed.is_zero());
    assert_eq!(serial::dump(&parsed), cone);

    let mut args = vec!["series", "tangent", "--alpha", "1", "--k", "1"];
    args.extend(common);
    assert!(conelab(&args).status.success());
}

#[test]
fn point_sl_at_zero_is_a_single_record() {
    let o = conelab(&["series", "SL", "--target", "point", "--t", "zero"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        doc["terms"],
        serde_json::json!([{"z_exp": 1, "basis": 0, "novikov": [], "eps": 0, "num": "-1", "den": "1"}])
    );
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "target = \"P1\"\nD = 2\nE = 2\nT = 1\nseed = 4\nsuites = [\"inverse\", \"localisation\"]\nformat = \"json\"\n")
        .unwrap();
    let o = conelab(&["verify", "--config", path.to_str().unwrap(), "--seed", "9"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["target"], "P1");
    let suites: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["inverse", "inverse", "localisation", "localisation"]);
}

#[test]
fn explicit_t_with_negative_rationals() {
    let o = conelab(&["verify", "--target", "P1", "--D", "1", "--E", "2", "--t", "-1/2,3,0,2/7", "--suites", "polynomiality"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("t=explicit"));
}

#[test]
fn splittings_dump_lists_every_case() {
    let o = conelab(&["splittings", "--target", "P1", "--D", "1", "--E", "1", "--t", "zero"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let kinds: std::collections::BTreeSet<&str> = v.as_array().unwrap().iter().map(|r| r["kind"].as_str().unwrap()).collect();
    for k in ["generic", "case1", "case2", "case3", "case4", "case5"] {
        assert!(kinds.contains(k), "{k} missing from {kinds:?}");
    }
}
