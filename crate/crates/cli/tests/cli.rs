use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn bimop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn pair_matches_table() {
    let out = bimop(&["pair", "1", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"pi":8}"#);
    let out = bimop(&["unpair", "8"]);
    assert_eq!(json(&out), serde_json::json!({"t": 1, "s": 2}));
}

#[test]
fn params_of_fourteen() {
    let v = json(&bimop(&["params", "--index", "6,8"]));
    assert_eq!(v["degree"], 4);
    assert_eq!(v["remainder"], 4);
    assert_eq!(v["multidegree"], serde_json::json!([0, 4]));
}

#[test]
fn singular_index_exits_two() {
    let cfg = config("prodlag.json");
    let out = bimop(&["normal", "--config", &cfg, "--index", "3,3,3,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"normal":false,"det":"0"}"#
    );
    let out = bimop(&["type2", "--config", &cfg, "--index", "3,3,3,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not normal"));
}

#[test]
fn product_example_in_pretty_mode() {
    let cfg = config("prodlag.json");
    let out = bimop(&["type2", "--config", &cfg, "--index", "1,0,2,1", "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["poly"], "x*y - 16/5*y - 33/10*x + 264/25");
    let out = bimop(&[
        "product",
        "--config",
        &config("product.json"),
        "--n",
        "0,1",
        "--m",
        "1,0",
        "--v",
        "1,0,2,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn recurrence_holds_for_worked_index() {
    let cfg = config("sys.json");
    for axis in ["x", "y"] {
        let out = bimop(&["nnr", "--config", &cfg, "--index", "6,8", "--axis", axis]);
        assert_eq!(out.status.code(), Some(0), "{axis}");
        let v = json(&out);
        assert_eq!(v["holds"], true);
        assert_eq!(v["residual"], "0");
    }
}

#[test]
fn failed_claim_exits_four() {
    let cfg = config("sys.json");
    let out = bimop(&["nnr-q", "--config", &cfg, "--index", "2,2", "--axis", "y"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["low_coefficient"], "0");
}

#[test]
fn validation_errors_exit_three() {
    let cfg = config("sys.json");
    assert_eq!(
        bimop(&["normal", "--config", &cfg, "--index", "1,1,1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bimop(&["normal", "--config", "/nonexistent.json", "--index", "1,1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bimop(&["nnr", "--config", &cfg, "--index", "1,1", "--axis", "x"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bimop(&[
            "nnr",
            "--config",
            &cfg,
            "--index",
            "6,8",
            "--axis",
            "x",
            "--path",
            "0,0;1,0;2,0"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn float_mode_reports_conditioning() {
    let cfg = config("sys.json");
    let v = json(&bimop(&[
        "normal", "--config", &cfg, "--index", "4,4", "--float",
    ]));
    assert_eq!(v["normal"], true);
    assert_eq!(v["verdict"], "normal");
    assert!(v["rcond"].as_f64().unwrap() > 0.0);
}

#[test]
fn check_is_deterministic() {
    let cfg = config("sys.json");
    let a = bimop(&["check", "--config", &cfg, "--max", "4"]);
    let b = bimop(&["check", "--config", &cfg, "--max", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["orthogonality"]["holds"], true);
    assert_eq!(v["biorthogonality"]["holds"], true);
    assert_eq!(v["nnr"]["holds"], true);
    // the unit low coefficient of the Type I recurrence fails at some indices
    assert_eq!(v["nnr_q"]["holds"], false);
    assert_eq!(a.status.code(), Some(4));
}

#[test]
fn factor_ratio() {
    let out = bimop(&[
        "factor",
        "--config",
        &config("product.json"),
        "--v",
        "0,3,1,1",
        "--x-factors",
        "2,1;1,1",
        "--y-factors",
        "0,1;1,1;0,2",
        "--scalars",
        "y2:0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "proportional");
}
