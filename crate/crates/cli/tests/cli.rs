use std::process::{Command, Output};

fn sdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdr")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn pascal_passes_order_five() {
    let out = sdr(&["check", "--tri", "builtin:pascal", "--order", "5", "--rows", "12"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("verdict pass"));
}

#[test]
fn window_too_small_is_usage_error() {
    let out = sdr(&["check", "--tri", "product:a=ones,b=ones,c=ones", "--order", "3", "--rows", "2"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("--order"), "{err}");
}

#[test]
fn bad_spec_names_flag() {
    let out = sdr(&["print", "--tri", "builtin:nope", "--rows", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--tri"));
}

#[test]
fn minor_of_aerated_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.to_str().unwrap();
    let out = sdr(&["minor", "--tri", "builtin:aerated", "--j", "2", "--rows", "7", "--json", p]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["rows"].as_array().unwrap().len(), 6);

    let out = sdr(&["check", "--tri", &format!("file:{p}"), "--order", "3", "--rows", "6"]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict fail"));
}

#[test]
fn check_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = sdr(&[
        "check", "--tri", "builtin:aerated", "--order", "4", "--rows", "10", "--json", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["violations_total"], 18);
}

#[test]
fn max_order_of_aerated_is_three() {
    let out = sdr(&["max-order", "--tri", "builtin:aerated", "--rows", "10", "--cap", "6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("max order: 3"));
}

#[test]
fn invert_and_negative_power_agree() {
    let inv = sdr(&["invert", "--tri", "builtin:pascal", "--rows", "5"]);
    let pow = sdr(&["power", "--tri", "builtin:pascal", "--exp", "-1", "--rows", "5"]);
    assert_eq!(code(&inv), 0);
    assert_eq!(code(&pow), 0, "{}", stderr(&pow));
    assert_eq!(stdout(&inv), stdout(&pow));
    assert!(stdout(&inv).lines().last().unwrap().split_whitespace().eq(["1", "-4", "6", "-4", "1"]));
}

#[test]
fn hadamard_modes() {
    let out = sdr(&["hadamard", "--a", "builtin:pascal", "--b", "builtin:pascal", "--rows", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().last().unwrap().split_whitespace().eq(["1", "9", "9", "1"]));

    let out = sdr(&["hadamard", "--inv", "builtin:pascal", "--rows", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1/3"));

    let out = sdr(&["hadamard", "--inv", "builtin:aerated", "--rows", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn riordan_pascal_and_inverse() {
    let out = sdr(&["riordan", "window", "--d", "geomrec:1", "--h", "tgeomrec:1", "--rows", "4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).lines().last().unwrap().split_whitespace().eq(["1", "3", "3", "1"]));

    let out = sdr(&["riordan", "inverse", "--d", "geomrec:1", "--h", "tgeomrec:1", "--rows", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().last().unwrap().split_whitespace().eq(["-1", "3", "-3", "1"]));

    let out = sdr(&["riordan", "mul", "--d", "1", "--h", "0,1", "--rows", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--d2"));
}

#[test]
fn conjecture_runs_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let out = sdr(&[
        "conjecture", "minor", "--family", "all", "--trials", "2", "--rows", "8", "--seed", "7", "--j", "3", "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}{}", stdout(&out), stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!v.as_array().unwrap().is_empty());

    let out = sdr(&["conjecture", "minor", "--family", "all", "--trials", "1", "--rows", "8"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn cell_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sdr"))
        .args(["check", "--tri", "builtin:pascal", "--order", "5", "--rows", "30"])
        .env("SDR_MAX_CELLS", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
