//! End-to-end runs of the `tnnatlas` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn tnnatlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tnnatlas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let o = tnnatlas(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn necklace_text_output() {
    let o = tnnatlas(&["necklace", "[2,4,5,7]", "--n", "4", "--ascii"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("{1,3},{2,3},{3,4},{4,5}"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn reports_embed_command_and_seed() {
    let r = json(&["--seed", "17", "necklace", "[2,4,5,7]"]);
    assert_eq!(r["command"], "necklace");
    assert_eq!(r["seed"], 17);
    assert_eq!(r["ok"], true);
    assert!(r.get("wall_ms").is_none());
}

#[test]
fn cells_of_gr24() {
    let o = tnnatlas(&["cells", "2", "4", "--ascii"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 33);
}

#[test]
fn fomin_shapiro_coordinate() {
    let o = tnnatlas(&["fs", "[1,4,2,3]", "[2,4,5,7]", "--k", "2", "--ascii"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("coordinates: x2/x4"), "{}", stdout(&o));
}

#[test]
fn malformed_input_is_a_usage_error() {
    for args in [
        &["necklace", "[2,4,oops]"][..],
        &["necklace", "[2,2,5,7]"],
        &["cells", "5", "4"],
        &["snider", "[1,3,4,2]", "--k", "2"],
        &["verify", "iso", "--nmax", "1"],
        &["verify", "nonsense"],
    ] {
        let o = tnnatlas(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_iso_passes() {
    let o = tnnatlas(&["verify", "iso", "--nmax", "4", "--ascii"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn seeded_json_is_byte_identical() {
    let args = [
        "--seed",
        "3",
        "verify",
        "cg",
        "--nmax",
        "3",
        "--instances",
        "20",
    ];
    let (a, b) = (tnnatlas(&args), tnnatlas(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let jobs = tnnatlas(&[
        "--jobs",
        "1",
        "--seed",
        "3",
        "verify",
        "cg",
        "--nmax",
        "3",
        "--instances",
        "20",
    ]);
    assert_eq!(a.stdout, jobs.stdout);
}

#[test]
fn out_file_replaces_stdout() {
    let dir = std::env::temp_dir().join(format!("tnnatlas-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = tnnatlas(&[
        "--out",
        path.to_str().unwrap(),
        "verify",
        "conjecture",
        "--nmax",
        "3",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cases = r["result"]["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    for key in ["n", "k", "u", "v", "w", "status"] {
        assert!(cases[0].get(key).is_some(), "case field {key}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timings_are_opt_in() {
    let r = json(&["--timings", "verify", "conjecture", "--nmax", "2"]);
    assert!(r["wall_ms"].is_u64());
    assert!(r["result"]["cases"][0]["millis"].is_u64());
}
