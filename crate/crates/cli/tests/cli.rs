use std::path::Path;
use std::process::{Command, Output};

fn mwbch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwbch"))
        .args(args)
        .env_remove("MWBCH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn generate_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (args, name) in [
        (vec!["--m", "8", "--i", "3", "--s", "2"], "a.json"),
        (
            vec!["--m", "9", "--i", "2", "--s", "1", "--format", "logsupport"],
            "b.txt",
        ),
        (
            vec![
                "--m",
                "10",
                "--i",
                "3",
                "--s",
                "4",
                "--puncture",
                "--format",
                "bits",
            ],
            "c.txt",
        ),
        (vec!["--m", "12", "--i", "4", "--s", "0"], "d.json"),
    ] {
        let path = dir.path().join(name);
        let mut full = vec!["generate"];
        full.extend(args.iter().copied());
        full.extend(["-o", path.to_str().unwrap()]);
        let out = mwbch(&full);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let check = mwbch(&["verify", path.to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0), "{args:?}: {}", stdout(&check));
        assert!(stdout(&check).contains("PASS"));
    }
}

#[test]
fn json_output_fields() {
    let out = mwbch(&["generate", "--m", "8", "--i", "3", "--s", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spec_version"], "1.0");
    assert_eq!(v["d"], 28);
    assert_eq!(v["method"], "i3-even");
    assert_eq!(v["verified"], true);
    assert_eq!(v["support"].as_array().unwrap().len(), 28);
    assert_eq!(v["X"].as_array().unwrap().len(), 28);
    assert_eq!(v["B"].as_array().unwrap().len(), 0);
    let big = mwbch(&["generate", "--m", "12", "--i", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&big.stdout).unwrap();
    assert_eq!(v["support"].as_array().unwrap().len(), 1920);
}

#[test]
fn seed_from_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_mwbch"))
            .args(["generate", "--m", "9", "--i", "3", "--format", "bits"])
            .env("MWBCH_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(run("4").stdout, run("4").stdout);
    assert_ne!(run("4").stdout, run("5").stdout);
}

#[test]
fn builtin_tables_pass() {
    for t in ["t27", "t23"] {
        let out = mwbch(&["verify", "--builtin", t]);
        assert_eq!(out.status.code(), Some(0));
        let table = mwbch(&["table", t]);
        assert_eq!(table.status.code(), Some(0));
        let text = stdout(&table);
        assert!(!text.contains("FAIL"));
        let n = if t == "t27" { 18 } else { 2 };
        assert_eq!(text.lines().count(), n);
    }
    let out = mwbch(&["verify", &fixture("t27.txt")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn mutated_fixture_fails_with_syndrome() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mutated.txt");
    let text = std::fs::read_to_string(fixture("t23.txt"))
        .unwrap()
        .replace("613,", "614,");
    std::fs::write(&path, text).unwrap();
    let out = mwbch(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout(&out);
    assert!(
        report.contains("FAIL") && report.contains("failing_syndrome=p_"),
        "{report}"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        mwbch(&["generate", "--m", "9", "--i", "4"]).status.code(),
        Some(3)
    );
    assert_eq!(
        mwbch(&["generate", "--m", "8", "--i", "3", "--s", "3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        mwbch(&["generate", "--m", "9", "--i", "3", "--retries", "0"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(mwbch(&["generate", "--m", "8"]).status.code(), Some(5));
    assert_eq!(
        mwbch(&["generate", "--m", "8", "--i", "2", "--poly", "0x11b"])
            .status
            .code(),
        Some(5)
    );
    assert_eq!(mwbch(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "m=8 poly=0x11d d=27\n1,2,3\n").unwrap();
    assert_eq!(
        mwbch(&["verify", junk.to_str().unwrap()]).status.code(),
        Some(5)
    );
}

#[test]
fn gold_and_gk_methods() {
    let gold = mwbch(&[
        "generate", "--m", "8", "--i", "2", "--s", "2", "--method", "gold",
    ]);
    assert!(gold.status.success());
    let v: serde_json::Value = serde_json::from_slice(&gold.stdout).unwrap();
    assert_eq!(v["support"].as_array().unwrap().len(), 24);
    assert!(v["X"].is_null());
    let gk = mwbch(&[
        "generate", "--m", "8", "--i", "2", "--s", "4", "--method", "gk", "--y", "0x2",
    ]);
    assert!(gk.status.success());
    let degenerate = mwbch(&[
        "generate", "--m", "8", "--i", "2", "--method", "gk", "--y", "0x1",
    ]);
    assert_eq!(degenerate.status.code(), Some(3));
}
