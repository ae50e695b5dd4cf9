//! The `kbg` binary: exit statuses, diagnostics and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn kbg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kbg")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn compute_is_deterministic() {
    for f in [
        "s3.json",
        "sl3z.json",
        "zeta3_crystallographic.json",
        "fuchsian_2_3_4.json",
    ] {
        let a = kbg(&["compute", &fixture(f)]);
        let b = kbg(&["compute", &fixture(f)]);
        assert_eq!(a.status.code(), Some(0), "{f}");
        assert_eq!(a.stdout, b.stdout, "{f}");
    }
}

#[test]
fn invalid_input_exits_with_error() {
    let dir = std::env::temp_dir().join(format!("kbg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("direct.json");
    std::fs::write(&path, r#"{"version":1,"spec":{"type":"direct","betti":[1]}}"#).unwrap();
    let out = kbg(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["path"], "/spec/notes");
    let missing = kbg(&["compute", dir.join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumeration_cap_is_enforced() {
    let out = Command::new(env!("CARGO_BIN_EXE_kbg"))
        .args(["compute", &fixture("s3.json")])
        .env("KBG_MAX_ENUM", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "compute");
}

#[test]
fn chartab_prints_the_table() {
    let out = kbg(&["chartab", &fixture("s3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("χ2: 2, 0, -1"), "{text}");
    assert_eq!(
        kbg(&["chartab", &fixture("fuchsian_2_3_4.json")]).status.code(),
        Some(1)
    );
}

#[test]
fn selfcheck_exit_statuses() {
    let pass = kbg(&["selfcheck", "--max-order", "6", "--depth", "3"]);
    assert_eq!(pass.status.code(), Some(0));
    let fail = kbg(&["selfcheck", "--max-order", "6", "--depth", "3", "--inject-fault"]);
    assert_eq!(fail.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&fail.stdout).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["rep_ring/S3"]);
    // C16 needs b = 16, beyond the chain's exponent bound of 12
    let open = kbg(&["selfcheck", "--max-order", "16", "--depth", "2"]);
    assert_eq!(open.status.code(), Some(3));
}
