//! Process-level CLI contract: subcommands, exit codes, and byte-identical
//! reports modulo the wall-time field.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rpq-virasoro"))
}

#[test]
fn list_presets_shows_all_five() {
    let out = bin().arg("list-presets").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains("jagannathan-srinivasa"));
    assert!(text.contains("biedenharn-macfarlane"));
}

#[test]
fn eval_renders_action_tables() {
    let out = bin()
        .args(["eval", "--preset", "jagannathan-srinivasa", "--expr", "[l 1, l 0]"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("chi weights"));
    assert!(text.contains("t^0 -> 0"));
    // the fermionic pair renders the zero operator
    let out = bin()
        .args(["eval", "--expr", "[G 1, G 2]", "--window", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().filter(|l| l.contains("->")) {
        assert!(line.ends_with("-> 0"), "{line}");
    }
}

#[test]
fn eval_rejects_malformed_input() {
    let out = bin().args(["eval", "--expr", "l 1, l 0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error"));
    let out = bin()
        .args(["eval", "--preset", "unknown-name", "--expr", "[l 1, l 0]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn write_config(dir: &std::path::Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn normalized_report(path: &std::path::Path) -> String {
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["wall_time_ms"] = serde_json::Value::from(0u64);
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn verify_is_deterministic_and_honors_exit_codes() {
    let dir = std::env::temp_dir().join(format!("rpqvir-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // passing configuration: exit 0 and byte-identical reports
    let ok_cfg = write_config(
        &dir,
        "ok.json",
        r#"{ "deformation": { "preset": "arik-coon" },
             "suites": ["tau-identities", "crochet1", "crochet3", "witt3", "bell"] }"#,
    );
    let out1 = dir.join("report1.json");
    let out2 = dir.join("report2.json");
    for out in [&out1, &out2] {
        let st = bin()
            .args(["verify", "--config"])
            .arg(&ok_cfg)
            .arg("--out")
            .arg(out)
            .output()
            .unwrap();
        assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    }
    assert_eq!(normalized_report(&out1), normalized_report(&out2));

    // must-pass failure: the JS binary bracket suite is a release blocker
    let fail_cfg = write_config(
        &dir,
        "fail.json",
        r#"{ "deformation": { "preset": "jagannathan-srinivasa" },
             "suites": ["crochet1"] }"#,
    );
    let st = bin()
        .args(["verify", "--config"])
        .arg(&fail_cfg)
        .arg("--out")
        .arg(dir.join("report3.json"))
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
    // the report still carries the counterexamples
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report3.json")).unwrap()).unwrap();
    let has_witness = report["reports"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r.get("counterexample").is_some());
    assert!(has_witness);

    // configuration errors: exit 2
    let bad_cfg = write_config(&dir, "bad.json", r#"{ "suites": ["no-such-suite"] }"#);
    let st = bin()
        .args(["verify", "--config"])
        .arg(&bad_cfg)
        .arg("--out")
        .arg(dir.join("unused.json"))
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));

    // unwritable output path: nonzero exit
    let st = bin()
        .args(["verify", "--config"])
        .arg(&ok_cfg)
        .arg("--out")
        .arg(dir.join("no/such/dir/report.json"))
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));

    // missing flags are a usage error: exit 2 (clap)
    let st = bin().arg("verify").output().unwrap();
    assert_eq!(st.status.code(), Some(2));

    std::fs::remove_dir_all(&dir).ok();
}
