use std::io::Write;
use std::process::{Command, Output, Stdio};

fn trefl(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trefl"))
        .args(args)
        .env_remove("TREFL_FIELD")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fixture_pipes_into_certify() {
    for case in ["a", "c", "g"] {
        let fx = trefl(&["fixture", case, "--seed", "2"], None);
        assert!(fx.status.success());
        let out = trefl(&["certify", "-", "--samples", "4"], Some(&stdout(&fx)));
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).starts_with("G-REGULAR"));
    }
}

#[test]
fn json_reports_are_versioned_and_stable() {
    let fx = stdout(&trefl(&["fixture", "e", "--json"], None));
    let a = trefl(&["--json", "analyze", "-"], Some(&fx));
    let b = trefl(&["--json", "analyze", "-"], Some(&fx));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["result"]["case"], "e");
}

#[test]
fn exit_codes_follow_error_classes() {
    let gor = "field p:101\nvars x y\nA\nx^3\ny^3\nend\nJ\n0\nend\n";
    assert_eq!(trefl(&["analyze", "-"], Some(gor)).status.code(), Some(1));
    assert_eq!(trefl(&["analyze", "-"], Some("field p:101\nvars x\nnonsense\n")).status.code(), Some(2));
    assert_eq!(trefl(&["--field", "p:4", "fixture", "a"], None).status.code(), Some(2));
    assert_eq!(trefl(&["analyze", "/nonexistent/problem.txt"], None).status.code(), Some(2));
}

#[test]
fn field_flag_and_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_trefl")).args(["fixture", "a"]).env("TREFL_FIELD", "p:7").output().unwrap();
    assert!(stdout(&out).starts_with("field p:7"));
    let out = trefl(&["--field", "q", "fixture", "a"], None);
    assert!(stdout(&out).starts_with("field q"));
}

#[test]
fn quadrics_verify_reports_reference_value() {
    let out = trefl(&["--json", "--field", "p:101", "quadrics-verify", "--units", "2,3,5"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["alpha_reference_kernel_dim"], 86);
    assert_eq!(v["result"]["alpha"]["table_solves"], true);
}

#[test]
fn resolve_and_duality_selftest() {
    let fx = stdout(&trefl(&["fixture", "b"], None));
    let out = trefl(&["resolve", "-", "--steps", "2"], Some(&fx));
    assert!(out.status.success());
    assert!(stdout(&out).contains("total:"));
    let out = trefl(&["duality-selftest", "--samples", "5", "--max-socle", "5"], None);
    assert!(stdout(&out).starts_with("5/5"));
}
