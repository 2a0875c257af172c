use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hilres(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hilres"));
    cmd.args(args).env_remove("HILRES_MAX_DEGREE").stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    let mut child = cmd.spawn().unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const KOSZUL2: &str = r#"{"d":2,"gen_degrees":[0],"relations":[["z1"],["z2"]]}"#;

#[test]
fn resolve_from_stdin() {
    let o = hilres(&["resolve", "-", "--max-degree", "5"], Some(KOSZUL2));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("betti=(1,2,1) euler=0 length=3\n"), "{text}");
    assert!(text.contains("modes: analytic and algebraic agree"));
}

#[test]
fn betti_from_file_in_json() {
    let path = std::env::temp_dir().join(format!("hilres-cli-{}.json", std::process::id()));
    std::fs::write(&path, KOSZUL2).unwrap();
    let o = hilres(&["betti", path.to_str().unwrap(), "--mode", "algebraic", "--format", "json"], None);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["euler"], 0);
    assert!(v["cross_check"]["agree"].is_null());
}

#[test]
fn golden_example_summary() {
    let o = hilres(&["example", "zeros", "--d", "1", "--r", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("betti=(1,3,3,1) euler=0 length=4"));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["example", "powers", "--N", "2,3", "--format", "json"][..],
        &["resolve", "-", "--max-degree", "4", "--format", "json"][..],
        &["nc-demo", "--d", "2", "--start", "2", "--steps", "3"][..],
    ] {
        let input = (args[0] == "resolve").then_some(KOSZUL2);
        let a = hilres(args, input);
        let b = hilres(args, input);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn powers_and_defect_verbs() {
    let o = hilres(&["example", "powers", "--N", "3,1,2"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("defect=6 degrees=(0,1,1,2,2,3)"), "{text}");
    assert!(text.contains("z1^2*z3"));
    let o = hilres(&["defect", "-"], Some(KOSZUL2));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("defect=1 degrees=(0)\n"));
    let o = hilres(&["cover", "-", "--format", "json"], Some(KOSZUL2));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["certificates"]["isometry_on_defect"], true);
}

#[test]
fn rationals_print_as_fractions() {
    let o = hilres(&["nc-demo", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["vectors"].as_array().unwrap().iter().all(|x| x["norm_sq"].is_string()));
}

#[test]
fn errors_exit_with_two() {
    let o = hilres(&["resolve", "-"], Some(r#"{"d":2,"gen_degrees":[0],"relations":[["z1 + z1^2"]]}"#));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("entry (0, 0)") && err.contains("inhomogeneous"), "{err}");
    let o = hilres(&["resolve", "-"], Some(r#"{"schema_version":9,"d":1,"gen_degrees":[0],"relations":[]}"#));
    assert_eq!(o.status.code(), Some(2));
    let o = hilres(&["resolve", "/nonexistent/input.json"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = hilres(&["nc-demo", "--d", "1"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = hilres(&["example", "zeros", "--d", "1", "--r", "1", "--max-degree", "0"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn max_degree_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hilres"))
        .args(["example", "powers", "--N", "2,2", "--format", "json"])
        .env("HILRES_MAX_DEGREE", "5")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(v["defect"]["top"], 5);
}

#[test]
fn truncation_too_low_fails_analytic_mode() {
    // the syzygy of (z1, z2) sits in degree 2
    let o = hilres(&["resolve", "-", "--max-degree", "2", "--mode", "analytic"], Some(KOSZUL2));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("raise"));
}
