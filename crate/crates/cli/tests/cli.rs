use std::io::Write;
use std::process::{Command, Output};

const S0: &str = "(a.b b.b g.b d.b a.e b.e g.e d.e)";

fn ire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ire"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn example_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&ire(&["example"]).stdout).unwrap();
    f
}

#[test]
fn analyze_worked_scheme() {
    let o = ire(&["--json", "analyze", S0]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["twists"], 0);
    assert_eq!(r["dual_twists"], 2);
    assert_eq!(r["genus"], 2);
    assert_eq!(r["dual_scheme"], "(a.b b.e g.b d.e a.e b.b g.e d.b)");
    assert!(stdout(&ire(&["analyze", S0])).contains("genus           2"));
}

#[test]
fn dual_of_degenerate_scheme() {
    assert_eq!(stdout(&ire(&["dual", "(a.b a.e)"])).trim(), "(a.b)(a.e)");
}

#[test]
fn induct_on_example_file() {
    let f = example_file();
    let path = f.path().to_str().unwrap();
    let o = ire(&["induct", "--step", "rb:d,a", path]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["scheme"], "(a.b b.b g.b d.b b.e g.e a.e d.e)");

    let mut g = tempfile::NamedTempFile::new().unwrap();
    g.write_all(&o.stdout).unwrap();
    let back = ire(&[
        "induct",
        "--inverse",
        "--step",
        "rb:d,a",
        g.path().to_str().unwrap(),
    ]);
    assert_eq!(json(&back), json(&ire(&["example"])));
}

#[test]
fn class_of_degenerate_scheme() {
    let o = ire(&["--json", "class", "(a.b a.e)"]);
    let doc = json(&o);
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 1);
    assert!(stdout(&ire(&["class", "(a.b a.e)"])).contains("1 schemes, 0 non-loop edges"));
    assert!(stdout(&ire(&["class", "--format", "dot", S0])).starts_with("digraph"));
}

#[test]
fn glue_and_surface() {
    let f = example_file();
    let path = f.path().to_str().unwrap();
    let tree = json(&ire(&["glue", "--dual", path]));
    assert_eq!(tree["branch_points"].as_array().unwrap().len(), 2);
    let surf = json(&ire(&["surface", path]));
    assert_eq!(surf["genus"], 2);
    assert_eq!(surf["euler"]["chi"], -2);
    let svg = stdout(&ire(&["surface", "--format", "svg", path]));
    assert!(svg.starts_with("<svg"));
    assert!(!ire(&["glue", S0]).status.success());
}

#[test]
fn verify_passes_on_example() {
    let f = example_file();
    let o = ire(&["--json", "verify", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&o)["ok"], true);
    assert!(ire(&["verify", S0]).status.success());
}

#[test]
fn exit_codes() {
    let tie = r#"{"scheme": "(a.b b.b a.e b.e)", "v": {"a": "1", "b": "1"}}"#;
    let o = ire(&["induct", "--positive", "--step", "rb:b,a", tie]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains('a') && err.contains('b'));
    assert_eq!(ire(&["analyze", "(a.b a.b)"]).status.code(), Some(1));
    assert_eq!(
        ire(&["induct", "--step", "rb:a,b", S0]).status.code(),
        Some(1)
    );
}
