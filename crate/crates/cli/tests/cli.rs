use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopftwist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopftwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const SMALL: &str = r#"
name = "small"

[group]
unipotent = ["X", "Y", "V"]
coproduct = { V = "X(x)Y" }

[twist]
kind = "expR"
r = [["X", "V", "1"]]
support = { unipotent = ["X", "V"] }
embedding = { X = "X", Y = "0", V = "V" }

[[tasks]]
kind = "cocycle"

[[tasks]]
kind = "presentation"
expected = []
"#;

#[test]
fn lists_the_six_examples() {
    let o = run(&["list-examples"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().collect::<Vec<_>>(),
        ["heisenberg3", "dim4-base", "dim4-minimal", "u4-coset", "u4-quotient", "nilpotent-torus"]
    );
}

#[test]
fn examples_pass() {
    for key in ["heisenberg3", "dim4-base", "dim4-minimal", "u4-quotient", "nilpotent-torus"] {
        let o = run(&["verify-example", key]);
        assert_eq!(o.status.code(), Some(0), "{key}:\n{}", stdout(&o));
        assert!(stdout(&o).contains("\nRESULT: PASS"), "{key}");
    }
}

/// The printed u4 coset relations contradict the Jacobi identity; the
/// computed table differs from them in exactly two signs.
#[test]
fn u4_coset_differs_from_the_printed_table_in_two_signs() {
    let o = run(&["verify-example", "u4-coset", "--report", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let failures: Vec<&str> = out.lines().filter(|l| l.starts_with("failure.")).collect();
    assert_eq!(failures.len(), 2, "{out}");
    assert!(failures[0].ends_with("=[Y,F13] = -F23^2, expected F23^2"));
    assert!(failures[1].ends_with("=[Y,V] = -F23*F24 + F23^2*F34, expected F23*F24 - F23^2*F34"));
    assert!(out.contains("=[F13,V] = F23*F13\n") || out.contains("=[V,F13] = -F23*F13\n"), "{out}");
}

#[test]
fn machine_report_is_key_value() {
    let o = run(&["verify-example", "dim4-minimal", "--report", "machine"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in out.lines() {
        let (k, _) = line.split_once('=').unwrap_or_else(|| panic!("not key=value: {line}"));
        assert!(!k.is_empty() && !k.contains(' '), "{line}");
    }
    assert!(out.starts_with("name=dim4-minimal\n"));
    assert!(out.contains("\nassumed.0="));
    assert!(out.ends_with("result=pass\nexit=0\n"));
}

#[test]
fn degree_flag_sets_the_default() {
    let path = scratch("small.toml", SMALL);
    let o = run(&["check", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("(degree<=2) triples="), "{}", stdout(&o));
    let o = run(&["check", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("(degree<=4) triples="), "{}", stdout(&o));
}

#[test]
fn altered_expectation_fails_with_a_diff() {
    let text = SMALL.replace("expected = []", "expected = [[\"V\", \"X\", \"Y\"]]");
    let path = scratch("altered.toml", &text);
    let o = run(&["check", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failure: [V,X] = 0, expected Y"), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["verify-example", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file.toml"]).status.code(), Some(2));
    let path = scratch("undeclared.toml", &SMALL.replace("X(x)Y", "X(x)Z"));
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("group.coproduct.V") && err.contains('Z'), "{err}");
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify-example", "dim4-base", "--report", "xml"]).status.code(), Some(2));
}
