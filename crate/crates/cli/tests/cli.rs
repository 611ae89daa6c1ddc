use std::path::PathBuf;
use std::process::{Command, Output};

fn qconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qconv")).args(args).output().expect("runs qconv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "specs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn tmp(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("qconv-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qconv(&[]).status.code(), Some(2));
    assert_eq!(qconv(&["tables", "IX"]).status.code(), Some(2));
    assert_eq!(qconv(&["simulate", "--codec", "steane", "--p", "0.01"]).status.code(), Some(2));
    let o = qconv(&["simulate", "--codec", "steane", "--p", "0.01", "--seed", "1", "--xyz", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(qconv(&["verify", "/nonexistent/spec.toml"]).status.code(), Some(2));
}

#[test]
fn decode_css_syndrome() {
    let o = qconv(&["decode", "--field", "f2", "--gen", "111,101,1", "--syndrome", "111"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("error: 100"), "{s}");
    assert!(s.contains("block 0 position 1: 1"), "{s}");
    let o = qconv(&["decode", "--field", "f2", "--gen", "111,101,1", "--syndrome", "000"]);
    assert!(stdout(&o).contains("correction: identity"));
}

#[test]
fn table_iv_matches() {
    let o = qconv(&["tables", "IV", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"(9,6,3)\",\"[9,3,3]\""));
}

#[test]
fn shipped_specs_verify() {
    for name in ["f4_nu1.toml", "f4_nu2.toml", "css_nu2.toml"] {
        let o = qconv(&["verify", &spec(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn corrupted_spec_fails() {
    let text = std::fs::read_to_string(spec("f4_nu1.toml")).unwrap();
    let bad = text.replace("\"1W\"]", "\"1w\"]");
    assert_ne!(bad, text);
    let o = qconv(&["verify", &tmp("bad.toml", &bad)]);
    assert_eq!(o.status.code(), Some(1));
    let o = qconv(&["verify", &tmp("broken.toml", "field = \"f4\"\nn = 3\ngenerators = [\"11\", \"1q\", \"1W\"]\n")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 21"));
}

#[test]
fn emitted_spec_round_trips() {
    let o = qconv(&["verify", &spec("f4_nu2.toml"), "--emit"]);
    assert_eq!(o.status.code(), Some(0));
    let o2 = qconv(&["verify", &tmp("emit.toml", &stdout(&o))]);
    assert_eq!(o2.status.code(), Some(0), "{}", stdout(&o2));
}

#[test]
fn simulation_is_deterministic() {
    let args = ["simulate", "--codec", "f4-tb9", "--p", "0.01,0.02", "--trials", "2e4", "--seed", "11"];
    let a = qconv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&qconv(&args)));
    let lines: Vec<_> = stdout(&a).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("f4-tb9,0.01,20000,"));
}
