use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const GL2: &str = r#"{
  "arity": 2,
  "dim": 4,
  "brackets": [
    { "args": [1, 2], "value": { "2": "2" } },
    { "args": [1, 3], "value": { "3": "-2" } },
    { "args": [2, 3], "value": { "1": "1" } }
  ]
}"#;

fn nlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gl2_cohomology() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gl2.json", GL2);
    let o = nlie(&[
        "--json",
        "cohomology",
        s(&f),
        "--degree",
        "1",
        "--coefficients",
        "adjoint",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["result"]["cocycles"], 4);
    assert_eq!(r["result"]["cohomology"], 1);
    assert!(r["input_digest"].as_str().unwrap().starts_with("sha256:"));
    let again = nlie(&[
        "--json",
        "cohomology",
        s(&f),
        "--degree",
        "1",
        "--coefficients",
        "adjoint",
    ]);
    assert_eq!(o.stdout, again.stdout);

    let o = nlie(&[
        "--json",
        "cohomology",
        s(&f),
        "--degree",
        "2",
        "--coefficients",
        "scalar",
        "--basis",
    ]);
    let r = json(&o);
    assert_eq!(r["result"]["cohomology"], 0);
    let forms = r["result"]["cocycle_basis"].as_array().unwrap();
    assert_eq!(forms.len(), 3);
    for form in forms {
        let e = nlie(&["extend", s(&f), "--cocycle", form.as_str().unwrap()]);
        assert_eq!(e.status.code(), Some(0));
        assert!(stdout(&e).contains("trivial: true"));
    }
}

#[test]
fn check_abelian_and_broken() {
    let dir = tempfile::tempdir().unwrap();
    let ab = write(dir.path(), "ab.json", r#"{"arity":3,"dim":4,"brackets":[]}"#);
    let o = nlie(&["check", s(&ab)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS] fundamental identity"));
    // [e1,e2] = e3, [e1,e3] = e3, [e2,e3] = e1 breaks the Jacobi identity
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"arity":2,"dim":3,"brackets":[{"args":[1,2],"value":{"3":"1"}},{"args":[1,3],"value":{"3":"1"}},{"args":[2,3],"value":{"1":"1"}}]}"#,
    );
    let o = nlie(&["check", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] fundamental identity"));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "broken.json",
        "{\n  \"arity\": 2,\n  \"dim\": 3,\n  \"oops\": 1\n}",
    );
    let o = nlie(&["check", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
    assert_eq!(nlie(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(nlie(&["catalog", "bai/n=3/4f?beta=2"]).status.code(), Some(2));
}

#[test]
fn induce_from_catalog_and_check_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = nlie(&["catalog", "lie3/L(3,-1)", "--out-dir", s(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let file = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let out = dir.path().join("induced.json");
    let o = nlie(&["--json", "induce", s(&file), "--trace", "x3", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let induced: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(induced["arity"], 3);
    assert_eq!(induced["brackets"].as_array().unwrap().len(), 1);
    assert_eq!(induced["brackets"][0]["args"], serde_json::json!([1, 2, 3]));
    assert_eq!(nlie(&["check", s(&out)]).status.code(), Some(0));
    // x2 is a trace but x1 is not
    assert_eq!(
        nlie(&["induce", s(&file), "--trace", "x1"]).status.code(),
        Some(1)
    );
}

#[test]
fn canonical_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = nlie(&["catalog", "lie4/M8", "--out-dir", s(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let m8 = dir.path().join("lie4_n2_M8.json");
    let saved = dir.path().join("saved.json");
    let o = nlie(&["--json", "check", s(&m8), "--write-canonical", s(&saved)]);
    assert_eq!(json(&o)["result"]["brackets"], "[e1,e2]=e2; [e3,e4]=e4");
    assert_eq!(std::fs::read(&m8).unwrap(), std::fs::read(&saved).unwrap());
    // a non-canonical file normalizes, and the normalized form is a fixed point
    let f = write(dir.path(), "gl2.json", GL2);
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    nlie(&["check", s(&f), "--write-canonical", s(&once)]);
    nlie(&["check", s(&once), "--write-canonical", s(&twice)]);
    assert_eq!(std::fs::read(&once).unwrap(), std::fs::read(&twice).unwrap());
    let swapped = write(
        dir.path(),
        "swapped.json",
        r#"{"arity":2,"dim":2,"brackets":[{"args":[2,1],"value":{"2":"1"}}]}"#,
    );
    let o = nlie(&["check", s(&swapped)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("read as -[1, 2]"));
}

#[test]
fn extension_example() {
    let dir = tempfile::tempdir().unwrap();
    nlie(&["catalog", "lie4/M4", "--out-dir", s(dir.path())]);
    let m4 = dir.path().join("lie4_n2_M4.json");
    let o = nlie(&[
        "--json",
        "extend",
        s(&m4),
        "--cocycle",
        "[2,4]=1; [3,4]=-1",
        "--trace",
        "x1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["result"]["trivial"], false);
    assert_eq!(r["result"]["brackets"], "[e1,e2,e4]=e3+c; [e1,e3,e4]=e3-c");
    let o = nlie(&[
        "--json",
        "extend",
        s(&m4),
        "--cocycle",
        "[1,2]=1",
        "--trace",
        "x1",
    ]);
    assert_eq!(json(&o)["result"]["trivial"], true);
    let o = nlie(&["extend", s(&m4), "--cocycle", "[1,3]=1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn recognize_and_structure() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gl2.json", GL2);
    let induced = dir.path().join("gl2t.json");
    nlie(&["induce", s(&f), "--trace", "x4", "--out", s(&induced)]);
    let r = json(&nlie(&["--json", "recognize", s(&induced)]));
    assert_eq!(r["result"]["recognized"], true);
    assert_eq!(r["result"]["pivot"], "e4");
    nlie(&["catalog", "filippov/n=3/3f", "--out-dir", s(dir.path())]);
    let simple = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.to_string_lossy().contains("filippov"))
        .unwrap();
    let r = json(&nlie(&["--json", "recognize", s(&simple)]));
    assert_eq!(r["result"]["recognized"], false);
    assert_eq!(r["result"]["obstruction"], true);
    let r = json(&nlie(&["--json", "structure", s(&f)]));
    assert_eq!(r["result"]["center"], serde_json::json!(["e4"]));
    assert_eq!(r["result"]["signature"]["derived_dim"], 3);
    let r = json(&nlie(&["--json", "traces", s(&f)]));
    assert_eq!(r["result"]["basis"], serde_json::json!(["x4"]));
}

#[test]
fn catalog_lists_and_parameters() {
    let r = json(&nlie(&["--json", "catalog", "bai/n=3/4e?beta=2"]));
    assert_eq!(r["result"]["count"], 1);
    assert_eq!(r["result"]["entries"][0]["entry"], "4e(beta=2)");
    let r = json(&nlie(&["--json", "catalog", "filippov/n=3/dim=4"]));
    assert!(r["result"]["count"].as_u64().unwrap() >= 6);
    assert_eq!(nlie(&["catalog", "lie4/M9?a=0"]).status.code(), Some(1));
}

#[test]
fn reproduce_subset() {
    let o = nlie(&["--json", "reproduce", "--only", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let table = r["result"]["reference_values"].as_array().unwrap();
    assert!(table.iter().all(|row| row["agree"] == true));
    assert_eq!(r["checks"].as_array().unwrap().len(), 2);
}
