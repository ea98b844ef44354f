use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multicentric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

const WORKED: &str = r#"{"centers":[[1,0],[-1,0]],"samples":[{"w":[3,0],"f":[[2,0],[0,0]]}]}"#;

#[test]
fn polyprod_of_worked_example() {
    let v = json_of(&run(&["polyprod", "--centers", "[[1,0],[-1,0]]", "--f", WORKED, "--g", WORKED]));
    // f⊛f = (4,0) + (3/4)·4·𝟙
    let f = &v["samples"][0]["f"];
    assert_eq!(complex(&f[0]), (7.0, 0.0));
    assert_eq!(complex(&f[1]), (3.0, 0.0));
}

#[test]
fn inverse_and_norms_of_worked_example() {
    let v = json_of(&run(&["invert", "--f", WORKED]));
    let g = &v["samples"][0]["f"];
    assert!(complex(&g[0]).0.abs() < 1e-15);
    assert!((complex(&g[1]).0 + 2.0 / 3.0).abs() < 1e-15);
    let n = json_of(&run(&["norm", "--f", WORKED]));
    assert_eq!(n["op_norm"].as_f64(), Some(5.0));
    let c = json_of(&run(&["charfunc", "--f", WORKED]));
    assert!((complex(&c["phi"][0][0]).0 - 2.0).abs() < 1e-14);
    assert!((complex(&c["phi"][0][1]).0 + 3.0).abs() < 1e-14);
}

#[test]
fn file_arguments_and_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, WORKED).unwrap();
    let out = dir.path().join("out.json");
    let status = run(&["gelfand", "--f", f.to_str().unwrap(), "--z", "[[2,0],[-2,0]]", "--output", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(complex(&v["values"][0]["phi"]), (3.0, 0.0));
    assert_eq!(complex(&v["values"][1]["phi"]), (-1.0, 0.0));
}

#[test]
fn chi_of_two_by_two_jordan_block() {
    let (f1, f2) = ((0.5, 1.0), (-1.5, 0.25));
    let f = format!(
        r#"{{"centers":[[0,1],[0,-1]],"samples":[{{"w":[1,0],"f":[[{},{}],[{},{}]]}}]}}"#,
        f1.0, f1.1, f2.0, f2.1
    );
    let a = "[[[0,0],[1,0]],[[0,0],[0,0]]]";
    let s = r#"{"entries":[{"alpha":[0,0],"n":1}]}"#;
    let v = json_of(&run(&["chi", "--matrix", a, "--spectrum", s, "--f", &f]));
    let data = &v["data"];
    // ((f1+f2)/2) I + ((f1−f2)/(2i)) A
    let diag = ((f1.0 + f2.0) / 2.0, (f1.1 + f2.1) / 2.0);
    let off = ((f1.1 - f2.1) / 2.0, -(f1.0 - f2.0) / 2.0);
    let close = |x: (f64, f64), y: (f64, f64)| (x.0 - y.0).abs() < 1e-14 && (x.1 - y.1).abs() < 1e-14;
    assert!(close(complex(&data[0]), diag));
    assert!(close(complex(&data[3]), diag));
    assert!(close(complex(&data[1]), off));
    assert!(close(complex(&data[2]), (0.0, 0.0)));
}

#[test]
fn hermite_and_specmap() {
    let a = "[[[0.5,0],[1,0],[0,0]],[[0,0],[0.5,0],[1,0]],[[0,0],[0,0],[0.5,0]]]";
    let s = r#"{"entries":[{"alpha":[0.5,0],"n":2}]}"#;
    let v = json_of(&run(&["hermite", "--matrix", a, "--spectrum", s, "--values", "[[[0.25,0],[1,0],[2,0]]]"]));
    assert_eq!(complex(&v["data"][0]), (0.25, 0.0));
    assert_eq!(complex(&v["data"][1]), (1.0, 0.0));
    assert_eq!(complex(&v["data"][2]), (1.0, 0.0));

    let f = r#"{"centers":[[1,0],[-1,0]],"samples":[{"w":[3,0],"f":[[2,0],[0,0]]}]}"#;
    let two_i = "[[[2,0],[0,0]],[[0,0],[2,0]]]";
    let s = r#"{"entries":[{"alpha":[2,0],"n":0}]}"#;
    let v = json_of(&run(&["specmap", "--matrix", two_i, "--spectrum", s, "--f", f]));
    assert_eq!(v["computed"].as_array().unwrap().len(), 1);
    assert!(v["hausdorff"].as_f64().unwrap() < 1e-6);
}

#[test]
fn radical_and_characters() {
    let v = json_of(&run(&["radical", "--centers", "[[1,0],[-1,0]]", "--w0", "-1"]));
    assert_eq!(v["basis"].as_array().unwrap().len(), 1);
    let v = json_of(&run(&["characters", "--centers", "[[1,0],[-1,0]]", "--w0", "0"]));
    assert_eq!(complex(&v["etas"][0][0]), (1.0, 0.0));
    assert_eq!(complex(&v["etas"][0][1]), (0.0, 0.0));
}

#[test]
fn exit_codes() {
    let malformed = run(&["roots", "--poly", r#"{"coef":[]}"#]);
    assert_eq!(malformed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("coeffs"));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["roots", "--poly", "missing-file.json"]).status.code(), Some(2));
    let critical = run(&[
        "invtransform",
        "--centers",
        "[[1,0],[-1,0]]",
        "--phi",
        r#"{"w":[-1,0],"values":[{"z":[0,0],"phi":[1,0]},{"z":[0,0],"phi":[1,0]}]}"#,
    ]);
    assert_eq!(critical.status.code(), Some(1));
    let not_invertible = run(&["invert", "--f", r#"{"centers":[[1,0],[-1,0]],"samples":[{"w":[-1,0],"f":[[1,0],[-1,0]]}]}"#]);
    assert_eq!(not_invertible.status.code(), Some(1));
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "homomorphism", "--seed", "7", "--d", "3", "--samples", "50", "--cases", "20"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["passed"], Value::Bool(true));
    let c = run(&["verify", "homomorphism", "--seed", "8", "--d", "3", "--cases", "20"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn results_round_trip() {
    let out = run(&["polyprod", "--f", WORKED, "--g", WORKED]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn csv_output() {
    let out = run(&["roots", "--poly", r#"{"coeffs":[[-4,0],[0,0],[1,0]]}"#, "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("path,re,im"));
    assert_eq!(lines.count(), 2);
}
