use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropcurve"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const RUNNING_EXAMPLE: &str = r#"{
  "vars": 2,
  "terms": [
    {"exponent": [2, 0], "coeff": [{"exp": "0", "coeff": "1"}]},
    {"exponent": [0, 1], "coeff": [{"exp": "0", "coeff": "1"}]},
    {"exponent": [0, 0], "coeff": [{"exp": "0", "coeff": "-1"}]}
  ]
}"#;

const GOLDEN_CURVE: &str = concat!(
    r#"{"edges":[{"dir":[-1,0],"ends":[0],"weight":1},"#,
    r#"{"dir":[0,-1],"ends":[0],"weight":2},"#,
    r#"{"dir":[1,2],"ends":[0],"weight":1}],"n":2,"vertices":[["0","0"]]}"#,
);

#[test]
fn tropicalize_conical_golden_example() {
    let dir = TempDir::new().unwrap();
    let poly = write(&dir, "f.json", RUNNING_EXAMPLE);
    let out_path = dir.path().join("curve.json");
    let out = run(&[
        "tropicalize",
        "--poly",
        path_str(&poly),
        "--conical",
        "-o",
        path_str(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let written = fs::read_to_string(&out_path).unwrap();
    assert_eq!(written, format!("{GOLDEN_CURVE}\n"));
}

#[test]
fn tropicalize_defaults_to_dual() {
    let dir = TempDir::new().unwrap();
    let poly = write(
        &dir,
        "f.json",
        r#"{
          "vars": 2,
          "terms": [
            {"exponent": [1, 0], "coeff": [{"exp": "0", "coeff": "1"}]},
            {"exponent": [0, 1], "coeff": [{"exp": "0", "coeff": "1"}]},
            {"exponent": [0, 0], "coeff": [{"exp": "1", "coeff": "1"}]}
          ]
        }"#,
    );
    let out = run(&["tropicalize", "--poly", path_str(&poly)]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        concat!(
            r#"{"edges":[{"dir":[-1,0],"ends":[0],"weight":1},"#,
            r#"{"dir":[0,-1],"ends":[0],"weight":1},"#,
            r#"{"dir":[1,1],"ends":[0],"weight":1}],"n":2,"vertices":[["-1","-1"]]}"#,
            "\n",
        )
    );
}

#[test]
fn tropicalize_conical_rejects_mixed_valuations() {
    let dir = TempDir::new().unwrap();
    let poly = write(
        &dir,
        "f.json",
        r#"{
          "vars": 2,
          "terms": [
            {"exponent": [1, 0], "coeff": [{"exp": "0", "coeff": "1"}]},
            {"exponent": [0, 1], "coeff": [{"exp": "1", "coeff": "1"}]}
          ]
        }"#,
    );
    let out = run(&["tropicalize", "--poly", path_str(&poly), "--conical"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("valuations differ"));
}

#[test]
fn balance_reports_balanced_curve() {
    let dir = TempDir::new().unwrap();
    let curve = write(&dir, "curve.json", GOLDEN_CURVE);
    let out = run(&["balance", path_str(&curve)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "vertex 0 at (0, 0): defect (0, 0) balanced\n"
    );
}

#[test]
fn balance_flags_single_ray_curve() {
    let dir = TempDir::new().unwrap();
    let curve = write(
        &dir,
        "curve.json",
        r#"{"n":2,"vertices":[["0","0"]],"edges":[{"ends":[0],"dir":[1,0],"weight":1}]}"#,
    );
    let out = run(&["balance", path_str(&curve)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out),
        "vertex 0 at (0, 0): defect (1, 0) unbalanced\n"
    );
}

fn hirzebruch_files(dir: &TempDir, k: i64) -> (PathBuf, PathBuf) {
    let bundle = write(
        dir,
        "bundle.json",
        &format!(r#"{{"n":1,"picard_rank":1,"chern":[[{k}]]}}"#),
    );
    let fan = write(dir, "fan.json", r#"{"n":1,"rays":[[1],[-1]]}"#);
    (bundle, fan)
}

#[test]
fn bundle_balance_hirzebruch_example() {
    let dir = TempDir::new().unwrap();
    let (bundle, fan) = hirzebruch_files(&dir, 1);
    let weights = write(
        &dir,
        "w.json",
        r#"{"weights":[{"ray":[1],"w":1},{"ray":[-1],"w":0}]}"#,
    );
    let out = run(&[
        "bundle-balance",
        "--bundle",
        path_str(&bundle),
        "--fan",
        path_str(&fan),
        "--weights",
        path_str(&weights),
        "--beta",
        "[1]",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "{\"balanced\":true,\"defect\":[0]}\n");
}

#[test]
fn bundle_balance_detects_defect() {
    let dir = TempDir::new().unwrap();
    let (bundle, fan) = hirzebruch_files(&dir, 1);
    let weights = write(
        &dir,
        "w.json",
        r#"{"weights":[{"ray":[1],"w":2},{"ray":[-1],"w":0}]}"#,
    );
    let out = run(&[
        "bundle-balance",
        "--bundle",
        path_str(&bundle),
        "--fan",
        path_str(&fan),
        "--weights",
        path_str(&weights),
        "--beta",
        "[1]",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "{\"balanced\":false,\"defect\":[1]}\n");
}

#[test]
fn solve_weights_lists_solutions_in_order() {
    let dir = TempDir::new().unwrap();
    let (bundle, fan) = hirzebruch_files(&dir, 2);
    let out = run(&[
        "solve-weights",
        "--bundle",
        path_str(&bundle),
        "--fan",
        path_str(&fan),
        "--beta",
        "[1]",
        "--bound",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        concat!(
            r#"{"weights":[{"ray":[-1],"w":0},{"ray":[1],"w":2}]}"#,
            "\n",
            r#"{"weights":[{"ray":[-1],"w":1},{"ray":[1],"w":3}]}"#,
            "\n",
        )
    );
}

#[test]
fn reduce_normalizes_hirzebruch_difference() {
    let dir = TempDir::new().unwrap();
    let (bundle, fan) = hirzebruch_files(&dir, 2);
    let divisor = write(
        &dir,
        "d.json",
        r#"{"horiz":[{"ray":[1],"coef":1},{"ray":[-1],"coef":-1}],"base":[0]}"#,
    );
    let out = run(&[
        "reduce",
        "--bundle",
        path_str(&bundle),
        "--fan",
        path_str(&fan),
        "--divisor",
        path_str(&divisor),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "{\"base\":[2],\"horiz\":[]}\n");
}

#[test]
fn plot_is_deterministic_svg_with_one_path_per_edge() {
    let dir = TempDir::new().unwrap();
    let curve = write(&dir, "curve.json", GOLDEN_CURVE);
    let svg1 = dir.path().join("a.svg");
    let svg2 = dir.path().join("b.svg");
    for svg in [&svg1, &svg2] {
        let out = run(&["plot", path_str(&curve), "-o", path_str(svg)]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    }
    let first = fs::read_to_string(&svg1).unwrap();
    let second = fs::read_to_string(&svg2).unwrap();
    assert_eq!(first, second);
    assert!(first.starts_with("<?xml version=\"1.0\""));
    assert!(first.contains("version=\"1.1\""));
    assert_eq!(first.matches("<path ").count(), 3);
    assert_eq!(first.matches("<circle ").count(), 1);
    assert!(first.contains(">2</text>"), "weight label missing:\n{first}");
}

#[test]
fn plot_honors_custom_window() {
    let dir = TempDir::new().unwrap();
    let curve = write(&dir, "curve.json", GOLDEN_CURVE);
    let svg = dir.path().join("zoom.svg");
    let out = run(&[
        "plot",
        path_str(&curve),
        "-o",
        path_str(&svg),
        "--box",
        r#"["-1/2","1/2",-1,1]"#,
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<path ").count(), 3);
    let out = run(&[
        "plot",
        path_str(&curve),
        "-o",
        path_str(&svg),
        "--box",
        "[1,0,0,1]",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("box"));
}

#[test]
fn parse_errors_exit_2_and_name_the_field() {
    let dir = TempDir::new().unwrap();
    let out = run(&["balance", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let poly = write(&dir, "bad.json", r#"{"vars": 2}"#);
    let out = run(&["tropicalize", "--poly", path_str(&poly)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("terms"), "stderr: {}", stderr(&out));

    let curve = write(
        &dir,
        "bad_curve.json",
        r#"{"n":2,"vertices":[["0","0"]],"edges":[{"ends":[0],"dir":[1,0],"weight":0}]}"#,
    );
    let out = run(&["balance", path_str(&curve)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("weight"), "stderr: {}", stderr(&out));
}

#[test]
fn tropicalize_output_reparses_to_the_same_curve() {
    let dir = TempDir::new().unwrap();
    let poly = write(&dir, "f.json", RUNNING_EXAMPLE);
    let out = run(&["tropicalize", "--poly", path_str(&poly), "--conical"]);
    let text = stdout(&out);
    let round = write(&dir, "round.json", &text);
    let out2 = run(&["tropicalize", "--poly", path_str(&poly), "--conical"]);
    assert_eq!(text, stdout(&out2));
    let balance = run(&["balance", path_str(&round)]);
    assert_eq!(balance.status.code(), Some(0));
}
