use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use diho::precubical::{filled_square, loop_graph, CellFaces, PrecubicalSet};

fn diho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diho")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, c: &PrecubicalSet) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, c.to_json()).unwrap();
    p
}

#[test]
fn ha1_filled_square_pretty() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "square.json", &filled_square());
    let o = diho(&["ha1", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).map(str::trim_end).collect();
    assert_eq!(rows, ["  | 1 2 3 4", "1 | R 0 0 0", "2 | R R 0 0", "3 | R 0 R 0", "4 | R R R R"]);
}

#[test]
fn ha1_json_matches_modes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "square.json", &filled_square());
    for mode in ["ideal", "image", "local"] {
        let o = diho(&["ha1", f.to_str().unwrap(), "--mode", mode, "--format", "json"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["mode"], mode);
        assert_eq!(v["matrix"]["entries"][3][0]["rank"], 1);
    }
}

#[test]
fn two_holes_example_local_mode() {
    let o = diho(&["examples", "--name", "two_holes_left", "--mode", "local"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("check: ok"), "{out}");
}

#[test]
fn every_example_checks_in_every_mode() {
    for mode in ["ideal", "image", "local"] {
        let o = diho(&["examples", "--mode", mode]);
        assert!(o.status.success(), "{mode}: {}", stdout(&o));
        assert!(!stdout(&o).contains("MISMATCH"));
    }
}

#[test]
fn invalid_complex_exits_1_and_names_violation() {
    let dir = tempfile::tempdir().unwrap();
    let c = filled_square();
    let mut faces = c.faces().clone();
    faces.insert("C".into(), CellFaces { zero: vec!["c".into(), "a".into()], one: vec!["b".into(), "d".into()] });
    let bad = PrecubicalSet::new((0..3).map(|n| c.cells(n).to_vec()).collect(), faces);
    let f = write(dir.path(), "bad.json", &bad);
    let o = diho(&["validate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("fails at `C`"), "{}", stderr(&o));

    let ok = write(dir.path(), "good.json", &c);
    let o = diho(&["validate", ok.to_str().unwrap()]);
    assert!(o.status.success());
}

#[test]
fn bad_flags_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "square.json", &filled_square());
    let f = f.to_str().unwrap();
    assert_eq!(diho(&["ha1", f, "--mode", "bogus"]).status.code(), Some(2));
    assert_eq!(diho(&["--jobs", "0", "ha1", f]).status.code(), Some(2));
    assert_eq!(diho(&["ha1", f, "--restrict", "9"]).status.code(), Some(2));
    assert_eq!(diho(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cyclic_complex_needs_cap() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "loop.json", &loop_graph());
    let f = f.to_str().unwrap();
    let o = diho(&["ha1", f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap"));
    let o = diho(&["ha1", f, "--max-len", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matrix"]["entries"][0][0]["rank"], 6);
    assert_eq!(v["length_filtered"], true);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "square.json", &filled_square());
    let f = f.to_str().unwrap();
    for args in [vec!["ha1", f, "--format", "json"], vec!["classes", f], vec!["examples", "--seed", "3"]] {
        let a = diho(&args);
        let b = diho(&[&["--jobs", "1"], args.as_slice()].concat());
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
