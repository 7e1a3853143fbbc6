use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const P_TEXT: &str = "# set P\n0 0 0\n6 0 0\n1 4 0\n2 1 7\n";

fn alphashape(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphashape")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Builds the bundle of P in a fresh directory.
fn built() -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("P.pts");
    std::fs::write(&pts, P_TEXT).unwrap();
    let json = dir.path().join("P.json");
    stdout(&alphashape(&["build", path(&pts), "-o", path(&json)]));
    (dir, json)
}

#[test]
fn spectrum_csv_has_thirteen_rows() {
    let (_dir, json) = built();
    let out = stdout(&alphashape(&["spectrum", path(&json), "--csv"]));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 13);
    assert_eq!(rows[0], "0,0,0");
    assert!(rows[4].starts_with("4,697/64,"));
    assert_eq!(rows[12], "12,inf,inf");
}

/// Reads an OFF file the way a standard reader does.
fn read_off(text: &str) -> (Vec<[f64; 3]>, Vec<Vec<usize>>) {
    let mut tokens = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    assert_eq!(tokens.next(), Some("OFF"));
    let counts: Vec<usize> = tokens.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
    let verts: Vec<[f64; 3]> = (0..counts[0])
        .map(|_| {
            let v: Vec<f64> = tokens.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    let faces: Vec<Vec<usize>> = (0..counts[1])
        .map(|_| {
            let f: Vec<usize> = tokens.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
            assert_eq!(f[0], f.len() - 1);
            f[1..].to_vec()
        })
        .collect();
    assert!(tokens.next().is_none());
    assert!(faces.iter().flatten().all(|&i| i < verts.len()));
    (verts, faces)
}

#[test]
fn export_last_interval_is_the_tetrahedron() {
    let (dir, json) = built();
    let off = dir.path().join("P.off");
    stdout(&alphashape(&["export", path(&json), "--index", "12", "--format", "off", "-o", path(&off)]));
    let (verts, faces) = read_off(&std::fs::read_to_string(off).unwrap());
    assert_eq!(verts.len(), 4);
    assert_eq!(faces.len(), 4);
    assert!(verts.contains(&[2.0, 1.0, 7.0]));
}

#[test]
fn export_obj_to_stdout() {
    let (_dir, json) = built();
    let out = stdout(&alphashape(&["export", path(&json), "--index", "0", "--format", "obj"]));
    assert_eq!(out.lines().filter(|l| l.starts_with("v ")).count(), 4);
    assert_eq!(out.lines().filter(|l| l.starts_with("p ")).count(), 4);
}

#[test]
fn export_out_of_range_fails() {
    let (_dir, json) = built();
    let o = alphashape(&["export", path(&json), "--index", "99"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}

#[test]
fn bad_arguments_fail_with_a_diagnostic() {
    let (dir, json) = built();
    for args in [
        vec!["export", path(&json), "--index", "1", "--format", "stl"],
        vec!["export", path(&json), "--index", "1", "--classes", "bogus"],
        vec!["spectrum", "/nonexistent/bundle.json"],
    ] {
        let o = alphashape(&args);
        assert!(!o.status.success(), "{args:?} succeeded");
        assert!(!o.stderr.is_empty());
    }
    let dup = dir.path().join("dup.pts");
    std::fs::write(&dup, "0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 0 0\n").unwrap();
    let o = alphashape(&["build", path(&dup)]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn signatures_and_stats() {
    let (_dir, json) = built();
    let csv = stdout(&alphashape(&["signatures", path(&json), "--csv"]));
    assert_eq!(csv.lines().count(), 13);
    let components: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(components, ["4", "3", "2", "2", "2", "1", "1", "1", "1", "1", "1", "1"]);
    let table = stdout(&alphashape(&["signatures", path(&json)]));
    assert_eq!(table.lines().count(), 13);
    let stats = stdout(&alphashape(&["stats", path(&json)]));
    assert!(stats.contains("tetrahedron   1"));
    assert!(stats.contains("depth histogram"));
}

#[test]
fn build_to_stdout_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("P.pts");
    std::fs::write(&pts, P_TEXT).unwrap();
    let a = stdout(&alphashape(&["build", path(&pts)]));
    let b = stdout(&alphashape(&["build", path(&pts)]));
    assert_eq!(a, b);
    let timed = stdout(&alphashape(&["build", path(&pts), "--timings"]));
    assert!(timed.contains("\"timings\""));
}
