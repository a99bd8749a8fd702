use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const INPUT: &str = "year,a,b\n2000,1,\n2001,,\n2002,3,12\n2003,4.5,14\n2004,5,16\n";

fn prepare(dir: &Path, transforms: &str) -> Output {
    fs::write(dir.join("d.csv"), INPUT).unwrap();
    fs::write(dir.join("t.txt"), transforms).unwrap();
    fs::write(
        dir.join("c.toml"),
        "[data]\npath = \"d.csv\"\ntransforms = \"t.txt\"\n[data.roles]\na = \"endogenous\"\nb = \"endogenous\"\n",
    )
    .unwrap();
    Command::new(env!("CARGO_BIN_EXE_cvar"))
        .arg("--config")
        .arg(dir.join("c.toml"))
        .arg("--out")
        .arg(dir.join("out"))
        .arg("prepare")
        .output()
        .expect("binary runs")
}

fn table(dir: &Path) -> String {
    let text = fs::read_to_string(dir.join("out/prepared.csv")).unwrap();
    text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}

#[test]
fn empty_transform_list_keeps_the_data() {
    let dir = tempfile::tempdir().unwrap();
    let o = prepare(dir.path(), "# nothing to do\n\n");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(table(dir.path()), INPUT);
}

#[test]
fn interpolate_then_backcast_matches_hand_result() {
    let dir = tempfile::tempdir().unwrap();
    let o = prepare(dir.path(), "interpolate a\nbackcast b ref=a start=2002\n");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // a(2001) = 2; b(2001) = 12 - (3 - 2) = 11; b(2000) = 11 - (2 - 1) = 10.
    let expected = "year,a,b\n2000,1,10\n2001,2,11\n2002,3,12\n2003,4.5,14\n2004,5,16\n";
    assert_eq!(table(dir.path()), expected);
    let log = fs::read_to_string(dir.path().join("out/transforms.log")).unwrap();
    assert!(log.contains("line 1: interpolate a"), "{log}");
    assert!(log.contains("line 2: backcast b"), "{log}");
}

#[test]
fn unknown_transform_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = prepare(dir.path(), "interpolate a\n\nsmooth b\n");
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("t.txt:3: unknown transform `smooth`"), "{err}");
    assert!(!dir.path().join("out/prepared.csv").exists());
}

#[test]
fn failing_transform_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = prepare(dir.path(), "\nbackcast b ref=a start=2001\n");
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("t.txt:2: target column `b` is missing in 2001"), "{err}");
}
