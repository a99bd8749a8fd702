mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{pair_estimate, Vecm};
use cvar::artifact::EstimateArtifact;

fn cvar(config: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvar"))
        .arg("--config")
        .arg(config)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn bundled() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/cvar.toml")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

/// Directory with two-variable data, its true-parameter estimate and a policy
/// controlling `control` to hold `x0`.
fn pair_setup(control: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let data = Vecm::pair().simulate(60, 21);
    let mut csv = String::from("year,x0,x1\n");
    for i in 0..data.len() {
        csv.push_str(&format!("{},{},{}\n", data.years[i], data.endog[(i, 0)], data.endog[(i, 1)]));
    }
    write(dir.path(), "data.csv", &csv);
    let est = pair_estimate(&data);
    write(dir.path(), "estimate.json", &EstimateArtifact::from_estimate(&est, "fixture", 0, None).to_json());
    write(
        dir.path(),
        "policy.toml",
        &format!("controls = [{{ {control} = 1.0 }}]\ntargets = [{{ x0 = 1.0 }}]\nb_star = [1.0]\nstart = 1010\nramp = 1\n"),
    );
    let cfg = write(
        dir.path(),
        "cvar.toml",
        "[data]\npath = \"data.csv\"\n[data.roles]\nx0 = \"endogenous\"\nx1 = \"endogenous\"\n\
         [model]\nspec = \"model.toml\"\nestimate = \"estimate.json\"\n\
         [longrun]\nreplications = 0\n[control]\npolicy = \"policy.toml\"\n",
    );
    (dir, cfg)
}

#[test]
fn pair_with_wrong_control_is_a_model_error() {
    let (dir, cfg) = pair_setup("x0");
    let out = dir.path().join("out");
    let o = cvar(&cfg, &["--out", out.to_str().unwrap(), "control"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("not controllable: det(b'Ca)=0"), "{}", stderr(&o));
    assert!(!out.join("control.txt").exists());

    let (dir, cfg) = pair_setup("x1");
    let out = dir.path().join("out");
    let o = cvar(&cfg, &["--out", out.to_str().unwrap(), "control"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = fs::read_to_string(out.join("control.txt")).unwrap();
    assert!(report.contains("unit roots: 0 (expected n - r - m = 0)"), "{report}");
}

#[test]
fn missing_data_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = cvar(&bundled(), &["--data", "/nonexistent/data.csv", "--out", dir.path().to_str().unwrap(), "estimate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/data.csv"));
    let o = cvar(&dir.path().join("none.toml"), &["estimate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn outputs_are_not_overwritten_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(cvar(&bundled(), &["--out", out, "ranktest"]).status.code(), Some(0));
    let before = fs::read(dir.path().join("ranktest.txt")).unwrap();
    let o = cvar(&bundled(), &["--out", out, "--seed", "7", "ranktest"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--force"));
    assert_eq!(fs::read(dir.path().join("ranktest.txt")).unwrap(), before);
    let o = cvar(&bundled(), &["--out", out, "--seed", "7", "--force", "ranktest"]);
    assert_eq!(o.status.code(), Some(0));
    let after = fs::read_to_string(dir.path().join("ranktest.txt")).unwrap();
    assert!(after.contains("# seed: 7"), "{after}");
}

fn listing(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn full_pipeline_reruns_are_byte_identical() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        for cmd in ["prepare", "estimate", "ranktest", "stability", "control", "simulate"] {
            let o = cvar(&bundled(), &["--out", dir.path().to_str().unwrap(), cmd]);
            assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stderr(&o));
        }
    }
    let (a, b) = (listing(dirs[0].path()), listing(dirs[1].path()));
    let names: Vec<&str> = a.iter().map(|(n, _)| n.as_str()).collect();
    for expected in ["estimate.json", "control.txt", "stability.csv", "hold1950_paths.csv", "hold1950_report.txt"] {
        assert!(names.contains(&expected), "{names:?}");
    }
    assert_eq!(a, b);
    let seed_line = "# seed: 42";
    for (name, bytes) in &a {
        let text = String::from_utf8_lossy(bytes);
        if name.ends_with(".csv") || name.ends_with(".txt") {
            assert!(text.contains(seed_line), "{name} lacks the seed");
        }
        if name.ends_with(".csv") {
            assert!(text.lines().any(|l| l.starts_with("# units:")), "{name} lacks units");
        }
    }
    let json = String::from_utf8_lossy(&a.iter().find(|(n, _)| n == "estimate.json").unwrap().1).into_owned();
    assert!(json.contains("\"seed\": 42"));
}
