use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn btda(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btda"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .to_string()
}

#[test]
fn bound_reports_published_sizes() {
    let dir = tempfile::tempdir().unwrap();
    for (m, eps, gamma, n) in [
        ("cylinder", "0.49", "0.1", "638"),
        ("cylinder", "0.2", "0.1", "4160"),
        ("chopped-torus", "0.49", "0.2", "9157"),
    ] {
        let o = btda(
            &["bound", "--manifold", m, "--eps", eps, "--gamma", gamma],
            dir.path(),
        );
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(field(&stdout(&o), "n_star"), n);
    }
}

#[test]
fn torus_bound_flags_the_reach_condition() {
    let dir = tempfile::tempdir().unwrap();
    let o = btda(
        &[
            "bound",
            "--manifold",
            "chopped-torus",
            "--eps",
            "0.49",
            "--gamma",
            "0.1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[FAIL] delta <= min(reach(M), reach(dM))"));
}

#[test]
fn usage_errors_exit_1_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = btda(
        &[
            "bound",
            "--manifold",
            "cylinder",
            "--eps",
            "0.5",
            "--gamma",
            "0.1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("eps < delta/2 violated"));

    let o = btda(
        &[
            "sweep-gamma",
            "--manifold",
            "cylinder",
            "--eps",
            "0.7",
            "--out",
            "g.csv",
            "--svg",
            "g.svg",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let o = btda(
        &[
            "pipeline",
            "--manifold",
            "cylinder",
            "--eps",
            "0.49",
            "--gamma",
            "1.5",
            "--out-dir",
            "p",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let o = btda(
        &[
            "persistence",
            "--cloud",
            "missing.txt",
            "--r-max",
            "1",
            "--out",
            "b.csv",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let o = btda(
        &[
            "bound",
            "--manifold",
            "sphere",
            "--eps",
            "0.1",
            "--gamma",
            "0.1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn sweeps_have_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = btda(
        &[
            "sweep-gamma",
            "--manifold",
            "cylinder",
            "--eps",
            "0.49",
            "--out",
            "g.csv",
            "--svg",
            "g.svg",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("g.csv")).unwrap();
    assert_eq!(csv.lines().count(), 92);
    assert!(csv.lines().any(|l| l == "0.1,638"));
    assert!(fs::read_to_string(dir.path().join("g.svg"))
        .unwrap()
        .contains("<polyline"));

    let o = btda(
        &["sweep-eps", "--manifold", "cylinder", "--gamma", "0.1"],
        dir.path(),
    );
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 36);
    for row in ["0.2,4160", "0.3,1763", "0.4,967"] {
        assert!(csv.lines().any(|l| l == row), "{row}");
    }
}

#[test]
fn sample_and_persistence_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sample",
        "--manifold",
        "cylinder",
        "--n",
        "200",
        "--seed",
        "7",
    ];
    let a = stdout(&btda(&args, dir.path()));
    assert_eq!(a, stdout(&btda(&args, dir.path())));
    fs::write(dir.path().join("c.txt"), &a).unwrap();
    let p = [
        "persistence",
        "--cloud",
        "c.txt",
        "--r-max",
        "0.6",
        "--max-dim",
        "2",
    ];
    let b1 = stdout(&btda(&p, dir.path()));
    let b2 = stdout(&btda(&p, dir.path()));
    assert_eq!(b1, b2);
    assert!(b1.starts_with("dim,birth,death\n"));

    let twist = stdout(&btda(
        &[&p[..], &["--engine", "twist"]].concat(),
        dir.path(),
    ));
    let sort = |s: &str| {
        let mut v: Vec<String> = s
            .lines()
            .filter(|l| {
                let f: Vec<&str> = l.split(',').collect();
                f[1] != f[2]
            })
            .map(String::from)
            .collect();
        v.sort();
        v
    };
    assert_eq!(sort(&b1), sort(&twist));

    let o = btda(&[&p[..], &["--scale", "radius"]].concat(), dir.path());
    let first_h1 = |s: &str| -> f64 {
        s.lines()
            .find(|l| l.starts_with("1,"))
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .unwrap()
    };
    assert_eq!(first_h1(&stdout(&o)) * 2.0, first_h1(&b1));
}

#[test]
fn density_verdicts_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let s = btda(
        &[
            "sample",
            "--manifold",
            "cylinder",
            "--n",
            "638",
            "--seed",
            "1",
            "--out",
            "c.txt",
        ],
        dir.path(),
    );
    assert!(s.status.success());
    let ok = btda(
        &[
            "density",
            "--manifold",
            "cylinder",
            "--cloud",
            "c.txt",
            "--eps",
            "0.3",
            "--mesh-h",
            "0.01",
        ],
        dir.path(),
    );
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).starts_with("verdict=Dense"));
    let bad = btda(
        &[
            "density",
            "--manifold",
            "cylinder",
            "--cloud",
            "c.txt",
            "--eps",
            "0.05",
            "--mesh-h",
            "0.01",
        ],
        dir.path(),
    );
    assert_eq!(bad.status.code(), Some(3));
    let wrong_dim = btda(
        &[
            "density",
            "--manifold",
            "semicircle",
            "--cloud",
            "c.txt",
            "--eps",
            "0.3",
            "--mesh-h",
            "0.01",
        ],
        dir.path(),
    );
    assert_eq!(wrong_dim.status.code(), Some(1));
}

#[test]
fn criteria_example_matches_hand_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = btda(
        &[
            "criteria",
            "--manifold",
            "semicircle",
            "--example",
            "--eps",
            "0.48",
            "--mesh-h",
            "1e-5",
            "--format",
            "csv",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let get = |k: &str| row[header.iter().position(|h| *h == k).unwrap()];
    let d: f64 = get("d_h").parse().unwrap();
    assert!((d - 2.0 * (std::f64::consts::PI / 28.0).sin()).abs() < 1e-6);
    assert_eq!(get("ours"), "true");
    assert_eq!(get("chazal"), "false");
    assert_eq!(get("attali_cech"), "false");
}

#[test]
fn pipeline_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let o = btda(
        &[
            "pipeline",
            "--manifold",
            "semicircle",
            "--eps",
            "0.45",
            "--gamma",
            "0.1",
            "--seed",
            "2",
            "--out-dir",
            "run",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in [
        "cloud.txt",
        "density.txt",
        "barcode.csv",
        "barcode.svg",
        "summary.txt",
    ] {
        assert!(dir.path().join("run").join(f).is_file(), "{f}");
    }
    assert_eq!(field(&stdout(&o), "passed"), "true");

    let o = btda(
        &[
            "pipeline",
            "--manifold",
            "cylinder",
            "--eps",
            "0.49",
            "--gamma",
            "0.1",
            "--n",
            "10",
            "--out-dir",
            "small",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(dir.path().join("small/summary.txt").is_file());
}
