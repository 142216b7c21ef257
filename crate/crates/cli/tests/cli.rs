use std::path::Path;
use std::process::{Command, Output};

use quatinv::io::{read_csv, read_qmat, write_qmat};
use quatinv::{QuatMatrix, Quaternion};

fn quatinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatinv")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(quatinv(&["--help"]).status.code(), Some(0));
    assert_eq!(quatinv(&["bench", "--help"]).status.code(), Some(0));
    assert_eq!(quatinv(&[]).status.code(), Some(1));
    assert_eq!(quatinv(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(quatinv(&["bench", "--sizes", "0"]).status.code(), Some(1));
    assert_eq!(quatinv(&["bench", "--sizes", "5..1"]).status.code(), Some(1));
    assert_eq!(quatinv(&["bench", "--algs", "7"]).status.code(), Some(1));
    assert_eq!(quatinv(&["bench", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(quatinv(&["invert", "--n", "3", "--alg", "9"]).status.code(), Some(1));
}

#[test]
fn gen_then_invert_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("eye.qmat");
    let output = dir.path().join("inv.qmat");
    let g = quatinv(&["gen", "-n", "4", "--pattern", "identity", "--out", path(&input)]);
    assert!(g.status.success());
    let r = quatinv(&["invert", path(&input), "--alg", "2", "--out", path(&output)]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let line = String::from_utf8(r.stdout).unwrap();
    assert!(line.contains("residual=0.000e0"), "{line}");
    assert_eq!(read_qmat(&output).unwrap().max_abs_diff(&QuatMatrix::identity(4)), 0.0);
}

#[test]
fn j_identity_reports_the_second_branch() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("j.qmat");
    let output = dir.path().join("inv.qmat");
    assert!(quatinv(&["gen", "-n", "3", "--pattern", "j", "--out", path(&input)]).status.success());
    let r = quatinv(&["invert", path(&input), "--alg", "1", "--out", path(&output)]);
    assert!(r.status.success());
    assert!(String::from_utf8(r.stdout).unwrap().contains("branch=E2"));
    let inv = read_qmat(&output).unwrap();
    assert!(inv.max_abs_diff(&QuatMatrix::scalar_identity(3, -Quaternion::J)) <= 1e-15);
}

#[test]
fn all_algorithms_agree_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("z.qmat");
    assert!(quatinv(&["gen", "-n", "24", "--seed", "5", "--out", path(&input)]).status.success());
    let mut inverses = Vec::new();
    for alg in 1..=6 {
        let out = dir.path().join(format!("inv{alg}.qmat"));
        let r = quatinv(&["invert", path(&input), "--alg", &alg.to_string(), "--out", path(&out)]);
        assert!(r.status.success(), "alg {alg}");
        inverses.push(read_qmat(&out).unwrap());
    }
    for x in &inverses {
        for y in &inverses {
            assert!(x.max_abs_diff(y) <= 1e-10);
        }
    }
}

#[test]
fn numerical_and_io_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.qmat");
    write_qmat(&zero, &QuatMatrix::zeros(3, 3)).unwrap();
    for alg in ["1", "2", "3", "4", "5", "6"] {
        let r = quatinv(&["invert", path(&zero), "--alg", alg]);
        assert_eq!(r.status.code(), Some(2), "alg {alg}");
    }
    let r = quatinv(&["invert", path(&zero), "--alg", "2"]);
    assert!(String::from_utf8(r.stderr).unwrap().contains("hint"));

    let missing = dir.path().join("missing.qmat");
    assert_eq!(quatinv(&["invert", path(&missing)]).status.code(), Some(3));
    let garbage = dir.path().join("garbage.qmat");
    std::fs::write(&garbage, b"QMH2\0\0\0\0\0\0\0\0").unwrap();
    assert_eq!(quatinv(&["invert", path(&garbage)]).status.code(), Some(3));
    let bad_csv = dir.path().join("bad.csv");
    std::fs::write(&bad_csv, "a,b\n").unwrap();
    assert_eq!(quatinv(&["plot", path(&bad_csv), "--out", path(dir.path())]).status.code(), Some(3));
}

#[test]
fn bench_writes_csv_rows_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("one.csv");
    let r = quatinv(&["bench", "--sizes", "2", "--trials", "1", "--algs", "2", "--out", path(&csv)]);
    assert!(r.status.success());
    assert_eq!(read_csv(std::fs::File::open(&csv).unwrap()).unwrap().len(), 1);

    let plots = dir.path().join("plots");
    let r = quatinv(&["plot", path(&csv), "--out", path(&plots)]);
    assert!(r.status.success());
    for name in ["time.svg", "ratio.svg", "residual.svg"] {
        assert!(std::fs::metadata(plots.join(name)).unwrap().len() > 0);
    }

    let full = dir.path().join("full.csv");
    let r = quatinv(&["bench", "--sizes", "3,5", "--trials", "2", "--count-flops", "--no-warmup", "--out", path(&full)]);
    assert!(r.status.success());
    let rows = read_csv(std::fs::File::open(&full).unwrap()).unwrap();
    assert_eq!(rows.len(), 2 * 2 * 6);
    assert!(rows.iter().all(|r| r.flops.total() > 0 && !r.is_failure()));
    let summary = String::from_utf8(r.stdout).unwrap();
    assert_eq!(summary.lines().count(), 1 + 2 * 6);
}

#[test]
fn bench_to_stdout_is_reproducible() {
    let args = ["bench", "--sizes", "4", "--trials", "2", "--algs", "1,6", "--seed", "3", "--count-flops"];
    let strip_times = |o: Output| -> Vec<String> {
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(4);
                f.join(",")
            })
            .collect()
    };
    let a = strip_times(quatinv(&args));
    let b = strip_times(quatinv(&args));
    assert_eq!(a.len(), 1 + 4);
    assert_eq!(a, b);
}

#[test]
fn verify_passes() {
    let r = quatinv(&["verify", "--trials", "3"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stdout));
    assert!(String::from_utf8(r.stdout).unwrap().lines().all(|l| l.starts_with("PASS")));
}
