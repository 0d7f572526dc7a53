//! End-to-end checks of the `bgft` binary: flag handling, file layout,
//! header contracts, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bgft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

#[test]
fn table1_writes_metrics_with_the_exact_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = bgft(&[
        "table1",
        "--graph",
        "cycle",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(dir.path(), "metrics.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("graph,kappa_v,henrici,alpha,delta"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("cycle,"));
    assert_eq!(lines.next(), None);
}

#[test]
fn each_subcommand_writes_its_own_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    for (cmd, file, header) in [
        ("spectra", "spectra.csv", "graph,k,re_lambda,im_lambda"),
        (
            "denoise",
            "denoise.csv",
            "graph,level,trial,rel_error,kappa_v",
        ),
        (
            "sample",
            "sample.csv",
            "graph,trial,m,gamma,vnorm,eta_norm,rel_error,bound,skipped",
        ),
    ] {
        let out = bgft(&[
            cmd, "--n", "8", "--k", "3", "--seed", "11", "--trials", "4", "--out", out_dir,
        ]);
        assert!(
            out.status.success(),
            "{cmd} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let csv = read(dir.path(), file);
        assert_eq!(csv.lines().next(), Some(header), "{cmd} header");
    }
}

#[test]
fn missing_seed_is_a_one_line_diagnostic_with_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let out = bgft(&["denoise", "--out", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "stderr: {stderr}");
    assert!(stderr.contains("--seed"));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = bgft(&["table1", "--frobnicate"]);
    assert!(!out.status.success());
}

#[test]
fn graph_file_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("tri.txt");
    fs::write(&edges, "# triangle\nn 3\n0 1 1.0\n1 2 1.0\n2 0 1.0\n").unwrap();
    let out = bgft(&[
        "spectra",
        "--graph",
        "file",
        "--edges",
        edges.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(dir.path(), "spectra.csv");
    // A 3-cycle has exactly three eigenvalues, labeled by the file family.
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().nth(1).unwrap().starts_with("file,0,"));
}

#[test]
fn malformed_edge_files_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("bad.txt");
    fs::write(&edges, "n 3\n0 1\n").unwrap();
    let out = bgft(&[
        "table1",
        "--graph",
        "file",
        "--edges",
        edges.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "stderr: {stderr}");
}

#[test]
fn reruns_with_identical_flags_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let flags = [
        "sample", "--n", "10", "--k", "3", "--seed", "99", "--trials", "6", "--levels", "0.05,0.2",
    ];
    for dir in [&a, &b] {
        let out = bgft(&[&flags[..], &["--out", dir.path().to_str().unwrap()]].concat());
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert_eq!(
        fs::read(a.path().join("sample.csv")).unwrap(),
        fs::read(b.path().join("sample.csv")).unwrap()
    );
}
