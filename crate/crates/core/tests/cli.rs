//! Runs the binary and compares reports with the files in `golden/`.
//! Set `MATCHTOP_BLESS=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use matchtop::cli::Report;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchtop"))
        .args(args)
        .current_dir(dir())
        .env_remove("MATCHTOP_THREADS")
        .output()
        .expect("binary runs")
}

fn golden(name: &str, actual: &str) {
    let path = dir().join("golden").join(name);
    if std::env::var_os("MATCHTOP_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from golden file");
}

fn json_report(args: &[&str], code: i32) -> (String, Report) {
    let mut full = vec!["--json", "--no-timings"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text, "report does not round-trip");
    (text, report)
}

#[test]
fn analyze_reports() {
    let (text, r) = json_report(&["analyze", "data/c7.edges"], 0);
    golden("analyze_c7.json", &text);
    let matchtop::cli::Payload::Analysis(a) = r.payload else { panic!() };
    assert_eq!((a.dim, a.f_vector, a.homology.betti), (2, vec![7, 14, 7], vec![0, 1, 0]));

    let (_, r) = json_report(&["analyze", "data/c4.edges"], 0);
    let matchtop::cli::Payload::Analysis(a) = r.payload else { panic!() };
    assert_eq!((a.dim, a.complex_components), (1, 2));

    let out = run(&["analyze", "data/s5.edges"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("dim M(G): 0\n"));
}

#[test]
fn classify_reports() {
    let (text, r) = json_report(&["classify", "data/bowtie.edges"], 0);
    golden("classify_bowtie.json", &text);
    let matchtop::cli::Payload::Classification(c) = r.payload else { panic!() };
    assert_eq!((c.result.dim, c.result.cm), (1, true));

    let (text, r) = json_report(&["classify", "data/e2.edges"], 0);
    golden("classify_e2.json", &text);
    let matchtop::cli::Payload::Classification(c) = r.payload else { panic!() };
    assert_eq!((c.result.dim, c.result.buchsbaum), (2, true));
    assert_eq!(c.result.families, vec![matchtop::classify::FamilyId::E2]);

    let (text, r) = json_report(&["classify", "data/c7_bad_chord.edges"], 0);
    golden("classify_c7_bad_chord.json", &text);
    let matchtop::cli::Payload::Classification(c) = r.payload else { panic!() };
    assert!(!c.result.buchsbaum && c.certificate_verified);
    assert!(matches!(c.result.certificate, matchtop::classify::Certificate::FailingEdge { .. }));

    let (_, r) = json_report(&["classify", "--format", "graph6", "data/petal.g6"], 0);
    assert_eq!(r.input.unwrap().format, matchtop::io::Format::Graph6);
}

#[test]
fn text_and_export_output() {
    let out = run(&["--no-timings", "classify", "data/c7.edges"]);
    golden("classify_c7.txt", &String::from_utf8(out.stdout).unwrap());
    let out = run(&["export", "data/c4.edges", "--what", "facets"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0-1,2-3\n0-3,1-2\n");
    let out = run(&["export", "data/bowtie.edges", "--what", "skeleton-dot"]);
    golden("bowtie_skeleton.dot", &String::from_utf8(out.stdout).unwrap());
    let out = run(&["export", "data/c4.edges", "--what", "graph-dot"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("graph G {"));
}

#[test]
fn scan_writes_table_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("table.csv");
    let out = run(&["scan-c7", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), written);
    golden("scan_c7.csv", &written);
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "exhaustive", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let (text, r) = json_report(&["verify", "random", "--n", "9", "--count", "1000", "--seed", "7"], 0);
    golden("verify_random_n9.json", &text);
    let (again, _) = json_report(&["--threads", "1", "verify", "random", "--n", "9", "--count", "1000", "--seed", "7"], 0);
    assert_eq!(text, again);
    let matchtop::cli::Payload::Enumeration(e) = r.payload else { panic!() };
    assert_eq!(e.seed, Some(7));
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.edges");
    std::fs::write(&bad, "0 1\n1 2 3\n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2, column 5"));

    let missing = run(&["classify", "no-such-file"]);
    assert_eq!(missing.status.code(), Some(2));

    let big = tmp.path().join("k10.edges");
    let edges: String = (0..10).flat_map(|a| (a + 1..10).map(move |b| format!("{a} {b}\n"))).collect();
    std::fs::write(&big, edges).unwrap();
    assert_eq!(run(&["analyze", big.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["classify", big.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["verify", "exhaustive", "--max-n", "8"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "random", "--n", "13", "--count", "1", "--seed", "1"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_matchtop"))
        .args(["--json", "--no-timings", "verify", "random", "--n", "8", "--count", "200", "--seed", "1"])
        .env("MATCHTOP_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let other = run(&["--json", "--no-timings", "verify", "random", "--n", "8", "--count", "200", "--seed", "1"]);
    assert_eq!(out.stdout, other.stdout);
}
