use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use dualcheck::group::{battery, index_two_pairs};
use dualcheck::rep::irreducibles;
use dualcheck_cli::{parse_group_file, parse_group_text, run_suite, GroupFileError, Report, RunError, Status, Suite, SuiteConfig};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn test_data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn small(suites: &[Suite]) -> SuiteConfig {
    SuiteConfig {
        suites: suites.to_vec(),
        primes: vec![3],
        serre_corpus: 20,
        ptb_corpus: 20,
        direct_sums: 10,
        ..SuiteConfig::default()
    }
}

fn dualcheck(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_dualcheck")).args(args).output().unwrap()
}

#[test]
fn bundled_group_files() {
    let q8 = Arc::new(parse_group_file(&data("q8.grp")).unwrap());
    assert_eq!(q8.order(), 8);
    assert_eq!(index_two_pairs(&q8).len(), 3);
    let s3 = Arc::new(parse_group_file(&data("s3.grp")).unwrap());
    assert_eq!(s3.order(), 6);
    assert_eq!(index_two_pairs(&s3).len(), 1);
    let names = ["c4", "q8", "d4", "s3", "d6", "sd16", "s4"];
    for (g, name) in battery().iter().zip(names) {
        let from_file = parse_group_file(&data(&format!("{name}.grp"))).unwrap();
        assert_eq!(from_file.table_rows(), g.table_rows(), "{name}");
    }
}

#[test]
fn malformed_files_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.grp");
    std::fs::write(&path, "# two rows\norder 2\n0 1\n1 0 1\n").unwrap();
    match parse_group_file(&path) {
        Err(GroupFileError::Parse { line: 4, msg }) => assert!(msg.contains("3 entries"), "{msg}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_group_text("x", "order 3\n0 1 2\n1 2 x\n"), Err(GroupFileError::Parse { line: 3, .. })));
}

#[test]
fn corrupted_group_is_a_config_error_with_witness() {
    let mut text = std::fs::read_to_string(data("s3.grp")).unwrap();
    // swap two entries of row 2, which keeps it a Latin square but breaks associativity
    text = text.replace("2 4 5 1 3 0", "2 4 5 3 1 0");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.grp");
    std::fs::write(&path, &text).unwrap();
    let cfg = SuiteConfig { groups: vec![path.clone()], ..small(&[Suite::Clifford]) };
    let err = run_suite(&cfg).unwrap_err();
    assert!(matches!(err, RunError::Group { .. }));
    let msg = err.to_string();
    assert!(msg.contains('*'), "{msg}");

    let out = dualcheck(&["verify", "clifford", "--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn single_suite_selection() {
    let r = run_suite(&small(&[Suite::Serre])).unwrap();
    assert!(!r.records.is_empty());
    assert!(r.records.iter().all(|rec| rec.id.starts_with("serre.")));
    assert!(r.passed());
}

#[test]
fn structured_round_trip_and_determinism() {
    let cfg = small(&[Suite::Clifford, Suite::Epsilon, Suite::Ptb]);
    let a = run_suite(&cfg).unwrap().to_structured();
    let b = run_suite(&cfg).unwrap().to_structured();
    assert_eq!(a, b);
    let back = Report::parse_structured(&a).unwrap();
    assert_eq!(back.to_structured(), a);
    assert!(back.summary.counts["epsilon_identities"] > 0);
}

#[test]
fn records_are_sorted_and_unique() {
    let r = run_suite(&small(&Suite::ALL)).unwrap();
    assert!(r.records.windows(2).all(|w| w[0].id < w[1].id));
}

#[test]
fn binary_exit_codes() {
    let out = dualcheck(&["verify", "epsilon", "--p", "3", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::parse_structured(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(report.passed());

    let out = dualcheck(&["verify", "epsilon", "--p", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an odd prime"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "primes = [5]\nserre_corpus = 5\nptb_corpus = 5\ndirect_sums = 2\nsuites = [\"ptb\"]\n").unwrap();
    let out = dualcheck(&["all", "--config", cfg.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"ptb.p5.sum001\""));
    assert!(!text.contains("\"serre."));
}

#[test]
fn forced_failure_carries_a_reproducible_certificate() {
    // SL(2,3) has irreducibles that are not monomial, which the inventory
    // does not build
    let path = test_data("sl23.grp");
    let out = dualcheck(&["verify", "prop-main", "--no-battery", "--group", path.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(out.status.code(), Some(1));
    let report = Report::parse_structured(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let failed: Vec<_> = report.records.iter().filter(|r| r.status == Status::Fail).collect();
    assert_eq!(failed.len(), 1);
    assert!(!failed[0].certificate.is_empty());
    let g = Arc::new(parse_group_file(&path).unwrap());
    let err = irreducibles(&g).unwrap_err();
    assert_eq!(failed[0].certificate[0][0], err.to_string());
}

#[test]
fn alternate_coset_representative() {
    let cfg = SuiteConfig { alt_s: true, ..small(&[Suite::Clifford, Suite::PropMain]) };
    let r = run_suite(&cfg).unwrap();
    assert!(r.passed());
    let plain = run_suite(&small(&[Suite::Clifford])).unwrap();
    let n = |r: &Report| r.records.iter().filter(|x| x.id.starts_with("clifford.") && x.id.matches('.').count() == 2).count();
    assert!(n(&r) > n(&plain));
}
