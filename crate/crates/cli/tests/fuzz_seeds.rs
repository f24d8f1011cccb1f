//! Replays the checked-in fuzz seed corpora through the same parsers the fuzz
//! targets exercise, so the seeds stay meaningful on stable toolchains.

use std::path::{Path, PathBuf};

use dualcheck::arith::Cyclotomic;
use dualcheck_cli::{parse_group_text, parse_line, Report, SuiteConfig};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(out.len() >= 3, "{target}: too few seeds");
    out
}

#[test]
fn group_file_seeds() {
    let mut ok = 0;
    for (_, text) in seeds("group_file") {
        if let Ok(g) = parse_group_text("seed", &text) {
            ok += 1;
            assert_eq!(parse_group_text("seed", &g.to_table_text()).unwrap().table_rows(), g.table_rows());
        }
    }
    assert!(ok >= 2);
}

#[test]
fn report_line_seeds() {
    let mut reports = 0;
    for (path, text) in seeds("report_line") {
        if let Ok(line) = parse_line(&text) {
            assert_eq!(parse_line(&serde_json::to_string(&line).unwrap()).unwrap(), line, "{path:?}");
        }
        if let Ok(r) = Report::parse_structured(&text) {
            reports += 1;
            assert_eq!(Report::parse_structured(&r.to_structured()).unwrap(), r);
        }
    }
    assert!(reports >= 1);
}

#[test]
fn cyclotomic_literal_seeds() {
    let mut ok = 0;
    for (_, text) in seeds("cyclotomic_literal") {
        if let Ok(c) = text.parse::<Cyclotomic>() {
            ok += 1;
            assert_eq!(c.to_literal().parse::<Cyclotomic>().unwrap(), c);
        }
    }
    assert!(ok >= 3);
}

#[test]
fn config_seeds() {
    let mut ok = 0;
    for (_, text) in seeds("config") {
        if let Ok(cfg) = SuiteConfig::from_toml(&text) {
            ok += 1;
            assert_eq!(SuiteConfig::from_toml(&toml::to_string(&cfg).unwrap()).unwrap(), cfg);
        }
    }
    assert!(ok >= 2);
}

mod random_inputs {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn group_text(text in "(# x\n)?order [0-4]\n([0-4]( [0-4]){0,4}\n){0,5}") {
            if let Ok(g) = parse_group_text("r", &text) {
                prop_assert_eq!(parse_group_text("r", &g.to_table_text()).unwrap().table_rows(), g.table_rows());
            }
        }

        #[test]
        fn literal(text in "[0-9]{1,2}:\\[(-?[0-9]{1,3}(/-?[0-9])?,){0,7}-?[0-9]{1,2}\\]") {
            if let Ok(c) = text.parse::<Cyclotomic>() {
                prop_assert_eq!(c.to_literal().parse::<Cyclotomic>().unwrap(), c);
            }
        }

        #[test]
        fn any_text(text in "\\PC{0,80}") {
            let _ = parse_group_text("r", &text);
            let _ = text.parse::<Cyclotomic>();
            let _ = parse_line(&text);
            let _ = Report::parse_structured(&text);
            let _ = SuiteConfig::from_toml(&text);
        }

        #[test]
        fn config_text(level in 0u32..5, primes in prop::collection::vec(-3i64..20, 0..4), seed in any::<u64>()) {
            let text = format!("level = {level}\nprimes = {primes:?}\nseed = {seed}\n");
            if let Ok(cfg) = SuiteConfig::from_toml(&text) {
                prop_assert_eq!(SuiteConfig::from_toml(&toml::to_string(&cfg).unwrap()).unwrap(), cfg);
            }
        }
    }
}
