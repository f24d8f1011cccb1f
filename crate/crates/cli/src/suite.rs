use std::collections::BTreeMap;
use std::sync::Arc;
use std::thread;

use dualcheck::arith::Cyclotomic;
use dualcheck::forms::{verify_prop_main, Finding};
use dualcheck::group::{battery, index_two_pairs, FiniteGroup, IndexTwoPair};
use dualcheck::local::{
    epsilon_suite, generate_corpus, ggp_suite, GgpOutcome, Identity, LocalSetup, TermPools,
};
use dualcheck::rep::{clifford_suite, irreducibles, Representation};
use thiserror::Error;

use crate::config::{ConfigError, Suite, SuiteConfig};
use crate::groupfile::{parse_group_file, GroupFileError};
use crate::report::{Record, Report};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Group { path: String, source: GroupFileError },
}

type Counts = BTreeMap<String, u64>;

#[derive(Default)]
struct Part {
    records: Vec<Record>,
    counts: Counts,
    ggp: Vec<(i64, bool, bool)>,
}

impl Part {
    fn count(&mut self, key: &str, n: usize) {
        *self.counts.entry(key.to_string()).or_default() += n as u64;
    }

    fn error(&mut self, id: String, anchor: &str, e: impl std::fmt::Display) {
        // re-running the named module reproduces the error
        self.records.push(Record::new(id, anchor, false).detail("module error").certificate(vec![vec![e.to_string()]]));
    }

    fn merge(&mut self, other: Part) {
        self.records.extend(other.records);
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.ggp.extend(other.ggp);
    }
}

/// Validates the config and loads group files, then runs the selected suites.
/// Groups and primes are independent tasks run on their own threads; records
/// are sorted by id afterwards, so the report does not depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, RunError> {
    cfg.validate()?;
    let mut groups: Vec<Arc<FiniteGroup>> = if cfg.no_battery { vec![] } else { battery() };
    for path in &cfg.groups {
        let g = parse_group_file(path).map_err(|source| RunError::Group { path: path.display().to_string(), source })?;
        groups.push(Arc::new(g));
    }
    let group_suites = cfg.runs(Suite::Clifford) || cfg.runs(Suite::PropMain);
    let local_suites = cfg.runs(Suite::Epsilon) || cfg.runs(Suite::Serre) || cfg.runs(Suite::Ptb);

    let mut total = Part::default();
    thread::scope(|scope| {
        let mut handles = vec![];
        if group_suites {
            for g in &groups {
                handles.push(scope.spawn(move || group_part(cfg, g)));
            }
        }
        if local_suites {
            for &p in &cfg.primes {
                handles.push(scope.spawn(move || local_part(cfg, p)));
            }
        }
        for h in handles {
            total.merge(h.join().expect("suite task panicked"));
        }
    });
    Ok(Report::finish(header(cfg, &total.ggp), total.records, total.counts))
}

fn header(cfg: &SuiteConfig, ggp: &[(i64, bool, bool)]) -> BTreeMap<String, String> {
    let mut h = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        h.insert(k.to_string(), v);
    };
    put("suites", cfg.suites.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(","));
    put("seed", cfg.seed.to_string());
    if cfg.runs(Suite::Clifford) || cfg.runs(Suite::PropMain) {
        let s = if cfg.alt_s { "least and greatest element of G-H" } else { "least element of G-H" };
        put("coset_representative", s.into());
        put("hyperbolic", "reducible Ind(phi) = Phi + Phi^v carries forms of both signs; logged, not failed".into());
    }
    if cfg.runs(Suite::Epsilon) || cfg.runs(Suite::Serre) || cfg.runs(Suite::Ptb) {
        put("primes", cfg.primes.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
        put("level", cfg.level.to_string());
        put("additive_character", "psi(x) = psi0(Tr(c x)), psi0(r) = exp(2 pi i {r}_p), d(psi) least d with psi trivial on P^d".into());
        put(
            "epsilon",
            "ramified chi: q^(-a/2) sum over u in (O/P^a)^x of chi^(-1)(u g) psi(u g), g = pi^(d(psi)-a); unramified chi: chi(pi)^(-d(psi))".into(),
        );
        put("conductor_transfer", "d(psi_E) = d(psi) for E unramified, 2 d(psi) - 1 for E ramified".into());
        put("pi_values", "characters take fourth roots of unity at the uniformizer".into());
    }
    if !ggp.is_empty() {
        let a = ggp.iter().all(|g| g.1);
        let b = ggp.iter().all(|g| g.2);
        let reading = match (a, b) {
            (true, true) => "A and B both consistent",
            (true, false) => "A",
            (false, true) => "B",
            (false, false) => "neither",
        };
        put(
            "trace_zero_reading",
            format!("{reading} (A: eps(mu, psi_E) = mu(delta); B: eps(mu, psi_E(-delta x)) = 1; delta = sqrt(D))"),
        );
    }
    h
}

fn findings_certificate(fs: &[&Finding]) -> Vec<Vec<String>> {
    fs.iter().flat_map(|f| f.certificate.iter().flat_map(|m| m.iter().cloned())).collect()
}

fn group_part(cfg: &SuiteConfig, g: &Arc<FiniteGroup>) -> Part {
    let mut part = Part::default();
    let irr_g = match irreducibles(g) {
        Ok(v) => v,
        Err(e) => {
            part.error(format!("group.{}.irreducibles", g.name()), "inventory", e);
            return part;
        }
    };
    for base in index_two_pairs(g) {
        let mut pairs = vec![base.clone()];
        if cfg.alt_s && base.with_alt_s().s() != base.s() {
            pairs.push(base.with_alt_s());
        }
        let irr_h = match irreducibles(base.h()) {
            Ok(v) => v,
            Err(e) => {
                part.error(format!("group.{}.irreducibles", base.label()), "inventory", e);
                continue;
            }
        };
        part.count("index_two_pairs", 1);
        part.count("irreducibles", irr_h.len() + irr_g.len());
        for pair in &pairs {
            if cfg.runs(Suite::Clifford) {
                clifford_records(&mut part, pair, &irr_h, &irr_g);
            }
            if cfg.runs(Suite::PropMain) {
                prop_main_records(&mut part, pair, &irr_h, &irr_g);
            }
        }
    }
    part
}

fn pair_id(pair: &IndexTwoPair) -> String {
    format!("{}.s{}", pair.label(), pair.s())
}

fn clifford_records(part: &mut Part, pair: &IndexTwoPair, irr_h: &[Representation], irr_g: &[Representation]) {
    let tag = format!("clifford.{}", pair_id(pair));
    let r = match clifford_suite(pair, irr_h, irr_g) {
        Ok(r) => r,
        Err(e) => return part.error(tag, "clifford", e),
    };
    part.count("clifford_checks", r.checks);
    part.count("clifford_extensions", r.extensions);
    part.records.push(Record::new(&tag, "clifford", r.violations.is_empty()).detail(format!(
        "{} checks, {}+{} irreducibles, {} extensions",
        r.checks, r.h_irreducibles, r.g_irreducibles, r.extensions
    )));
    for (i, v) in r.violations.iter().enumerate() {
        part.records.push(
            Record::new(format!("{tag}.v{i:03}"), "clifford", false)
                .detail(format!("{} {}: {}", v.check, v.subject, v.detail))
                .certificate(v.certificate.clone()),
        );
    }
}

fn prop_main_records(part: &mut Part, pair: &IndexTwoPair, irr_h: &[Representation], irr_g: &[Representation]) {
    let tag = format!("prop-main.{}", pair_id(pair));
    let r = match verify_prop_main(pair, irr_h, irr_g) {
        Ok(r) => r,
        Err(e) => return part.error(tag, "prop-main", e),
    };
    part.count("prop_main_checks", r.checks);
    part.count("hyperbolic_cases", r.hyperbolic.len());
    let about = |label: &str| -> Vec<&Finding> { r.violations.iter().filter(|f| f.subject == label).collect() };
    for (i, h) in r.h_records.iter().enumerate() {
        let bad = about(&h.label);
        let ind = if h.ind_irreducible { "irreducible" } else { "reducible" };
        let detail = format!(
            "{} deg {}: {}, {}, {}; Ind {ind} {}",
            h.label,
            h.degree,
            h.self_dual,
            h.conj_dual,
            if h.stable { "stable" } else { "not stable" },
            h.ind_self_dual
        );
        part.records.push(Record::new(format!("{tag}.h{i:02}"), "prop-main", bad.is_empty()).detail(detail).certificate(findings_certificate(&bad)));
    }
    for (i, g) in r.g_records.iter().enumerate() {
        let bad = about(&g.label);
        let res = if g.res_irreducible { "irreducible" } else { "reducible" };
        let detail = format!("{} deg {}: {}; Res {res} {}, {}", g.label, g.degree, g.self_dual, g.res_self_dual, g.res_conj_dual);
        part.records.push(Record::new(format!("{tag}.g{i:02}"), "prop-main", bad.is_empty()).detail(detail).certificate(findings_certificate(&bad)));
    }
    for (i, v) in r.violations.iter().enumerate() {
        part.records.push(
            Record::new(format!("{tag}.v{i:03}"), v.part, false)
                .detail(format!("{}: {}", v.subject, v.detail))
                .certificate(findings_certificate(&[v])),
        );
    }
    for (i, v) in r.hyperbolic.iter().enumerate() {
        part.records.push(
            Record::logged(format!("{tag}.hyperbolic{i:02}"), v.part)
                .detail(format!("{}: {}", v.subject, v.detail))
                .certificate(findings_certificate(&[v])),
        );
    }
    part.count("prop_main_violations", r.violations.len());
}

fn literal(c: &Cyclotomic) -> Vec<String> {
    vec![c.to_literal()]
}

fn identity_record(id: String, i: &Identity) -> Record {
    if !i.asserted {
        let verdict = if i.holds() { "holds" } else { "differs" };
        return Record::logged(id, i.anchor).detail(verdict).certificate(vec![literal(&i.lhs), literal(&i.rhs)]);
    }
    let r = Record::new(id, i.anchor, i.holds());
    if i.holds() {
        r
    } else {
        r.detail("lhs != rhs").certificate(vec![literal(&i.lhs), literal(&i.rhs)])
    }
}

fn local_part(cfg: &SuiteConfig, p: i64) -> Part {
    let mut part = Part::default();
    let s = match LocalSetup::new(p, cfg.level) {
        Ok(s) => s,
        Err(e) => {
            part.error(format!("local.p{p}.setup"), "setup", e);
            return part;
        }
    };
    if cfg.runs(Suite::Epsilon) {
        if let Err(e) = epsilon_records(&mut part, cfg, &s) {
            part.error(format!("eps.p{p}.error"), "epsilon", e);
        }
    }
    if cfg.runs(Suite::Serre) || cfg.runs(Suite::Ptb) {
        if let Err(e) = parity_records(&mut part, cfg, &s) {
            part.error(format!("parity.p{p}.error"), "parity", e);
        }
    }
    part
}

/// Asserted identities become one record each; the rest are folded into one
/// logged record per anchor, whose certificate lists the ids that differ.
fn push_identities(part: &mut Part, prefix: &str, ids: &[Identity]) {
    let mut unasserted: BTreeMap<&str, Vec<&Identity>> = BTreeMap::new();
    for i in ids {
        if i.asserted {
            part.records.push(identity_record(i.id.clone(), i));
        } else {
            unasserted.entry(i.anchor).or_default().push(i);
        }
    }
    for (anchor, list) in unasserted {
        let differ: Vec<Vec<String>> = list.iter().filter(|i| !i.holds()).map(|i| vec![i.id.clone()]).collect();
        let held = list.len() - differ.len();
        part.records.push(
            Record::logged(format!("{prefix}.{anchor}"), anchor)
                .detail(format!("{held} of {} hold", list.len()))
                .certificate(differ),
        );
    }
}

fn epsilon_records(part: &mut Part, cfg: &SuiteConfig, s: &LocalSetup) -> Result<(), dualcheck::local::LocalError> {
    let p = s.p();
    let ids = epsilon_suite(s)?;
    part.count("epsilon_identities", ids.iter().filter(|i| i.asserted).count());
    push_identities(part, &format!("eps.p{p}"), &ids);
    if cfg.ggp_primes.contains(&p) {
        let GgpOutcome { identities, characters, reading_a, reading_b } = ggp_suite(s)?;
        part.count("ggp_characters", characters);
        part.count("ggp_identities", identities.iter().filter(|i| i.asserted).count());
        part.ggp.push((p, reading_a, reading_b));
        push_identities(part, &format!("ggp.p{p}"), &identities);
    }
    Ok(())
}

/// Core ids are tagged by representation label, which can repeat in a random
/// corpus; the corpus index replaces it.
fn reindex(id: &str, prefix: &str, tag: &str) -> String {
    match id.strip_prefix(prefix) {
        Some(rest) => format!("{tag}{rest}"),
        None => format!("{tag}.{id}"),
    }
}

fn parity_records(part: &mut Part, cfg: &SuiteConfig, s: &LocalSetup) -> Result<(), dualcheck::local::LocalError> {
    let p = s.p();
    let pools = TermPools::new(s)?;
    let seed = cfg.seed ^ (p as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let n_orth = if cfg.runs(Suite::Serre) { cfg.serre_corpus } else { 0 };
    let (n_symp, n_sums) = if cfg.runs(Suite::Ptb) { (cfg.ptb_corpus, cfg.direct_sums) } else { (0, 0) };
    let corpus = generate_corpus(&pools, seed, n_orth, n_symp, n_sums);

    for (n, phi) in corpus.orthogonal.iter().enumerate() {
        let r = s.serre_parity_check(phi)?;
        let prefix = format!("serre.p{p}.{}", r.label);
        let tag = format!("serre.p{p}.n{n:03}");
        part.count("serre_representations", 1);
        part.count("serre_compositum", usize::from(r.compositum));
        part.records.push(
            Record::new(format!("{tag}.parity"), "serre-parity", r.parity_holds())
                .detail(format!("{}: a = {}, a(det) = {}", r.label, r.conductor, r.det_conductor)),
        );
        for i in std::iter::once(&r.identity).chain(&r.chain) {
            part.records.push(identity_record(reindex(&i.id, &prefix, &tag), i));
        }
    }
    let (mut plus, mut minus) = (0, 0);
    for (n, phi) in corpus.symplectic.iter().enumerate() {
        let r = s.ptb_consistency_check(phi)?;
        let prefix = format!("ptb.p{p}.{}", r.label);
        let tag = format!("ptb.p{p}.n{n:03}");
        part.count("ptb_representations", 1);
        match r.sign() {
            Some(1) => plus += 1,
            Some(-1) => minus += 1,
            _ => {}
        }
        for i in std::iter::once(&r.identity).chain(&r.chain) {
            part.records.push(identity_record(reindex(&i.id, &prefix, &tag), i));
        }
    }
    if cfg.runs(Suite::Ptb) {
        part.count("ptb_sign_plus", plus);
        part.count("ptb_sign_minus", minus);
        part.records.push(Record::logged(format!("ptb.p{p}.signs"), "ptb").detail(format!("+1: {plus}, -1: {minus}")));
    }
    for (n, sum) in corpus.sums.iter().enumerate() {
        let r = s.direct_sum_parity(sum)?;
        part.count("direct_sums", 1);
        let signs: Vec<String> = r.signs.iter().map(i32::to_string).collect();
        part.records.push(
            Record::new(format!("ptb.p{p}.sum{n:03}"), "direct-sum", r.holds())
                .detail(format!("a = {}, signs [{}]", r.conductor, signs.join(", "))),
        );
    }
    Ok(())
}
