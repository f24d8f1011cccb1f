use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and reported but not part of the verdict.
    Logged,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Logged => "LOG ",
        }
    }
}

/// One check. Failing records carry a certificate: Gram matrix rows, character
/// values or the two sides of an identity as cyclotomic literals, or the error
/// a module returned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<Vec<String>>,
}

impl Record {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Record { id: id.into(), anchor: anchor.into(), status, detail: String::new(), certificate: vec![] }
    }

    pub fn logged(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Record { status: Status::Logged, ..Record::new(id, anchor, true) }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn certificate(mut self, c: Vec<Vec<String>>) -> Self {
        self.certificate = c;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub logged: usize,
    /// Named tallies such as `index_two_pairs` or `epsilon_identities`.
    pub counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    /// Normalization conventions in force, keyed by topic.
    pub header: BTreeMap<String, String>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Line {
    Header { conventions: BTreeMap<String, String> },
    Record(Record),
    Summary(Summary),
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {0}: {1}")]
    Layout(usize, &'static str),
    #[error("summary does not match the records")]
    Mismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl Report {
    /// Sorts records by id and recomputes the status counts.
    pub fn finish(header: BTreeMap<String, String>, mut records: Vec<Record>, counts: BTreeMap<String, u64>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let summary = tally(&records, counts);
        Report { header, records, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Structured => self.to_structured(),
        }
    }

    /// JSON lines: header, records sorted by id, summary.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        let mut push = |l: &Line| {
            out.push_str(&serde_json::to_string(l).expect("report lines serialize"));
            out.push('\n');
        };
        push(&Line::Header { conventions: self.header.clone() });
        for r in &self.records {
            push(&Line::Record(r.clone()));
        }
        push(&Line::Summary(self.summary.clone()));
        out
    }

    pub fn parse_structured(text: &str) -> Result<Report, ReportError> {
        let mut header = None;
        let mut records = vec![];
        let mut summary = None;
        for (i, raw) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let line = i + 1;
            if summary.is_some() {
                return Err(ReportError::Layout(line, "content after summary"));
            }
            match parse_line(raw).map_err(|source| ReportError::Json { line, source })? {
                Line::Header { conventions } if header.is_none() && records.is_empty() => header = Some(conventions),
                Line::Header { .. } => return Err(ReportError::Layout(line, "misplaced header")),
                Line::Record(r) => records.push(r),
                Line::Summary(s) => summary = Some(s),
            }
        }
        let summary = summary.ok_or(ReportError::Layout(text.lines().count(), "missing summary"))?;
        if tally(&records, summary.counts.clone()) != summary {
            return Err(ReportError::Mismatch);
        }
        Ok(Report { header: header.unwrap_or_default(), records, summary })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("dualcheck report\n");
        for (k, v) in &self.header {
            let _ = writeln!(out, "  {k}: {v}");
        }
        let mut by_anchor: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
        for r in &self.records {
            let slot = match r.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Logged => 2,
            };
            by_anchor.entry(&r.anchor).or_default()[slot] += 1;
        }
        if !by_anchor.is_empty() {
            out.push_str("\nby anchor (pass / fail / logged)\n");
            for (a, [p, f, l]) in &by_anchor {
                let _ = writeln!(out, "  {a:<22} {p:>6} {f:>6} {l:>6}");
            }
        }
        let notable: Vec<&Record> = self.records.iter().filter(|r| r.status != Status::Pass).collect();
        if !notable.is_empty() {
            out.push('\n');
        }
        for r in notable {
            let _ = writeln!(out, "{} {} [{}]", r.status.tag(), r.id, r.anchor);
            if !r.detail.is_empty() {
                let _ = writeln!(out, "     {}", r.detail);
            }
            for row in &r.certificate {
                let _ = writeln!(out, "     | {}", row.join("  "));
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "\nsummary: {} records, {} passed, {} failed, {} logged", s.records, s.passed, s.failed, s.logged);
        for (k, v) in &s.counts {
            let _ = writeln!(out, "  {k}: {v}");
        }
        let _ = writeln!(out, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

pub fn parse_line(text: &str) -> Result<Line, serde_json::Error> {
    serde_json::from_str(text)
}

fn tally(records: &[Record], counts: BTreeMap<String, u64>) -> Summary {
    let n = |s: Status| records.iter().filter(|r| r.status == s).count();
    Summary {
        records: records.len(),
        passed: n(Status::Pass),
        failed: n(Status::Fail),
        logged: n(Status::Logged),
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let header = BTreeMap::from([("epsilon".to_string(), "test".to_string())]);
        let records = vec![
            Record::new("b", "x", false).detail("oops").certificate(vec![vec!["1".into(), "-1".into()]]),
            Record::new("a", "x", true),
            Record::logged("c", "y"),
        ];
        Report::finish(header, records, BTreeMap::from([("things".to_string(), 3)]))
    }

    #[test]
    fn structured_round_trip() {
        let r = sample();
        assert_eq!(r.records[0].id, "a");
        let text = r.to_structured();
        let back = Report::parse_structured(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_structured(), text);
    }

    #[test]
    fn tampered_summary_is_rejected() {
        let text = sample().to_structured().replace("\"failed\":1", "\"failed\":0");
        assert!(matches!(Report::parse_structured(&text), Err(ReportError::Mismatch)));
        assert!(Report::parse_structured("").is_err());
    }

    #[test]
    fn empty_report_is_summary_only() {
        let r = Report::finish(BTreeMap::new(), vec![], BTreeMap::new());
        let text = r.to_text();
        assert!(text.contains("summary: 0 records"));
        assert!(!text.contains("by anchor"));
        assert_eq!(r.to_structured().lines().count(), 2);
    }

    #[test]
    fn failures_show_certificates() {
        let text = sample().to_text();
        assert!(text.contains("FAIL b [x]"));
        assert!(text.contains("| 1  -1"));
        assert!(text.contains("verdict: FAIL"));
    }
}
