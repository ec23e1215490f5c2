//! Residual records and the text, JSON and CSV writers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use serde::Serialize;

use super::{IdentityCase, Status};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Cplx {
    fn from(z: C64) -> Self {
        Cplx { re: z.re, im: z.im }
    }
}

/// One evaluated sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub status: Status,
    pub params: BTreeMap<String, f64>,
    pub lhs: Option<Cplx>,
    pub rhs: Option<Cplx>,
    pub abs_residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub terms_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Set when the evaluation failed on a domain, strip or pole check.
    #[serde(skip)]
    pub precondition: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuarantineEntry {
    pub id: String,
    pub note: String,
    pub samples: usize,
    /// Largest relative residual over the samples that evaluated.
    pub max_rel_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub records: usize,
    pub active_records: usize,
    pub active_passed: usize,
    /// `id {params}` of every failing ACTIVE record.
    pub active_failures: Vec<String>,
    /// ACTIVE cases that fail at every sample.
    pub flagged: Vec<String>,
    pub quarantined: Vec<QuarantineEntry>,
}

impl Summary {
    pub fn gate_passed(&self) -> bool {
        self.active_failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
    pub summary: Summary,
}

fn params_str(p: &BTreeMap<String, f64>) -> String {
    let body: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", body.join(", "))
}

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into())
}

impl Report {
    pub fn new(cases: &[&IdentityCase], records: Vec<Record>) -> Self {
        let active: Vec<&Record> = records.iter().filter(|r| r.status == Status::Active).collect();
        let active_failures = active
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("{} {}", r.id, params_str(&r.params)))
            .collect();
        let mut flagged = Vec::new();
        let mut quarantined = Vec::new();
        for c in cases {
            let mine: Vec<&Record> = records.iter().filter(|r| r.id == c.id).collect();
            match c.status {
                Status::Active => {
                    if !mine.is_empty() && mine.iter().all(|r| !r.pass) {
                        flagged.push(c.id.to_string());
                    }
                }
                Status::Quarantined => quarantined.push(QuarantineEntry {
                    id: c.id.to_string(),
                    note: c.note.to_string(),
                    samples: mine.len(),
                    max_rel_residual: mine.iter().filter_map(|r| r.rel_residual).reduce(f64::max),
                }),
            }
        }
        let summary = Summary {
            cases: cases.len(),
            records: records.len(),
            active_records: active.len(),
            active_passed: active.iter().filter(|r| r.pass).count(),
            active_failures,
            flagged,
            quarantined,
        };
        Report { records, summary }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let verdict = match (r.status, r.pass) {
                (_, true) => "PASS",
                (Status::Active, false) => "FAIL",
                (Status::Quarantined, false) => "QFAIL",
            };
            let _ = write!(
                s,
                "{verdict:<5} {:<16} {} rel={} abs={} tol={:.0e} terms={}",
                r.id,
                params_str(&r.params),
                num(r.rel_residual),
                num(r.abs_residual),
                r.tolerance,
                r.terms_used
            );
            if let Some(ms) = r.wall_ms {
                let _ = write!(s, " ms={ms:.3}");
            }
            if let Some(e) = &r.error {
                let _ = write!(s, " error: {e}");
            }
            s.push('\n');
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "\n{} cases, {} samples; ACTIVE {}/{} passed",
            m.cases, m.records, m.active_passed, m.active_records
        );
        for q in &m.quarantined {
            let _ = writeln!(s, "QUARANTINED {} max_rel={} ({})", q.id, num(q.max_rel_residual), q.note);
        }
        for f in &m.flagged {
            let _ = writeln!(s, "FLAGGED {f}: fails at every sample");
        }
        s
    }

    /// The records as a JSON array.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("records serialize")
    }

    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "id",
            "status",
            "params",
            "lhs_re",
            "lhs_im",
            "rhs_re",
            "rhs_im",
            "abs_residual",
            "rel_residual",
            "tolerance",
            "pass",
            "terms_used",
            "error",
        ])?;
        let f = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
        for r in &self.records {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.write_record([
                r.id.clone(),
                r.status.to_string(),
                params.join(";"),
                f(r.lhs.map(|z| z.re)),
                f(r.lhs.map(|z| z.im)),
                f(r.rhs.map(|z| z.re)),
                f(r.rhs.map(|z| z.im)),
                f(r.abs_residual),
                f(r.rel_residual),
                format!("{:e}", r.tolerance),
                r.pass.to_string(),
                r.terms_used.to_string(),
                r.error.clone().unwrap_or_default(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory csv");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::RunConfig;

    #[test]
    fn quarantine_is_listed_and_does_not_fail_gate() {
        let ok = IdentityCase::new("OK", "t", "", |_, _| Ok((C64::new(1.0, 0.0), C64::new(1.0, 0.0)))).sample(&[]);
        let bad = IdentityCase::new("BAD", "t", "", |_, _| Ok((C64::new(1.0, 0.0), C64::new(2.0, 0.0))))
            .sample(&[])
            .quarantine("off by one");
        let cfg = RunConfig::default();
        let recs = vec![ok.run(&ok.points()[0], &cfg), bad.run(&bad.points()[0], &cfg)];
        let rep = Report::new(&[&ok, &bad], recs);
        assert!(rep.summary.gate_passed());
        assert_eq!(rep.summary.quarantined.len(), 1);
        assert_eq!(rep.summary.quarantined[0].max_rel_residual, Some(0.5));
        let csv = rep.to_csv();
        assert!(csv.starts_with("id,status,params,lhs_re"));
        assert_eq!(csv.lines().count(), 3);
    }
}
