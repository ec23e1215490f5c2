//! Identity registry and residual runner.
//!
//! Each [`IdentityCase`] evaluates the two sides of one identity at a set of
//! sample points. [`run_suite`] fans the `(case, sample)` pairs out over the
//! worker pool and collects a [`Report`].

mod registry;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::series::{take_term_count, TruncationPolicy};
use crate::{Error, Result, C64};

pub use registry::{equation_labels, registry, EXCLUDED};
pub use report::{Cplx, QuarantineEntry, Record, Report, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareMode {
    Direct,
    /// Both sides are logarithms; `exp` of each is compared.
    Exponentiated,
    /// One side is a numerical derivative.
    Derivative,
    /// One side is a numerical limit.
    Limit,
}

impl CompareMode {
    pub fn default_tolerance(self) -> f64 {
        match self {
            CompareMode::Direct | CompareMode::Exponentiated => 1e-9,
            CompareMode::Derivative => 1e-8,
            CompareMode::Limit => 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Active,
    Quarantined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Active => "ACTIVE",
            Status::Quarantined => "QUARANTINED",
        })
    }
}

/// Named parameter values of one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<(&'static str, f64)>);

impl Point {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.0.iter().map(|&(n, v)| (n.to_string(), v)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.0.iter().copied()
    }
}

impl std::ops::Index<&str> for Point {
    type Output = f64;

    fn index(&self, name: &str) -> &f64 {
        self.0
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
            .unwrap_or_else(|| panic!("sample has no parameter `{name}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub name: &'static str,
    pub lo: f64,
    pub hi: f64,
}

impl ParamRange {
    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }
}

pub type Sides = fn(&Point, &TruncationPolicy) -> Result<(C64, C64)>;

#[derive(Clone)]
pub struct IdentityCase {
    pub id: &'static str,
    pub section: &'static str,
    pub description: &'static str,
    /// Numbered results this case verifies.
    pub labels: &'static [&'static str],
    pub domain: Vec<ParamRange>,
    /// Rows in the order of `domain`.
    pub samples: Vec<Vec<f64>>,
    pub sides: Sides,
    pub mode: CompareMode,
    pub tolerance: f64,
    /// Lower bound on the scale that residuals are divided by.
    pub abs_floor: f64,
    pub status: Status,
    pub note: &'static str,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("status", &self.status)
            .field("samples", &self.samples.len())
            .finish()
    }
}

impl IdentityCase {
    pub fn new(id: &'static str, section: &'static str, description: &'static str, sides: Sides) -> Self {
        IdentityCase {
            id,
            section,
            description,
            labels: &[],
            domain: Vec::new(),
            samples: Vec::new(),
            sides,
            mode: CompareMode::Direct,
            tolerance: CompareMode::Direct.default_tolerance(),
            abs_floor: 0.0,
            status: Status::Active,
            note: "",
        }
    }

    pub fn labels(mut self, labels: &'static [&'static str]) -> Self {
        self.labels = labels;
        self
    }

    pub fn param(mut self, name: &'static str, lo: f64, hi: f64) -> Self {
        self.domain.push(ParamRange { name, lo, hi });
        self
    }

    pub fn sample(mut self, row: &[f64]) -> Self {
        self.samples.push(row.to_vec());
        self
    }

    /// One sample per value of a single-parameter case.
    pub fn each(mut self, values: &[f64]) -> Self {
        for &v in values {
            self.samples.push(vec![v]);
        }
        self
    }

    /// Cartesian product of two value lists for a two-parameter case.
    pub fn grid(mut self, first: &[f64], second: &[f64]) -> Self {
        for &a in first {
            for &b in second {
                self.samples.push(vec![a, b]);
            }
        }
        self
    }

    pub fn mode(mut self, mode: CompareMode) -> Self {
        self.mode = mode;
        self.tolerance = mode.default_tolerance();
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn floor(mut self, floor: f64) -> Self {
        self.abs_floor = floor;
        self
    }

    pub fn quarantine(mut self, note: &'static str) -> Self {
        self.status = Status::Quarantined;
        self.note = note;
        self
    }

    pub fn note(mut self, note: &'static str) -> Self {
        self.note = note;
        self
    }

    pub fn points(&self) -> Vec<Point> {
        self.samples
            .iter()
            .map(|row| Point(self.domain.iter().zip(row).map(|(d, &v)| (d.name, v)).collect()))
            .collect()
    }

    pub fn range(&self, name: &str) -> Option<&ParamRange> {
        self.domain.iter().find(|d| d.name == name)
    }

    /// Evaluate one point into a record. Mathematical failures become failing
    /// records.
    pub fn run(&self, point: &Point, cfg: &RunConfig) -> Record {
        let tolerance = cfg.tolerance.unwrap_or(self.tolerance);
        let start = Instant::now();
        take_term_count();
        let out = (self.sides)(point, &cfg.policy);
        let terms_used = take_term_count();
        let wall_ms = cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let mut rec = Record {
            id: self.id.to_string(),
            status: self.status,
            params: point.to_map(),
            lhs: None,
            rhs: None,
            abs_residual: None,
            rel_residual: None,
            tolerance,
            pass: false,
            terms_used,
            error: None,
            precondition: false,
            wall_ms,
        };
        match out {
            Ok((l, r)) => {
                let (l, r) = match self.mode {
                    CompareMode::Exponentiated => (l.exp(), r.exp()),
                    _ => (l, r),
                };
                let abs = (l - r).norm();
                let scale = l.norm().max(r.norm()).max(self.abs_floor);
                let rel = if scale > 0.0 { abs / scale } else { abs };
                rec.lhs = Some(l.into());
                rec.rhs = Some(r.into());
                if abs.is_finite() {
                    rec.abs_residual = Some(abs);
                    rec.rel_residual = Some(rel);
                    rec.pass = rel <= tolerance;
                } else {
                    rec.error = Some("non-finite side".into());
                }
            }
            Err(e) => {
                rec.precondition = matches!(e, Error::Domain(_) | Error::Strip(_) | Error::Pole(_));
                rec.error = Some(e.to_string());
            }
        }
        rec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Parallel,
    Sequential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Replaces the named parameters in every sample.
    pub overrides: BTreeMap<String, f64>,
    pub tolerance: Option<f64>,
    pub policy: TruncationPolicy,
    pub timing: bool,
    pub exec: Exec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            overrides: BTreeMap::new(),
            tolerance: None,
            policy: TruncationPolicy::default(),
            timing: false,
            exec: Exec::Parallel,
        }
    }
}

/// Cases whose id matches `pattern` (glob syntax; a plain id matches itself).
pub fn select<'a>(cases: &'a [IdentityCase], pattern: &str) -> Result<Vec<&'a IdentityCase>> {
    let pat = glob::Pattern::new(pattern).map_err(|e| Error::Config(format!("bad --id pattern `{pattern}`: {e}")))?;
    let out: Vec<_> = cases.iter().filter(|c| pat.matches(c.id)).collect();
    if out.is_empty() {
        return Err(Error::Config(format!("no registry case matches `{pattern}`")));
    }
    Ok(out)
}

/// The sample points of `case` after applying overrides. An override must
/// name a parameter of the case and lie inside its range.
pub fn effective_points(case: &IdentityCase, overrides: &BTreeMap<String, f64>) -> Result<Vec<Point>> {
    for (name, &v) in overrides {
        let range = case
            .range(name)
            .ok_or_else(|| Error::Config(format!("{} has no parameter `{name}`", case.id)))?;
        if !range.contains(v) {
            return Err(Error::Config(format!(
                "{}: {name} = {v} lies outside [{}, {}]",
                case.id, range.lo, range.hi
            )));
        }
    }
    let mut points = case.points();
    if overrides.is_empty() {
        return Ok(points);
    }
    for p in points.iter_mut() {
        for (name, v) in p.0.iter_mut() {
            if let Some(&o) = overrides.get(*name) {
                *v = o;
            }
        }
    }
    points.dedup();
    Ok(points)
}

fn eval_all(jobs: &[(&IdentityCase, Point)], cfg: &RunConfig) -> Vec<Record> {
    #[cfg(feature = "parallel")]
    {
        if cfg.exec == Exec::Parallel {
            use rayon::prelude::*;
            return jobs.par_iter().map(|(c, p)| c.run(p, cfg)).collect();
        }
    }
    jobs.iter().map(|(c, p)| c.run(p, cfg)).collect()
}

/// Run every sample of every case. Errors only on configuration problems.
pub fn run_suite(cases: &[&IdentityCase], cfg: &RunConfig) -> Result<Report> {
    let mut jobs = Vec::new();
    for &case in cases {
        for p in effective_points(case, &cfg.overrides)? {
            jobs.push((case, p));
        }
    }
    let records = eval_all(&jobs, cfg);
    Ok(Report::new(cases, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> IdentityCase {
        IdentityCase::new("TOY", "test", "x = x", |p, _| Ok((C64::new(p["x"], 0.0), C64::new(p["x"], 0.0))))
            .param("x", 0.0, 1.0)
            .each(&[0.25, 0.5])
    }

    #[test]
    fn override_replaces_and_checks_range() {
        let c = toy();
        let mut o = BTreeMap::new();
        o.insert("x".to_string(), 0.75);
        let pts = effective_points(&c, &o).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0]["x"], 0.75);
        o.insert("x".to_string(), 2.0);
        assert!(matches!(effective_points(&c, &o), Err(Error::Config(_))));
        let mut o = BTreeMap::new();
        o.insert("q".to_string(), 0.1);
        assert!(matches!(effective_points(&c, &o), Err(Error::Config(_))));
    }

    #[test]
    fn glob_selection() {
        let cases = vec![toy()];
        assert_eq!(select(&cases, "T*").unwrap().len(), 1);
        assert!(select(&cases, "EQ*").is_err());
    }

    #[test]
    fn exponentiated_mode_ignores_branch() {
        let c = IdentityCase::new("LOG", "test", "", |_, _| {
            Ok((C64::new(0.0, std::f64::consts::PI), C64::new(0.0, -std::f64::consts::PI)))
        })
        .mode(CompareMode::Exponentiated)
        .sample(&[]);
        let r = c.run(&c.points()[0], &RunConfig::default());
        assert!(r.pass, "{r:?}");
    }
}
