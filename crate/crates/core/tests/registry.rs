use std::collections::{BTreeMap, BTreeSet};

use qelliptic::harness::{equation_labels, registry, run_suite, select, Exec, RunConfig, Status, EXCLUDED};

#[test]
fn ids_are_unique() {
    let mut seen = BTreeSet::new();
    for c in registry() {
        assert!(seen.insert(c.id), "duplicate id {}", c.id);
    }
}

#[test]
fn every_label_is_covered_exactly_once() {
    let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
    for c in registry() {
        for &l in c.labels {
            if let Some(prev) = owner.insert(l, c.id) {
                panic!("label {l} claimed by {prev} and {}", c.id);
            }
        }
    }
    let excluded: BTreeSet<&str> = EXCLUDED.iter().map(|(l, _)| *l).collect();
    for l in equation_labels() {
        let covered = owner.contains_key(l.as_str());
        let skipped = excluded.contains(l.as_str());
        assert!(covered ^ skipped, "label {l}: covered={covered} excluded={skipped}");
    }
    let all: BTreeSet<String> = equation_labels().into_iter().collect();
    for l in owner.keys() {
        assert!(all.contains(*l), "unknown label {l}");
    }
}

#[test]
fn samples_lie_in_their_domains() {
    for c in registry() {
        assert!(!c.samples.is_empty(), "{} has no samples", c.id);
        for row in &c.samples {
            assert_eq!(row.len(), c.domain.len(), "{}: row width", c.id);
            for (d, &v) in c.domain.iter().zip(row) {
                assert!(d.contains(v), "{}: {} = {v} outside [{}, {}]", c.id, d.name, d.lo, d.hi);
            }
        }
    }
}

#[test]
fn quarantined_cases_carry_a_note() {
    for c in registry().iter().filter(|c| c.status == Status::Quarantined) {
        assert!(!c.note.is_empty(), "{} has no note", c.id);
    }
}

#[test]
fn all_active_cases_pass() {
    let cases: Vec<_> = registry().iter().collect();
    let rep = run_suite(&cases, &RunConfig::default()).unwrap();
    assert!(rep.records.len() >= 80);
    assert!(rep.summary.gate_passed(), "failures: {:?}", rep.summary.active_failures);
    assert!(rep.summary.flagged.is_empty());
    for q in &rep.summary.quarantined {
        assert!(q.max_rel_residual.is_some(), "{} produced no residual", q.id);
    }
}

#[test]
fn runs_are_deterministic_and_sequential_matches_parallel() {
    let cases: Vec<_> = registry().iter().collect();
    let par = run_suite(&cases, &RunConfig::default()).unwrap();
    let again = run_suite(&cases, &RunConfig::default()).unwrap();
    let seq = run_suite(&cases, &RunConfig { exec: Exec::Sequential, ..RunConfig::default() }).unwrap();
    assert_eq!(par, again);
    assert_eq!(par, seq);
    assert_eq!(par.to_json(), seq.to_json());
}

#[test]
fn appendix_filter_selects_only_appendix_ids() {
    let sel = select(registry(), "A*").unwrap();
    assert!(sel.len() >= 10);
    assert!(sel.iter().all(|c| c.id.starts_with('A')));
}

#[test]
fn override_produces_single_sample() {
    let sel = select(registry(), "A5-158").unwrap();
    let mut cfg = RunConfig::default();
    cfg.overrides.insert("q".into(), 0.3);
    let rep = run_suite(&sel, &cfg).unwrap();
    assert!(rep.records.iter().all(|r| r.params["q"] == 0.3));
    assert!(rep.summary.gate_passed());
}
