use proptest::prelude::*;
use signfam::cache::{cache_key, CachedStatus, ResultCache};
use signfam::io::{read_family, write_family};
use signfam::report::{emit_csv, emit_json, Case, Provenance, VerificationReport};
use signfam::suites::{run_suite, SuiteError, SuiteParams, SUITES};
use signfam_core::constructions::ekr_family;
use signfam_core::solver::Target;
use signfam_core::Profile;

fn small_params() -> SuiteParams {
    SuiteParams {
        trials: Some(20),
        ..SuiteParams::default()
    }
}

fn integers_only(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_u64() || n.is_i64(),
        serde_json::Value::Array(a) => a.iter().all(integers_only),
        serde_json::Value::Object(o) => o.values().all(integers_only),
        _ => true,
    }
}

#[test]
fn cache_survives_save_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let (mut cache, warning) = ResultCache::open(&path);
    assert!(warning.is_none());
    let p = Profile::new(6, 3, 2).unwrap();
    cache.record(cache_key(p, Target::G, true), 30, CachedStatus::Exact);
    cache.record(cache_key(p, Target::M, false), 19, CachedStatus::LowerBoundTimeout);
    cache.save().unwrap();
    let (again, warning) = ResultCache::open(&path);
    assert!(warning.is_none());
    assert_eq!(again.entries(), cache.entries());
    assert!(!dir.path().join("cache.tmp").exists());
}

#[test]
fn corrupt_cache_starts_fresh_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    std::fs::write(&path, "{ not json").unwrap();
    let (cache, warning) = ResultCache::open(&path);
    assert!(cache.entries().is_empty());
    assert!(warning.unwrap().contains("corrupt"));
}

#[test]
fn suites_fill_the_cache_and_reuse_it() {
    let mut cache = ResultCache::in_memory();
    let first = run_suite("theorem1", &SuiteParams::default(), &mut cache).unwrap();
    assert!(first.all_required_pass());
    assert_eq!(cache.entries().len(), 4);
    assert_eq!(cache.get("6,3,1,g,true").unwrap().value, 30);
    let second = run_suite("theorem1", &SuiteParams::default(), &mut cache).unwrap();
    assert_eq!(first, second);
}

#[test]
fn unknown_suite_and_bad_params_are_errors() {
    let mut cache = ResultCache::in_memory();
    assert!(matches!(
        run_suite("nope", &SuiteParams::default(), &mut cache),
        Err(SuiteError::Unknown(_))
    ));
    let params = SuiteParams {
        profile: Some(Profile::new(6, 3, 2).unwrap()),
        ..SuiteParams::default()
    };
    assert!(matches!(
        run_suite("theorem1", &params, &mut cache),
        Err(SuiteError::InvalidParams(_))
    ));
}

#[test]
fn json_and_csv_carry_every_case() {
    let mut cache = ResultCache::in_memory();
    let reports: Vec<VerificationReport> = ["lemma3", "lemma1", "p-increment"]
        .iter()
        .map(|s| run_suite(s, &small_params(), &mut cache).unwrap())
        .collect();
    let total: usize = reports.iter().map(|r| r.cases.len()).sum();

    let mut json = Vec::new();
    emit_json(&reports, &mut json).unwrap();
    let parsed: Vec<VerificationReport> = serde_json::from_slice(&json).unwrap();
    assert_eq!(parsed, reports);
    let value: serde_json::Value = serde_json::from_slice(&json).unwrap();
    assert!(integers_only(&value));

    let mut csv_out = Vec::new();
    emit_csv(&reports, &mut csv_out).unwrap();
    let mut rd = csv::Reader::from_reader(&csv_out[..]);
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        ["suite", "case", "expected", "actual", "pass", "provenance"]
    );
    assert_eq!(rd.records().count(), total);
}

#[test]
fn every_listed_suite_runs() {
    let mut cache = ResultCache::in_memory();
    for s in SUITES {
        if matches!(*s, "ratios" | "constructions") {
            continue;
        }
        let r = run_suite(s, &small_params(), &mut cache).unwrap();
        assert!(r.all_required_pass(), "{s}: {:?}", r.failures().next());
        assert_eq!(r.summary.total, r.cases.len());
    }
}

#[test]
fn fixed_profile_restricts_construction_suite() {
    let params = SuiteParams {
        profile: Some(Profile::new(8, 2, 1).unwrap()),
        ..SuiteParams::default()
    };
    let r = run_suite("constructions", &params, &mut ResultCache::in_memory()).unwrap();
    assert!(r.all_required_pass());
    assert!(r.cases.iter().any(|c| c.id == "increment(7,2,1)"));
}

#[test]
fn failing_case_is_reported_as_failure() {
    let mut r = VerificationReport::new("demo");
    r.push(Case::new("x", "", 1, 2, Provenance::Oracle));
    assert_eq!(r.failures().count(), 1);
}

#[test]
fn family_file_round_trip() {
    let fam = ekr_family(Profile::new(6, 3, 1).unwrap());
    let mut buf = b"# first-coordinate family\n".to_vec();
    write_family(&fam, &mut buf).unwrap();
    assert_eq!(read_family(&buf[..]).unwrap(), fam);
}

proptest! {
    #[test]
    fn cache_never_downgrades(ops in prop::collection::vec((0usize..50, any::<bool>()), 1..30)) {
        let mut c = ResultCache::in_memory();
        let key = "5,2,1,g,true".to_string();
        let mut exact: Option<usize> = None;
        let mut best_lb = 0usize;
        for (v, is_exact) in ops {
            let status = if is_exact { CachedStatus::Exact } else { CachedStatus::LowerBoundTimeout };
            c.record(key.clone(), v, status);
            if is_exact && exact.is_none() {
                exact = Some(v);
            }
            if !is_exact {
                best_lb = best_lb.max(v);
            }
            let e = c.get(&key).unwrap();
            match exact {
                Some(x) => {
                    prop_assert_eq!(e.status, CachedStatus::Exact);
                    prop_assert_eq!(e.value, x);
                }
                None => prop_assert_eq!(e.value, best_lb),
            }
        }
    }

    #[test]
    fn report_summary_matches_cases(pairs in prop::collection::vec((0u8..4, 0u8..4, any::<bool>()), 0..40)) {
        let mut r = VerificationReport::new("p");
        for (i, (a, b, req)) in pairs.iter().enumerate() {
            let c = Case::new(i.to_string(), "", a, b, Provenance::Oracle);
            r.push(if *req { c } else { c.informational() });
        }
        let s = r.summary;
        prop_assert_eq!(s.total, pairs.len());
        prop_assert_eq!(s.passed + s.failed, s.total);
        prop_assert_eq!(s.passed, pairs.iter().filter(|(a, b, _)| a == b).count());
        prop_assert_eq!(s.required_failed, pairs.iter().filter(|(a, b, req)| a != b && *req).count());
    }
}
