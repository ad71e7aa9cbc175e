use korbits::analysis::{
    analyze, analyze_cached, list_fixtures, verify_speh, AnalysisConfig, OrbitReport, ReportCache,
};
use korbits::error::ErrorKind;
use korbits::liealg::RealFormDescriptor;
use korbits::orbits::OrbitDescriptor;
use korbits::roots::WeightVector;
use korbits::Error;

fn config(name: &str) -> AnalysisConfig {
    AnalysisConfig::for_fixture(name).unwrap()
}

#[test]
fn speh_report() {
    let r = analyze(&config("speh_sl4R")).unwrap();
    assert_eq!(r.status, "complete");
    let inv = r.invariants.as_ref().unwrap();
    let summary: Vec<(usize, Vec<i64>)> = inv.generators.iter().map(|g| (g.degree, g.weight.0.clone())).collect();
    assert_eq!(summary, vec![(1, vec![2, 0]), (2, vec![2, 2])]);
    assert!(inv.degree_checks.iter().all(|c| c.matches_generators));
    assert_eq!(inv.degree_checks.len(), 6);
    assert_eq!(r.cone.as_ref().unwrap().inequalities, vec![vec![1, -1], vec![0, 1]]);
    assert_eq!(r.self_dual, Some(true));
    assert_eq!(r.basis_labels.len(), 15);
}

#[test]
fn su63_report_is_partial() {
    let r = analyze(&config("su63_333")).unwrap();
    let flags = serde_json::to_value(&r.flags).unwrap();
    assert_eq!(flags["small"], true);
    assert_eq!(flags["spherical"], false);
    assert_eq!(flags["certainty"], "certified");
    assert_eq!(flags["dim_borel"], 26);
    assert_eq!(flags["dim_orbit"], 27);
    assert!(r.invariants.is_none() && r.cone.is_none() && r.self_dual.is_none());
    assert!(r.status.contains("not spherical"));
    let json = serde_json::to_value(&r).unwrap();
    assert!(json.get("invariants").is_none());
}

#[test]
fn malformed_partition_names_the_stage() {
    let c = AnalysisConfig::new(
        RealFormDescriptor::SlR { n: 4 },
        OrbitDescriptor::Partition { partition: vec![3, 2], label: None },
    );
    let err = analyze(&c).unwrap_err();
    assert!(matches!(err, Error::Stage { stage, .. } if stage == "representative"), "{err}");
    assert!(matches!(err.root(), Error::Descriptor(_)));
    assert_eq!(err.kind(), ErrorKind::Input);
    assert!(err.to_string().starts_with("representative:"));
}

#[test]
fn degree_bound_error_names_the_stage() {
    let mut c = config("speh_sl4R");
    c.max_degree = 1;
    let err = analyze(&c).unwrap_err();
    assert!(err.to_string().starts_with("invariants:"), "{err}");
    assert!(matches!(err.root(), Error::IncreaseDegreeBound { found: 1, expected: 2, max_degree: 1 }));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    for f in list_fixtures() {
        let c = config(&f.name);
        let a = analyze(&c).unwrap();
        let b = analyze(&c).unwrap();
        assert_eq!(a.without_timings(), b.without_timings(), "{}", f.name);
        let text = serde_json::to_string(&a).unwrap();
        let back: OrbitReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a, "{}", f.name);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn seed_changes_only_sampling() {
    let mut c = config("sl6_2cubed_I");
    let a = analyze(&c).unwrap();
    c.seed = 41;
    let b = analyze(&c).unwrap();
    assert_eq!(a.flags, b.flags);
    assert_eq!(a.invariants, b.invariants);
}

#[test]
fn cache_reuses_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ReportCache::new(dir.path());
    let c = config("sl4_211");
    assert!(cache.load(&c).is_none());
    let first = analyze_cached(&c, Some(&cache)).unwrap();
    assert!(cache.path_for(&c).exists());
    let second = analyze_cached(&c, Some(&cache)).unwrap();
    assert_eq!(first, second);
    let mut other = c.clone();
    other.bound = 5;
    assert_ne!(cache.path_for(&other), cache.path_for(&c));
}

#[test]
fn config_files() {
    let dir = tempfile::tempdir().unwrap();
    let toml_path = dir.path().join("speh.toml");
    std::fs::write(
        &toml_path,
        "bound = 5\nsamples = 4\n\n[algebra]\nfamily = \"sl_R\"\nn = 4\n\n[orbit]\npartition = [2, 2]\nlabel = \"I\"\n",
    )
    .unwrap();
    let c = AnalysisConfig::load(&toml_path).unwrap();
    assert_eq!((c.bound, c.samples, c.max_degree), (5, 4, 6));
    assert_eq!(c.orbit, config("speh_sl4R").orbit);
    let json_path = dir.path().join("su.json");
    std::fs::write(&json_path, r#"{"algebra":{"family":"su","p":2,"q":1},"orbit":{"signed":"+-+"},"seed":9}"#).unwrap();
    let c = AnalysisConfig::load(&json_path).unwrap();
    assert_eq!(c.seed, 9);
    std::fs::write(&json_path, r#"{"algebra":{"family":"su","p":2,"q":1},"orbit":{"signed":"+-+"},"samples":0}"#)
        .unwrap();
    assert_eq!(AnalysisConfig::load(&json_path).unwrap_err().kind(), ErrorKind::Input);
    assert!(AnalysisConfig::load(&dir.path().join("missing.json")).is_err());
}

#[test]
fn verify_speh_outcomes() {
    let v = verify_speh(6, 12, 0, 8);
    assert!(v.passed, "{:?}", v.checks);
    let v = verify_speh(1, 12, 0, 8);
    assert!(!v.passed);
    assert!(v.checks[0].detail.contains("increase degree bound"));
    let v = verify_speh(6, 3, 0, 8);
    assert!(v.passed);
    assert_eq!(v.shifted_lattice, vec![WeightVector(vec![1, 1]), WeightVector(vec![3, 1]), WeightVector(vec![3, 3])]);
}

#[test]
fn catalog_contents() {
    let names: Vec<String> = list_fixtures().into_iter().map(|f| f.name).collect();
    for n in ["speh_sl4R", "su21_principal", "sl6_2cubed_I", "sl6_2cubed_II", "su63_333"] {
        assert!(names.iter().any(|m| m == n));
    }
    for f in list_fixtures() {
        let r = analyze(&config(&f.name)).unwrap();
        if f.name.starts_with("zero_") {
            assert_eq!(r.flags.dim_orbit, 0);
            assert_eq!(r.lattice_sample.as_ref().unwrap().len(), 1);
        }
    }
}

#[test]
fn dual_candidates_differ_only_off_self_dual() {
    for (name, differ) in [("sl6_2cubed_I", true), ("sl6_2cubed_II", true), ("speh_sl4R", false)] {
        let r = analyze(&config(name)).unwrap();
        let w = &r.invariants.unwrap().weights;
        let mut mu = w.mu.clone();
        let mut dual = w.dual_mu.clone();
        mu.sort();
        dual.sort();
        assert_eq!(mu != dual, differ, "{name}");
    }
}
