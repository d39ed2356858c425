use dunkl::verify::{run_all, run_suite, Profile, Residual, Suite, VerifyConfig};

#[test]
fn every_suite_passes_on_ci_profile() {
    let config = VerifyConfig::new(Profile::Ci);
    for suite in Suite::ALL {
        let v = run_suite(suite, &config);
        assert!(v.cases > 0, "{suite} ran no cases");
        assert!(v.passed(), "{suite}: {}", serde_json::to_string_pretty(&v.failures[..v.failures.len().min(3)]).unwrap());
    }
}

#[test]
fn injected_fault_is_reported_exactly() {
    let mut config = VerifyConfig::new(Profile::Ci);
    config.inject_fault = true;
    let v = run_suite(Suite::HermiteEq, &config);
    assert!(!v.passed());
    for f in &v.failures {
        assert!(f.check.starts_with("coefficient relations t=2"), "{}", f.check);
        assert_eq!(f.degrees[0], 2);
        match &f.residual {
            Residual::Scalar(p) => assert!(!p.is_zero()),
            other => panic!("expected a polynomial residual, got {other:?}"),
        }
    }
}

#[test]
fn output_is_deterministic() {
    let mut config = VerifyConfig::new(Profile::Ci);
    config.inject_fault = true;
    let a = serde_json::to_string(&run_suite(Suite::HermiteEq, &config)).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::HermiteEq, &config)).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("wall_time_ms"));
}

#[test]
fn suite_names_round_trip() {
    for suite in Suite::ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!("nope".parse::<Suite>().is_err());
}

#[test]
fn run_all_sums_suites() {
    let mut config = VerifyConfig::new(Profile::Ci);
    config.sizes = config.sizes.cap_degree(2);
    let total: usize = Suite::ALL.iter().map(|&s| run_suite(s, &config).cases).sum();
    assert_eq!(run_all(&config).cases, total);
}
