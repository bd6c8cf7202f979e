mod common;

use std::time::{Duration, Instant};

use common::*;
use gupnoise_cli::verify::{VERIFICATION_SCHEMA, VERIFICATION_SCHEMA_VERSION};
use gupnoise_cli::{cmd_verify, Tier};

#[test]
fn fast_tier_passes_within_a_minute() {
    let dir = tempdir();
    let config = config_in(dir.path(), "preset = \"aligo\"\n");
    assert_eq!(config.tier, Tier::Fast);
    let started = Instant::now();
    let outcome = cmd_verify(&config).unwrap();
    assert!(started.elapsed() < Duration::from_secs(60));
    assert!(outcome.all_pass(), "{}", outcome.summary().join("\n"));
    let suites: Vec<_> = outcome.document.checks.iter().map(|c| c.suite).collect();
    assert!(suites.contains(&"quadrature") && suites.contains(&"pt_identity"));
    assert!(!suites.contains(&"simulation"));
}

#[test]
fn term_comparison_is_information_only() {
    let dir = tempdir();
    let outcome = cmd_verify(&config_in(dir.path(), "preset = \"purdy\"\n")).unwrap();
    let d = &outcome.document;
    assert!(d.info_error.is_none(), "{:?}", d.info_error);
    assert_eq!(d.info.len(), 7);
    let u1 = d.info.iter().find(|t| t.term == "u1/v1").expect("u1 term reported");
    assert!(!u1.agrees);
    // a disagreeing term never turns into a failed check
    assert!(d.all_pass);
    assert!(d.checks.iter().all(|c| !c.name.contains("u1")));
    assert!(outcome.summary().iter().any(|l| l.starts_with("INFO term u1/v1")));
}

#[test]
fn summary_json_is_well_formed() {
    let dir = tempdir();
    let outcome = cmd_verify(&config_in(dir.path(), "preset = \"teufel\"\n")).unwrap();
    let json = read_json(&outcome.path);
    assert_eq!(json["schema"], VERIFICATION_SCHEMA);
    assert_eq!(json["schema_version"], VERIFICATION_SCHEMA_VERSION);
    assert_eq!(json["tier"], "fast");
    assert_eq!(json["all_pass"], true);
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), outcome.document.checks.len());
    for (c, record) in checks.iter().zip(&outcome.document.checks) {
        assert_eq!(c["measured"].as_f64().unwrap().to_bits(), record.measured.0.to_bits());
        assert_eq!(c["pass"], record.pass);
    }
}

#[test]
fn full_tier_passes_for_two_seeds() {
    for seed in [20_240_601u64, 7] {
        let dir = tempdir();
        let text = format!("preset = \"purdy\"\n[simulation]\ntrajectories = 64\nseed = {seed}\n[verify]\ntier = \"full\"\n");
        let outcome = cmd_verify(&config_in(dir.path(), &text)).unwrap();
        let lines = outcome.summary().join("\n");
        assert!(outcome.all_pass(), "seed {seed}:\n{lines}");
        for suite in ["quadrature", "pt_identity", "correlation", "simulation", "perturbation"] {
            assert!(outcome.document.checks.iter().any(|c| c.suite == suite), "{suite} missing");
        }
        assert_eq!(outcome.document.seed, seed);
    }
}
