//! Registry coverage and determinism contracts.

use gsn_core::registry::{ids, registry, run_identity, Bounds, Mode};

/// The catalog must match the checked-in manifest exactly, in order.
#[test]
fn registry_matches_manifest() {
    let manifest: Vec<&str> = include_str!("registry_manifest.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    assert_eq!(ids(), manifest);
}

#[test]
fn every_entry_declares_a_runnable_mode() {
    for check in registry() {
        assert!(
            check.supports(Mode::Numeric) || check.supports(Mode::Symbolic),
            "{} declares no modes",
            check.id
        );
        assert!(!check.description.is_empty());
        assert!(!check.arity.is_empty());
    }
}

/// Two runs with identical bounds and seed produce byte-identical reports.
#[test]
fn reports_are_deterministic() {
    let bounds = Bounds {
        numeric_degree: 4,
        symbolic_degree: 3,
        seed: Some(1234),
        random_cases: 6,
        ..Bounds::default()
    };
    for id in ["EQ-3.2c", "EQ-3.71", "EQ-3.14"] {
        let a = run_identity(id, Mode::Numeric, &bounds).unwrap();
        let b = run_identity(id, Mode::Numeric, &bounds).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{id}");
    }
}

/// All-zero bounds still run the minimal base cases and pass vacuously.
#[test]
fn empty_bounds_vacuous_pass() {
    let bounds = Bounds {
        numeric_degree: 0,
        symbolic_degree: 0,
        seed: None,
        random_cases: 0,
        ..Bounds::default()
    };
    for check in registry() {
        let report = run_identity(check.id, Mode::Numeric, &bounds).unwrap();
        assert!(report.passed(), "{} failed at empty bounds", check.id);
    }
}
