use hardy_lab::config::CheckSpec;
use hardy_lab::scenarios::{self, BUNDLED};
use hardy_lab::{execute, RunOptions};

#[test]
fn every_bundled_scenario_parses_and_validates() {
    for (name, _) in BUNDLED {
        let config = scenarios::load(name).unwrap_or_else(|e| panic!("{name}: {e:#}"));
        assert_eq!(config.scenario, *name);
        config.validate().unwrap_or_else(|e| panic!("{name}: {e:#}"));
        assert!(config.seed.is_some(), "{name} has no seed");
    }
}

#[test]
fn every_check_kind_appears_in_some_scenario() {
    let mut seen = std::collections::BTreeSet::new();
    for (name, _) in BUNDLED {
        for check in scenarios::load(name).unwrap().checks {
            seen.insert(check.name());
        }
    }
    for (check, _) in hardy_lab::config::CHECKS {
        assert!(seen.contains(check), "{check} is not exercised");
    }
}

#[test]
fn dominance_rows_come_with_a_summary_table() {
    let mut config = scenarios::load("dominance-z2").unwrap();
    config.checks.retain(|c| matches!(c, CheckSpec::Dominance(_)));
    let outcome = execute(&config, &RunOptions::default()).unwrap();
    assert!(outcome.all_passed());
    assert_eq!(outcome.dominance.len(), 3);
    for (row, m) in outcome.dominance.iter().zip([0.25, 0.5, 0.75]) {
        assert!((row.target_measure - m).abs() < 1e-15);
        assert!((row.preimage_measure - m).abs() < 1e-12);
        assert!((row.max_ratio * m - 1.0).abs() < 1e-8);
    }
}

#[test]
fn rerunning_a_scenario_reproduces_every_row() {
    let config = scenarios::load("clark-degree5").unwrap();
    let a = execute(&config, &RunOptions::default()).unwrap();
    let b = execute(&config, &RunOptions { jobs: Some(3), ..RunOptions::default() }).unwrap();
    assert_eq!(a.rows.len(), b.rows.len());
    for (x, y) in a.rows.iter().zip(&b.rows) {
        assert_eq!(format!("{x:?}"), format!("{y:?}"));
    }
}
