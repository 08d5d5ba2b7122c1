//! The acceptance suite: every criterion is evaluated from the bundled
//! scenarios and reported on one line. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hardy_lab::config::CheckSpec;
use hardy_lab::{execute, scenarios, RunOptions, Row};

const DOMINANCE_SCENARIOS: [&str; 4] = ["dominance-z", "dominance-z2", "dominance-z3", "dominance-blaschke3"];

#[derive(Clone, Copy)]
enum Bound {
    /// The row passes its own check and its residual is below the bound.
    Below(f64),
    /// The row passes and its residual exceeds the bound.
    Above(f64),
    /// The row passes its own check (convergence orders, Monte-Carlo bands,
    /// properness).
    Pass,
}

impl Bound {
    fn holds(self, row: &Row) -> bool {
        row.pass
            && match self {
                Bound::Below(t) => row.residual < t,
                Bound::Above(t) => row.residual > t,
                Bound::Pass => true,
            }
    }
}

struct Selection {
    scenario: &'static str,
    check: &'static str,
    /// Every `key=value` fragment must appear in the row parameters.
    fragments: &'static [&'static str],
    bound: Bound,
}

fn sel(scenario: &'static str, check: &'static str, fragments: &'static [&'static str], bound: Bound) -> Selection {
    Selection { scenario, check, fragments, bound }
}

struct Criterion {
    title: &'static str,
    selections: Vec<Selection>,
    budget: Option<(Duration, Duration)>,
}

struct Verdict {
    rows: usize,
    failed: usize,
    max_residual: f64,
    first_failure: Option<String>,
}

impl Criterion {
    fn evaluate(&self, reports: &BTreeMap<&str, Vec<Row>>) -> Verdict {
        let mut v = Verdict { rows: 0, failed: 0, max_residual: 0.0, first_failure: None };
        for s in &self.selections {
            let rows: Vec<&Row> = reports[s.scenario]
                .iter()
                .filter(|r| r.check == s.check && s.fragments.iter().all(|f| r.params.split(';').any(|p| p == *f)))
                .collect();
            if rows.is_empty() {
                v.failed += 1;
                v.first_failure.get_or_insert_with(|| format!("{}: no {} rows", s.scenario, s.check));
            }
            for row in rows {
                v.rows += 1;
                if row.residual.is_finite() && !matches!(s.bound, Bound::Pass) {
                    v.max_residual = v.max_residual.max(row.residual);
                }
                if !s.bound.holds(row) {
                    v.failed += 1;
                    v.first_failure.get_or_insert_with(|| {
                        format!("{}: {} {} residual={:e}", s.scenario, row.check, row.params, row.residual)
                    });
                }
            }
        }
        v
    }
}

fn criteria(dominance_time: Duration, disintegration_time: Duration) -> Vec<Criterion> {
    use Bound::*;
    let mut c = Vec::new();

    c.push(Criterion {
        title: "dominance equality on exact preimage arcs",
        selections: DOMINANCE_SCENARIOS.iter().map(|s| sel(s, "dominance", &[], Below(1e-8))).collect(),
        budget: Some((dominance_time, Duration::from_secs(10))),
    });
    c.push(Criterion {
        title: "indicator dominance on the bidisk",
        selections: vec![
            sel("bidisk-monomial", "dominance", &["plan=grid1024"], Below(1e-4)),
            sel("bidisk-monomial", "dominance", &["summary=order"], Pass),
        ],
        budget: None,
    });
    c.push(Criterion {
        title: "Clark norm identity",
        selections: vec![
            sel("disk-blaschke", "clark_norm", &[], Below(1e-10)),
            sel("clark-degree5", "clark_norm", &[], Below(1e-10)),
            sel("shifted-zero", "clark_norm", &[], Below(1e-10)),
            sel("bidisk-monomial", "clark_norm", &[], Below(1e-6)),
        ],
        budget: None,
    });
    c.push(Criterion {
        title: "double Cauchy identity",
        selections: vec![
            sel("disk-blaschke", "double_cauchy", &[], Below(1e-12)),
            sel("clark-degree5", "double_cauchy", &[], Below(1e-12)),
            sel("shifted-zero", "double_cauchy", &[], Below(1e-12)),
            sel("bidisk-monomial", "double_cauchy", &[], Below(1e-6)),
        ],
        budget: None,
    });
    c.push(Criterion {
        title: "Clark disintegration",
        selections: vec![
            sel("disk-blaschke", "disintegration", &[], Below(1e-8)),
            sel("clark-degree5", "disintegration", &[], Below(1e-8)),
            sel("bidisk-monomial", "disintegration", &[], Below(1e-6)),
        ],
        budget: Some((disintegration_time, Duration::from_secs(60))),
    });
    let mut preimage: Vec<Selection> =
        DOMINANCE_SCENARIOS.iter().map(|s| sel(s, "preimage_measure", &["expect=equal"], Below(1e-12))).collect();
    preimage.extend([
        sel("disk-blaschke", "preimage_measure", &["expect=equal"], Below(1e-12)),
        sel("clark-degree5", "preimage_measure", &["expect=proper"], Pass),
        sel("bidisk-monomial", "preimage_measure", &["expect=equal"], Below(1e-12)),
        sel("shifted-zero", "preimage_measure", &["expect=proper"], Pass),
    ]);
    c.push(Criterion { title: "measure preservation of preimages", selections: preimage, budget: None });
    c.push(Criterion {
        title: "Poisson normalization",
        selections: vec![
            sel("poisson-normalization", "poisson", &["blocks=[1x1]"], Below(1e-10)),
            sel("poisson-normalization", "poisson", &["blocks=[1x1x1]"], Below(1e-10)),
            sel("poisson-normalization", "poisson", &["blocks=[2x1]"], Pass),
        ],
        budget: None,
    });
    let mut certify = Vec::new();
    for (scenario, tol) in [("disk-blaschke", 1e-10), ("clark-degree5", 1e-10), ("shifted-zero", 1e-10), ("bidisk-monomial", 1e-6)] {
        certify.push(sel(scenario, "clark_certify", &["part=poisson"], Below(tol)));
        certify.push(sel(scenario, "clark_certify", &["part=support"], Below(1e-8)));
    }
    c.push(Criterion { title: "Clark measure certification", selections: certify, budget: None });
    c.push(Criterion {
        title: "radial limits on small-space functions",
        selections: ["disk-blaschke", "clark-degree5", "shifted-zero"]
            .into_iter()
            .map(|s| sel(s, "radial", &[], Below(1e-6)))
            .collect(),
        budget: None,
    });
    c.push(Criterion {
        title: "small-space residual",
        selections: vec![
            sel("disk-blaschke", "small_space", &["expect=small"], Below(1e-10)),
            sel("clark-degree5", "small_space", &["expect=small"], Below(1e-10)),
            sel("shifted-zero", "small_space", &["expect=small"], Below(1e-10)),
            sel("bidisk-monomial", "small_space", &["expect=not_small"], Above(1e-2)),
        ],
        budget: None,
    });
    c
}

fn main() -> ExitCode {
    let options = RunOptions::default();
    let mut reports = BTreeMap::new();
    let mut dominance_time = Duration::ZERO;
    for (name, _) in scenarios::BUNDLED {
        let config = scenarios::load(name).expect("bundled scenario parses");
        let start = Instant::now();
        let outcome = execute(&config, &options).expect("bundled scenario runs");
        if DOMINANCE_SCENARIOS.contains(name) {
            dominance_time += start.elapsed();
        }
        reports.insert(*name, outcome.rows);
    }

    let mut disintegration_time = Duration::ZERO;
    for name in ["disk-blaschke", "clark-degree5", "bidisk-monomial"] {
        let mut config = scenarios::load(name).expect("bundled scenario parses");
        config.checks.retain(|c| matches!(c, CheckSpec::Disintegration(_)));
        let start = Instant::now();
        execute(&config, &options).expect("disintegration runs");
        disintegration_time += start.elapsed();
    }

    let mut failures = 0;
    for (i, criterion) in criteria(dominance_time, disintegration_time).iter().enumerate() {
        let v = criterion.evaluate(&reports);
        let mut ok = v.failed == 0;
        let mut line = format!("{} rows, max residual {:.2e}", v.rows, v.max_residual);
        if let Some((elapsed, limit)) = criterion.budget {
            ok &= elapsed < limit;
            line.push_str(&format!(", {:.1} s of {} s", elapsed.as_secs_f64(), limit.as_secs()));
        }
        if let Some(f) = &v.first_failure {
            line.push_str(&format!("; first failure {f}"));
        }
        println!("criterion {:>2} {} {}: {line}", i + 1, if ok { "PASS" } else { "FAIL" }, criterion.title);
        failures += usize::from(!ok);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
