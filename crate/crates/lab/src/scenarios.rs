//! Scenario files shipped with the crate.

use crate::ExperimentConfig;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../scenarios/", $name, ".json")))),*]
    };
}

/// `(name, JSON text)` of every bundled scenario.
pub const BUNDLED: &[(&str, &str)] = bundled![
    "disk-blaschke",
    "bidisk-monomial",
    "dominance-z",
    "dominance-z2",
    "dominance-z3",
    "dominance-blaschke3",
    "shifted-zero",
    "clark-degree5",
    "poisson-normalization",
];

pub fn get(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn load(name: &str) -> anyhow::Result<ExperimentConfig> {
    let text = get(name).ok_or_else(|| anyhow::anyhow!("no bundled scenario named `{name}`"))?;
    ExperimentConfig::parse(text, &format!("scenario {name}"))
}
