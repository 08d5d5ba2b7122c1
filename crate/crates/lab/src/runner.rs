//! Runs every check of a configuration and writes the reports.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use rayon::prelude::*;

use crate::checks::{run_check, CheckContext, CheckOutput};
use crate::config::{ExperimentConfig, Format};
use crate::format::InnerSpec;
use crate::report::{write_csv, write_json, DominanceRow, Row};

/// Command-line overrides of the configuration.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
}

#[derive(Debug, Default)]
pub struct RunOutcome {
    pub rows: Vec<Row>,
    pub dominance: Vec<DominanceRow>,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Runs the checks without touching the file system. Rows come back in
/// configuration order whatever the thread count.
pub fn execute(config: &ExperimentConfig, options: &RunOptions) -> anyhow::Result<RunOutcome> {
    config.validate()?;
    let inner = config.inner.as_ref().map(InnerSpec::build).transpose()?;
    let label = config.inner.as_ref().map(|s| serde_json::to_string(s)).transpose()?.unwrap_or_default();
    let seed = options.seed.or(config.seed).unwrap_or(0);
    let work = || -> Vec<CheckOutput> {
        config
            .checks
            .par_iter()
            .enumerate()
            .map(|(index, spec)| run_check(spec, &CheckContext { inner: inner.as_ref(), inner_label: &label, seed, index }))
            .collect()
    };
    let outputs = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?.install(work),
        None => work(),
    };
    let mut outcome = RunOutcome::default();
    for out in outputs {
        outcome.rows.extend(out.rows.into_iter().map(|mut r| {
            r.scenario = config.scenario.clone();
            r
        }));
        outcome.dominance.extend(out.dominance);
    }
    Ok(outcome)
}

/// Runs the checks and writes `<scenario>.<ext>`, plus
/// `<scenario>-dominance.<ext>` when dominance checks ran.
pub fn run(config: &ExperimentConfig, options: &RunOptions) -> anyhow::Result<RunOutcome> {
    let mut outcome = execute(config, options)?;
    let dir = options.out_dir.clone().unwrap_or_else(|| config.output.path.clone());
    let format = options.format.unwrap_or(config.output.format);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let main = dir.join(format!("{}.{}", config.scenario, format.extension()));
    write_rows(&main, format, &outcome.rows)?;
    outcome.files.push(main);
    if !outcome.dominance.is_empty() {
        let path = dir.join(format!("{}-dominance.{}", config.scenario, format.extension()));
        write_rows(&path, format, &outcome.dominance)?;
        outcome.files.push(path);
    }
    Ok(outcome)
}

fn write_rows<T: serde::Serialize>(path: &Path, format: Format, rows: &[T]) -> anyhow::Result<()> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let out = std::io::BufWriter::new(file);
    match format {
        Format::Csv => write_csv(out, rows),
        Format::Json => write_json(out, rows),
    }
    .with_context(|| format!("writing {}", path.display()))
}
