//! Experiment runner for `hardy-core`.
//!
//! A scenario file names an inner function and a list of checks. Each check
//! evaluates both sides of an identity (Clark disintegration, the Cauchy
//! identities, the Clark norm identity, the composition and dominance
//! equalities, radial limits, small-space residuals) and emits report rows
//! with the residual, the tolerance and a pass flag.

pub mod checks;
pub mod config;
pub mod format;
pub mod radial;
pub mod report;
pub mod runner;
pub mod scenarios;
pub mod slices;

pub use config::ExperimentConfig;
pub use radial::{radial_probe, RadialProbeResult};
pub use report::Row;
pub use runner::{execute, run, RunOptions, RunOutcome};
pub use slices::slice_formula_check;
