//! Experiment configuration files.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use crate::format::{ArcSetSpec, ComplexPair, InnerSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn default_out() -> PathBuf {
    PathBuf::from("reports")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_out")]
    pub path: PathBuf,
    #[serde(default)]
    pub format: Format,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { path: default_out(), format: Format::Csv }
    }
}

/// One scenario: an inner function and the checks to run against it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: String,
    #[serde(default)]
    pub description: String,
    /// Needed by every check except `poisson` and `slices` with an explicit
    /// domain.
    #[serde(default)]
    pub inner: Option<InnerSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

/// Values of `α ∈ T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlphaSet {
    /// `n` equispaced angles `2πj/n`.
    Grid(usize),
    /// Explicit angles.
    Angles(Vec<f64>),
    /// `n` uniform random angles from the scenario seed.
    Random(usize),
}

impl Default for AlphaSet {
    fn default() -> Self {
        AlphaSet::Grid(16)
    }
}

impl AlphaSet {
    pub fn len(&self) -> usize {
        match self {
            AlphaSet::Grid(n) | AlphaSet::Random(n) => *n,
            AlphaSet::Angles(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A target arc set, either explicit or `[start, start + 2π·measure)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Arcs(ArcSetSpec),
    Measure {
        measure: f64,
        #[serde(default)]
        start: f64,
    },
}

impl TargetSpec {
    pub fn build(&self) -> anyhow::Result<hardy_core::ArcSet> {
        match self {
            TargetSpec::Arcs(a) => a.build(),
            TargetSpec::Measure { measure, start } => {
                Ok(hardy_core::ArcSet::single(*start, start + measure * std::f64::consts::TAU)?)
            }
        }
    }
}

/// `Φ` in the composition identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiSpec {
    /// `Re λ`.
    Re,
    /// `λ^n`, negative `n` meaning `conj(λ)^{-n}`.
    Power { n: i32 },
    /// Indicator of an arc set.
    Indicator { arcs: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuadratureSpec {
    TensorTrapezoid { resolution: usize },
    MonteCarlo { samples: usize },
}

/// A kernel combination over the scenario's inner function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub nodes: Vec<Vec<ComplexPair>>,
    pub coefficients: Vec<ComplexPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallExpectation {
    #[default]
    Small,
    NotSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureExpectation {
    /// `Σ(E) = m(Q)`.
    Equal,
    /// `0 < Σ(E) < 1`.
    Proper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SliceFunction {
    One,
    Character { m: Vec<i32> },
    /// `|f|²` for a random kernel combination.
    KernelNorm {
        #[serde(default = "three")]
        nodes: usize,
        #[serde(default = "radius_08")]
        max_radius: f64,
    },
}

fn three() -> usize {
    3
}
fn five() -> usize {
    5
}
fn radius_08() -> f64 {
    0.8
}
fn radius_09() -> f64 {
    0.9
}
fn res_512() -> usize {
    512
}
fn res_64() -> usize {
    64
}
fn res_256() -> usize {
    256
}
fn alpha_256() -> usize {
    256
}
fn res_2048() -> usize {
    2048
}
fn one_u() -> usize {
    1
}
fn hundred() -> usize {
    100
}
fn ten() -> usize {
    10
}
fn twenty() -> usize {
    20
}
fn degree_8() -> u32 {
    8
}
fn six() -> usize {
    6
}
fn res_1024() -> usize {
    1024
}
fn grid_levels() -> Vec<usize> {
    vec![256, 512, 1024]
}
fn one_f() -> f64 {
    1.0
}
fn se_3() -> f64 {
    3.0
}
fn default_phis() -> Vec<PhiSpec> {
    vec![PhiSpec::Re]
}
fn default_slice_functions() -> Vec<SliceFunction> {
    vec![SliceFunction::One, SliceFunction::KernelNorm { nodes: 3, max_radius: 0.8 }]
}
fn default_poisson_quadrature() -> QuadratureSpec {
    QuadratureSpec::TensorTrapezoid { resolution: 64 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisintegrationSpec {
    /// Largest `|m_j|` of the random trigonometric polynomials.
    #[serde(default = "degree_8")]
    pub degree: u32,
    #[serde(default = "six")]
    pub terms: usize,
    #[serde(default = "three")]
    pub trials: usize,
    #[serde(default = "alpha_256")]
    pub alpha_nodes: usize,
    #[serde(default = "res_64")]
    pub boundary_resolution: usize,
    #[serde(default = "res_64")]
    pub slice_resolution: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCauchySpec {
    #[serde(default = "hundred")]
    pub triples: usize,
    #[serde(default = "radius_09")]
    pub max_radius: f64,
    #[serde(default = "res_512")]
    pub slice_resolution: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClarkNormSpec {
    #[serde(default)]
    pub alphas: AlphaSet,
    #[serde(default = "one_u")]
    pub trials: usize,
    #[serde(default = "five")]
    pub nodes: usize,
    #[serde(default = "radius_09")]
    pub max_radius: f64,
    #[serde(default = "res_512")]
    pub slice_resolution: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionSpec {
    #[serde(default = "default_phis")]
    pub phis: Vec<PhiSpec>,
    #[serde(default = "three")]
    pub trials: usize,
    #[serde(default = "three")]
    pub nodes: usize,
    #[serde(default = "radius_08")]
    pub max_radius: f64,
    /// Gauss–Legendre nodes per arc (one variable).
    #[serde(default = "res_2048")]
    pub nodes_per_arc: usize,
    /// Tensor grid resolution (several variables).
    #[serde(default = "res_256")]
    pub resolution: usize,
    #[serde(default = "res_2048")]
    pub alpha_nodes: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominanceSpec {
    pub targets: Vec<TargetSpec>,
    #[serde(default = "twenty")]
    pub trials: usize,
    #[serde(default = "five")]
    pub nodes: usize,
    #[serde(default = "radius_09")]
    pub max_radius: f64,
    /// Gauss–Legendre nodes per preimage arc (one variable).
    #[serde(default = "res_1024")]
    pub nodes_per_arc: usize,
    /// Successively doubled grid resolutions (several variables); the
    /// tolerance applies to the last.
    #[serde(default = "grid_levels")]
    pub resolutions: Vec<usize>,
    #[serde(default = "one_f")]
    pub min_order: f64,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialSpec {
    #[serde(default)]
    pub alphas: AlphaSet,
    /// Explicit functions; random ones are drawn when empty.
    #[serde(default)]
    pub functions: Vec<FunctionSpec>,
    #[serde(default = "three")]
    pub trials: usize,
    #[serde(default = "three")]
    pub nodes: usize,
    #[serde(default = "radius_08")]
    pub max_radius: f64,
    /// `r_j = 1 − 2^{−j}` for `j = 1..=dyadic_steps`, unless `radii` is given.
    #[serde(default = "twenty")]
    pub dyadic_steps: usize,
    #[serde(default)]
    pub radii: Option<Vec<f64>>,
    /// Slice resolution for several variables.
    #[serde(default = "four")]
    pub slice_resolution: usize,
    pub tolerance: Option<f64>,
}

fn four() -> usize {
    4
}

impl RadialSpec {
    pub fn schedule(&self) -> Vec<f64> {
        match &self.radii {
            Some(r) => r.clone(),
            None => crate::radial::dyadic_schedule(self.dyadic_steps),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmallSpaceSpec {
    #[serde(default)]
    pub functions: Vec<FunctionSpec>,
    /// Random functions drawn in addition to the explicit ones.
    #[serde(default)]
    pub trials: usize,
    #[serde(default = "five")]
    pub nodes: usize,
    #[serde(default = "radius_08")]
    pub max_radius: f64,
    #[serde(default = "res_256")]
    pub resolution: usize,
    #[serde(default)]
    pub expect: SmallExpectation,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonSpec {
    /// Block dimensions; defaults to the domain of the inner function.
    #[serde(default)]
    pub domain: Option<Vec<usize>>,
    #[serde(default = "ten")]
    pub points: usize,
    #[serde(default = "radius_09")]
    pub max_radius: f64,
    #[serde(default = "default_poisson_quadrature")]
    pub quadrature: QuadratureSpec,
    /// Absolute tolerance for grid rules.
    pub tolerance: Option<f64>,
    /// Allowed multiple of the standard error for Monte Carlo rules.
    #[serde(default = "se_3")]
    pub standard_errors: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClarkCertifySpec {
    #[serde(default)]
    pub alphas: AlphaSet,
    #[serde(default = "hundred")]
    pub points: usize,
    #[serde(default = "radius_09")]
    pub max_radius: f64,
    #[serde(default = "res_512")]
    pub slice_resolution: usize,
    pub tolerance: Option<f64>,
    pub support_tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlicesSpec {
    #[serde(default)]
    pub domain: Option<Vec<usize>>,
    #[serde(default = "default_slice_functions")]
    pub functions: Vec<SliceFunction>,
    #[serde(default = "res_512")]
    pub resolution: usize,
    #[serde(default = "res_64")]
    pub lambda_nodes: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreimageMeasureSpec {
    pub targets: Vec<TargetSpec>,
    /// Defaults to `equal` when `I(0) = 0` and `proper` otherwise.
    #[serde(default)]
    pub expect: Option<MeasureExpectation>,
    /// Grid resolution for indicator preimages.
    #[serde(default = "res_1024")]
    pub resolution: usize,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CheckSpec {
    Disintegration(DisintegrationSpec),
    DoubleCauchy(DoubleCauchySpec),
    ClarkNorm(ClarkNormSpec),
    Composition(CompositionSpec),
    Dominance(DominanceSpec),
    Radial(RadialSpec),
    SmallSpace(SmallSpaceSpec),
    Poisson(PoissonSpec),
    ClarkCertify(ClarkCertifySpec),
    Slices(SlicesSpec),
    PreimageMeasure(PreimageMeasureSpec),
}

impl CheckSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CheckSpec::Disintegration(_) => "disintegration",
            CheckSpec::DoubleCauchy(_) => "double_cauchy",
            CheckSpec::ClarkNorm(_) => "clark_norm",
            CheckSpec::Composition(_) => "composition",
            CheckSpec::Dominance(_) => "dominance",
            CheckSpec::Radial(_) => "radial",
            CheckSpec::SmallSpace(_) => "small_space",
            CheckSpec::Poisson(_) => "poisson",
            CheckSpec::ClarkCertify(_) => "clark_certify",
            CheckSpec::Slices(_) => "slices",
            CheckSpec::PreimageMeasure(_) => "preimage_measure",
        }
    }

    fn needs_inner(&self) -> bool {
        match self {
            CheckSpec::Poisson(p) => p.domain.is_none(),
            CheckSpec::Slices(s) => {
                s.domain.is_none() || s.functions.iter().any(|f| matches!(f, SliceFunction::KernelNorm { .. }))
            }
            _ => true,
        }
    }

    fn uses_monte_carlo(&self) -> bool {
        matches!(self, CheckSpec::Poisson(PoissonSpec { quadrature: QuadratureSpec::MonteCarlo { .. }, .. }))
    }

    fn validate(&self) -> anyhow::Result<()> {
        let radius = |r: f64| {
            if !(r > 0.0 && r < 1.0) {
                bail!("max_radius {r} must lie in (0, 1)");
            }
            Ok(())
        };
        let alphas = |a: &AlphaSet| {
            if a.is_empty() {
                bail!("alpha set is empty");
            }
            Ok(())
        };
        let targets = |t: &[TargetSpec]| {
            if t.is_empty() {
                bail!("no target arc sets");
            }
            for (i, q) in t.iter().enumerate() {
                q.build().and_then(|q| Ok(q.require_proper()?)).with_context(|| format!("targets[{i}]"))?;
            }
            Ok(())
        };
        match self {
            CheckSpec::Disintegration(s) => {
                if s.alpha_nodes < 2 || s.trials == 0 || s.terms == 0 {
                    bail!("need alpha_nodes ≥ 2 and at least one trial and term");
                }
                if s.boundary_resolution <= 2 * s.degree as usize {
                    bail!("boundary_resolution must exceed twice the degree");
                }
            }
            CheckSpec::DoubleCauchy(s) => radius(s.max_radius)?,
            CheckSpec::ClarkNorm(s) => {
                radius(s.max_radius)?;
                alphas(&s.alphas)?;
            }
            CheckSpec::Composition(s) => {
                radius(s.max_radius)?;
                if s.phis.is_empty() {
                    bail!("no functions Φ");
                }
            }
            CheckSpec::Dominance(s) => {
                radius(s.max_radius)?;
                targets(&s.targets)?;
                if s.resolutions.is_empty() {
                    bail!("no grid resolutions");
                }
            }
            CheckSpec::Radial(s) => {
                radius(s.max_radius)?;
                alphas(&s.alphas)?;
                crate::radial::validate_schedule(&s.schedule())?;
            }
            CheckSpec::SmallSpace(s) => {
                radius(s.max_radius)?;
                if s.functions.is_empty() && s.trials == 0 {
                    bail!("no functions to test");
                }
            }
            CheckSpec::Poisson(s) => {
                radius(s.max_radius)?;
                if s.points == 0 {
                    bail!("no evaluation points");
                }
            }
            CheckSpec::ClarkCertify(s) => {
                radius(s.max_radius)?;
                alphas(&s.alphas)?;
            }
            CheckSpec::Slices(s) => {
                if s.functions.is_empty() {
                    bail!("no functions to integrate");
                }
            }
            CheckSpec::PreimageMeasure(s) => targets(&s.targets)?,
        }
        Ok(())
    }
}

impl ExperimentConfig {
    /// Parses and validates, reporting the offending field and position.
    pub fn parse(text: &str, origin: &str) -> anyhow::Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            anyhow!("{origin}: field `{path}`: {}", e.into_inner())
        })?;
        config.validate().with_context(|| format!("{origin}: invalid configuration"))?;
        Ok(config)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.scenario.trim().is_empty() {
            bail!("scenario name is empty");
        }
        if self.checks.is_empty() {
            bail!("check list is empty");
        }
        if let Some(inner) = &self.inner {
            inner.build().context("inner")?;
        }
        for (i, check) in self.checks.iter().enumerate() {
            let at = || format!("checks[{i}] ({})", check.name());
            if check.needs_inner() && self.inner.is_none() {
                bail!("{}: needs an inner function", at());
            }
            if check.uses_monte_carlo() && self.seed.is_none() {
                bail!("{}: Monte Carlo quadrature needs a seed", at());
            }
            check.validate().with_context(at)?;
        }
        Ok(())
    }
}

/// Every check name with a one-paragraph description.
pub const CHECKS: &[(&str, &str)] = &[
    (
        "disintegration",
        "∫_T ∫ g dσ_α dm(α) against ∫ g dΣ for random trigonometric polynomials g.\n\
         Parameters: degree (8), terms (6), trials (3), alpha_nodes (256), boundary_resolution (64),\n\
         slice_resolution (64), tolerance (1e-8 one variable, 1e-6 several; absolute).",
    ),
    (
        "double_cauchy",
        "∫ C(z,ζ)C(ζ,w) dσ_α(ζ) against its closed form at random (z, w, α).\n\
         Parameters: triples (100), max_radius (0.9), slice_resolution (512),\n\
         tolerance (1e-12 one variable, 1e-6 several; relative to the closed form).",
    ),
    (
        "clark_norm",
        "∫ f·conj(g) dσ_α against (f, g) in H² for random kernel combinations f, g.\n\
         Parameters: alphas ({\"grid\": 16}), trials (1), nodes (5), max_radius (0.9), slice_resolution (512),\n\
         tolerance (1e-10 one variable, 1e-6 several; relative to ‖f‖‖g‖).",
    ),
    (
        "composition",
        "∫ Φ(I)·f·conj(g) dΣ against (∫ Φ dm)·(f, g) in H².\n\
         Parameters: phis ([{\"kind\": \"re\"}]; also power, indicator), trials (3), nodes (3), max_radius (0.8),\n\
         nodes_per_arc (2048), resolution (256), alpha_nodes (2048),\n\
         tolerance (1e-8 one variable, 1e-6 several; relative to ‖f‖‖g‖).",
    ),
    (
        "dominance",
        "m(Q)·‖f‖² against ∫ over I⁻¹(Q) of |f|² dΣ, plus the observed dominance constant per target.\n\
         Parameters: targets (required; {\"arcs\": [[a, b]]} or {\"measure\": m, \"start\": a}), trials (20),\n\
         nodes (5), max_radius (0.9), nodes_per_arc (1024), resolutions ([256, 512, 1024]), min_order (1),\n\
         tolerance (1e-8 one variable, 1e-4 several; relative).",
    ),
    (
        "radial",
        "Radial limits of kernel combinations at every atom of σ_α, compared with closed-form boundary values.\n\
         Parameters: alphas ({\"grid\": 16}), functions ([]), trials (3), nodes (3), max_radius (0.8),\n\
         dyadic_steps (20) or radii, slice_resolution (4), tolerance (1e-6).",
    ),
    (
        "small_space",
        "Largest Fourier coefficient of I·conj(f) outside the frequencies of H²₀.\n\
         Parameters: functions ([]), trials (0), nodes (5), max_radius (0.8), resolution (256),\n\
         expect (small | not_small), tolerance (1e-10 for small, threshold 1e-2 for not_small).",
    ),
    (
        "poisson",
        "∫ P(z, ·) dΣ = 1 at random interior z.\n\
         Parameters: domain (inner function's), points (10), max_radius (0.9),\n\
         quadrature ({\"kind\": \"tensor_trapezoid\", \"resolution\": 64} or monte_carlo with samples),\n\
         tolerance (1e-10), standard_errors (3, Monte Carlo).",
    ),
    (
        "clark_certify",
        "Atoms satisfy |I(ζ) − α| small and σ_α reproduces (1 − |I(z)|²)/|α − I(z)|² at random z.\n\
         Parameters: alphas ({\"grid\": 16}), points (100), max_radius (0.9), slice_resolution (512),\n\
         tolerance (1e-10 one variable, 1e-6 several), support_tolerance (1e-8).",
    ),
    (
        "slices",
        "∫ g dΣ against ∫∫ g(λζ) dm(λ) dΣ(ζ).\n\
         Parameters: domain (inner function's), functions ([one, kernel_norm]; also character with m),\n\
         resolution (512), lambda_nodes (64), tolerance (1e-12 for one and characters, 1e-8 otherwise).",
    ),
    (
        "preimage_measure",
        "Σ(I⁻¹(Q)) against m(Q): equal when I(0) = 0, strictly between 0 and 1 otherwise.\n\
         Parameters: targets (required), expect (equal | proper; automatic), resolution (1024), tolerance (1e-12).",
    ),
];

pub fn describe(check: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(name, _)| *name == check).map(|(_, d)| *d)
}
