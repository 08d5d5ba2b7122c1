//! The identity suites behind each check name.

use std::f64::consts::TAU;

use anyhow::Context;
use hardy_core::clark::{disintegration_check, double_cauchy_identity};
use hardy_core::dominant::{dominance_check_on, preimage, DominancePlan, PreimageSet};
use hardy_core::kernels::poisson_kernel;
use hardy_core::model_space::{
    clark_inner_product, composition_identity, h2_inner_product, small_space_residual_of, BoundaryPlan, CircleFunction,
};
use hardy_core::random::{random_in_disk, random_interior_point, random_unimodular};
use hardy_core::{
    ArcSet, BoundaryQuadrature, ClarkMeasure, Complex64, DomainPoint, IdentityCheck, InnerFunction, KernelCombination,
    ProductDomain,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::*;
use crate::format::to_complex;
use crate::params;
use crate::radial::radial_probe;
use crate::report::{DominanceRow, Row};
use crate::slices::slice_formula_check;

/// Mean residuals at or below this level are roundoff; convergence orders
/// computed from them carry no information.
pub const ROUNDOFF_FLOOR: f64 = 1e-11;

/// Everything a check needs besides its own parameters.
pub struct CheckContext<'a> {
    pub inner: Option<&'a InnerFunction>,
    /// Compact JSON of the inner function, for summaries.
    pub inner_label: &'a str,
    pub seed: u64,
    /// Position in the check list; selects the random stream.
    pub index: usize,
}

impl CheckContext<'_> {
    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.index as u64);
        rng
    }

    fn inner(&self) -> anyhow::Result<&InnerFunction> {
        self.inner.context("this check needs an inner function")
    }
}

#[derive(Debug, Default)]
pub struct CheckOutput {
    pub rows: Vec<Row>,
    pub dominance: Vec<DominanceRow>,
}

impl From<Vec<Row>> for CheckOutput {
    fn from(rows: Vec<Row>) -> Self {
        CheckOutput { rows, dominance: Vec::new() }
    }
}

/// Runs one check; failures become rows instead of aborting.
pub fn run_check(spec: &CheckSpec, ctx: &CheckContext<'_>) -> CheckOutput {
    let name = spec.name();
    let result = match spec {
        CheckSpec::Disintegration(s) => disintegration(s, ctx).map(CheckOutput::from),
        CheckSpec::DoubleCauchy(s) => double_cauchy(s, ctx).map(CheckOutput::from),
        CheckSpec::ClarkNorm(s) => clark_norm(s, ctx).map(CheckOutput::from),
        CheckSpec::Composition(s) => composition(s, ctx).map(CheckOutput::from),
        CheckSpec::Dominance(s) => dominance(s, ctx),
        CheckSpec::Radial(s) => radial(s, ctx).map(CheckOutput::from),
        CheckSpec::SmallSpace(s) => small_space(s, ctx).map(CheckOutput::from),
        CheckSpec::Poisson(s) => poisson(s, ctx).map(CheckOutput::from),
        CheckSpec::ClarkCertify(s) => clark_certify(s, ctx).map(CheckOutput::from),
        CheckSpec::Slices(s) => slices(s, ctx).map(CheckOutput::from),
        CheckSpec::PreimageMeasure(s) => preimage_measure(s, ctx).map(CheckOutput::from),
    };
    result.unwrap_or_else(|e| vec![Row::error(name, String::new(), &e)].into())
}

fn tolerance(given: Option<f64>, inner: &InnerFunction, one_variable: f64, several: f64) -> f64 {
    given.unwrap_or(if inner.variables() == 1 { one_variable } else { several })
}

fn alphas(set: &AlphaSet, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match set {
        AlphaSet::Grid(n) => (0..*n).map(|j| TAU * j as f64 / *n as f64).collect(),
        AlphaSet::Angles(a) => a.clone(),
        AlphaSet::Random(n) => (0..*n).map(|_| rng.random_range(0.0..TAU)).collect(),
    }
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Evaluates independent work items in parallel, keeping input order and
/// turning errors into failed rows.
fn par_rows<T, F>(check: &str, items: Vec<(String, T)>, f: F) -> Vec<Row>
where
    T: Send + Sync,
    F: Fn(&str, &T) -> anyhow::Result<Row> + Sync + Send,
{
    items.par_iter().map(|(params, item)| f(params, item).unwrap_or_else(|e| Row::error(check, params.clone(), &e))).collect()
}

fn random_polynomial(rng: &mut ChaCha8Rng, k: usize, degree: i32, terms: usize) -> Vec<(Vec<i32>, Complex64)> {
    (0..terms)
        .map(|_| ((0..k).map(|_| rng.random_range(-degree..=degree)).collect(), random_in_disk(1.0, rng)))
        .collect()
}

fn eval_polynomial(p: &[(Vec<i32>, Complex64)], z: &[Complex64]) -> Complex64 {
    p.iter().map(|(m, c)| m.iter().zip(z).fold(*c, |acc, (&e, &x)| acc * x.powi(e))).sum()
}

fn disintegration(s: &DisintegrationSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let tol = tolerance(s.tolerance, inner, 1e-8, 1e-6);
    let mut rng = ctx.rng();
    let k = inner.variables();
    let rule = BoundaryQuadrature::tensor_trapezoid(&inner.domain(), s.boundary_resolution)?;
    let items = (0..s.trials)
        .map(|t| (params!("trial" = t, "degree" = s.degree), random_polynomial(&mut rng, k, s.degree as i32, s.terms)))
        .collect();
    Ok(par_rows("disintegration", items, |params, p| {
        let c = disintegration_check(inner, |z| Ok(eval_polynomial(p, z)), s.alpha_nodes, &rule, s.slice_resolution)?;
        Ok(Row::identity("disintegration", params.to_string(), &c, tol))
    }))
}

fn double_cauchy(s: &DoubleCauchySpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let tol = tolerance(s.tolerance, inner, 1e-12, 1e-6);
    let domain = inner.domain();
    let mut rng = ctx.rng();
    let items = (0..s.triples)
        .map(|t| {
            let z = random_interior_point(&domain, s.max_radius, &mut rng);
            let w = random_interior_point(&domain, s.max_radius, &mut rng);
            let alpha = random_unimodular(&mut rng);
            (params!("triple" = t, "alpha" = format!("{:.6}", alpha.arg())), (z, w, alpha))
        })
        .collect();
    Ok(par_rows("double_cauchy", items, |params, (z, w, alpha)| {
        let sigma = ClarkMeasure::new(inner, *alpha, s.slice_resolution)?;
        let c = double_cauchy_identity(&sigma, z.coords(), w.coords())?;
        let params = if c.near_singular { format!("{params};near_singular=true") } else { params.to_string() };
        Ok(Row::identity("double_cauchy", params, &c, tol))
    }))
}

fn clark_norm(s: &ClarkNormSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let tol = tolerance(s.tolerance, inner, 1e-10, 1e-6);
    let mut rng = ctx.rng();
    let thetas = alphas(&s.alphas, &mut rng);
    let mut items = Vec::new();
    for t in 0..s.trials {
        let f = KernelCombination::random(inner, s.nodes, s.max_radius, &mut rng)?;
        let g = KernelCombination::random(inner, s.nodes, s.max_radius, &mut rng)?;
        let exact = h2_inner_product(&f, &g)?;
        let scale = (f.norm_sqr()? * g.norm_sqr()?).sqrt();
        for &theta in &thetas {
            let params = params!("trial" = t, "alpha" = format!("{theta:.6}"));
            items.push((params, (f.clone(), g.clone(), exact, scale, theta)));
        }
    }
    Ok(par_rows("clark_norm", items, |params, (f, g, exact, scale, theta)| {
        let sigma = ClarkMeasure::new(inner, unit(*theta), s.slice_resolution)?;
        let lhs = clark_inner_product(f, g, &sigma)?;
        let c = IdentityCheck::relative(lhs, *exact, *scale);
        Ok(Row::identity("clark_norm", params.to_string(), &c, tol))
    }))
}

fn phi_function(phi: &PhiSpec) -> anyhow::Result<(String, CircleFunction<Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>>)> {
    Ok(match phi {
        PhiSpec::Re => ("re".into(), CircleFunction::smooth(Box::new(|l: Complex64| Complex64::new(l.re, 0.0)) as Box<_>)),
        PhiSpec::Power { n } => {
            let n = *n;
            (format!("power{n}"), CircleFunction::smooth(Box::new(move |l: Complex64| l.powi(n)) as Box<_>))
        }
        PhiSpec::Indicator { arcs } => {
            let q = ArcSet::from_endpoints(arcs)?;
            let jumps = q.arcs().iter().flat_map(|a| [a.start(), a.end()]).collect();
            let f = Box::new(move |l: Complex64| Complex64::new(if q.contains_point(l) { 1.0 } else { 0.0 }, 0.0));
            ("indicator".into(), CircleFunction { f: f as Box<_>, jumps })
        }
    })
}

fn composition(s: &CompositionSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let tol = tolerance(s.tolerance, inner, 1e-8, 1e-6);
    let mut rng = ctx.rng();
    let rule = if inner.variables() == 1 {
        None
    } else {
        Some(BoundaryQuadrature::tensor_trapezoid(&inner.domain(), s.resolution)?)
    };
    let phis = s.phis.iter().map(phi_function).collect::<anyhow::Result<Vec<_>>>()?;
    let mut items = Vec::new();
    for (i, (label, _)) in phis.iter().enumerate() {
        for t in 0..s.trials {
            let f = KernelCombination::random(inner, s.nodes, s.max_radius, &mut rng)?;
            let g = KernelCombination::random(inner, s.nodes, s.max_radius, &mut rng)?;
            items.push((params!("phi" = label, "trial" = t), (i, f, g)));
        }
    }
    Ok(par_rows("composition", items, |params, (i, f, g)| {
        let plan = match &rule {
            Some(rule) => BoundaryPlan::Rule(rule),
            None => BoundaryPlan::ArcSplit { nodes_per_arc: s.nodes_per_arc },
        };
        let c = composition_identity(f, g, &phis[*i].1, plan, s.alpha_nodes)?;
        Ok(Row::identity("composition", params.to_string(), &c, tol))
    }))
}

fn target_label(q: &ArcSet) -> String {
    let arcs: Vec<String> = q.endpoints().iter().map(|[a, b]| format!("[{a:.6},{b:.6})")).collect();
    arcs.join("+")
}

fn dominance(s: &DominanceSpec, ctx: &CheckContext<'_>) -> anyhow::Result<CheckOutput> {
    let inner = ctx.inner()?;
    let one_variable = inner.variables() == 1;
    let tol = tolerance(s.tolerance, inner, 1e-8, 1e-4);
    let plans: Vec<DominancePlan> = if one_variable {
        vec![DominancePlan::ArcWise { nodes_per_arc: s.nodes_per_arc }]
    } else {
        s.resolutions.iter().map(|&resolution| DominancePlan::Grid { resolution }).collect()
    };
    let mut rng = ctx.rng();
    let mut out = CheckOutput::default();
    for target in &s.targets {
        let q = target.build()?;
        let label = target_label(&q);
        let m = q.total_measure();
        let e = preimage(inner, &q)?;
        let sigma_e = match plans.last() {
            Some(DominancePlan::Grid { resolution }) => {
                e.measure(Some(&BoundaryQuadrature::tensor_trapezoid(&inner.domain(), *resolution)?))?
            }
            _ => e.measure(None)?,
        };
        let fs = (0..s.trials)
            .map(|_| KernelCombination::random(inner, s.nodes, s.max_radius, &mut rng))
            .collect::<hardy_core::Result<Vec<_>>>()?;
        let checks: Vec<anyhow::Result<Vec<IdentityCheck>>> = fs
            .par_iter()
            .map(|f| plans.iter().map(|p| Ok(dominance_check_on(f, &e, p)?)).collect())
            .collect();
        let finest = plan_label(plans.last().expect("at least one plan"));
        let mut max_ratio = 0.0f64;
        let mut max_residual = 0.0f64;
        let mut level_sums = vec![0.0; plans.len()];
        let mut failed = false;
        for (t, (f, c)) in fs.iter().zip(checks).enumerate() {
            let params = params!("target" = label, "trial" = t, "plan" = finest);
            match c {
                Ok(levels) => {
                    for (sum, c) in level_sums.iter_mut().zip(&levels) {
                        *sum += c.residual;
                    }
                    let last = levels.last().expect("at least one plan");
                    max_ratio = max_ratio.max(f.norm_sqr()? / last.rhs.re);
                    max_residual = max_residual.max(last.residual);
                    out.rows.push(Row::identity("dominance", params, last, tol));
                }
                Err(err) => {
                    failed = true;
                    out.rows.push(Row::error("dominance", params, &err));
                }
            }
        }
        if failed {
            continue;
        }
        if plans.len() > 1 {
            let means: Vec<f64> = level_sums.iter().map(|s| s / fs.len() as f64).collect();
            let orders = hardy_core::dominant::convergence_orders(&means);
            let order = orders.iter().copied().fold(f64::INFINITY, f64::min);
            let at_floor = means.iter().all(|&r| r <= ROUNDOFF_FLOOR);
            let levels: Vec<String> = means.iter().map(|r| format!("{r:.3e}")).collect();
            let params = params!("target" = label, "summary" = "order", "mean_residuals" = levels.join("/"), "at_roundoff" = at_floor);
            let pass = at_floor || order >= s.min_order;
            out.rows.push(Row::scalar("dominance", params, order, s.min_order, *means.last().unwrap(), s.min_order, pass));
        }
        let excess = max_ratio * m - 1.0;
        let pass = excess <= tol && sigma_e > 0.0 && sigma_e < 1.0;
        let params = params!("target" = label, "summary" = "constant", "preimage_measure" = sigma_e);
        out.rows.push(Row::scalar("dominance", params, max_ratio, 1.0 / m, excess, tol, pass));
        out.dominance.push(DominanceRow {
            inner: ctx.inner_label.to_string(),
            target: label,
            target_measure: m,
            preimage_measure: sigma_e,
            max_ratio,
            residual: max_residual,
        });
    }
    Ok(out)
}

fn plan_label(plan: &DominancePlan) -> String {
    match plan {
        DominancePlan::ArcWise { nodes_per_arc } => format!("arcwise{nodes_per_arc}"),
        DominancePlan::Grid { resolution } => format!("grid{resolution}"),
    }
}

fn build_functions(
    inner: &InnerFunction,
    explicit: &[FunctionSpec],
    trials: usize,
    nodes: usize,
    max_radius: f64,
    rng: &mut ChaCha8Rng,
) -> anyhow::Result<Vec<(String, KernelCombination)>> {
    let mut out = Vec::new();
    for (i, f) in explicit.iter().enumerate() {
        let points = f.nodes.iter().map(|w| DomainPoint::new(w.iter().copied().map(to_complex).collect())).collect();
        let coefficients = f.coefficients.iter().copied().map(to_complex).collect();
        let f = KernelCombination::new(inner.clone(), points, coefficients).with_context(|| format!("functions[{i}]"))?;
        out.push((format!("explicit{i}"), f));
    }
    for t in 0..trials {
        out.push((format!("random{t}"), KernelCombination::random(inner, nodes, max_radius, rng)?));
    }
    Ok(out)
}

fn radial(s: &RadialSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let tol = s.tolerance.unwrap_or(1e-6);
    let mut rng = ctx.rng();
    let radii = s.schedule();
    let thetas = alphas(&s.alphas, &mut rng);
    let functions = build_functions(inner, &s.functions, if s.functions.is_empty() { s.trials } else { 0 }, s.nodes, s.max_radius, &mut rng)?;
    let items: Vec<(String, f64)> = thetas.iter().map(|&t| (params!("alpha" = format!("{t:.6}")), t)).collect();
    let per_alpha: Vec<Vec<Row>> = items
        .par_iter()
        .map(|(params, theta)| {
            let run = || -> anyhow::Result<Vec<Row>> {
                let sigma = ClarkMeasure::new(inner, unit(*theta), s.slice_resolution)?;
                let mut rows = Vec::new();
                for (label, f) in &functions {
                    for (a, p) in radial_probe(f, &sigma, &radii)?.iter().enumerate() {
                        let last = p.deltas.last().copied().unwrap_or(f64::NAN);
                        let mut params = params!("f" = label, "alpha" = format!("{theta:.6}"), "atom" = a, "converged" = p.converged, "last_delta" = format!("{last:.3e}"));
                        if let Some(e) = &p.error {
                            params = format!("{params};error={}", e.replace(';', " "));
                        }
                        let residual = p.limit_error();
                        let pass = p.error.is_none() && p.converged && residual < tol;
                        rows.push(Row::new("radial", params, p.limit, p.boundary_value, residual, tol, pass));
                    }
                }
                Ok(rows)
            };
            run().unwrap_or_else(|e| vec![Row::error("radial", params.clone(), &e)])
        })
        .collect();
    Ok(per_alpha.into_iter().flatten().collect())
}

fn small_space(s: &SmallSpaceSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let mut rng = ctx.rng();
    let functions = build_functions(inner, &s.functions, s.trials, s.nodes, s.max_radius, &mut rng)?;
    let (tol, expect) = match s.expect {
        SmallExpectation::Small => (s.tolerance.unwrap_or(1e-10), "small"),
        SmallExpectation::NotSmall => (s.tolerance.unwrap_or(1e-2), "not_small"),
    };
    let items = functions.into_iter().map(|(label, f)| (params!("f" = label, "expect" = expect), f)).collect();
    Ok(par_rows("small_space", items, |params, f| {
        let r = small_space_residual_of(f, s.resolution)?;
        let pass = match s.expect {
            SmallExpectation::Small => r < tol,
            SmallExpectation::NotSmall => r > tol,
        };
        Ok(Row::scalar("small_space", params.to_string(), r, 0.0, r, tol, pass))
    }))
}

fn domain_of(given: &Option<Vec<usize>>, ctx: &CheckContext<'_>) -> anyhow::Result<ProductDomain> {
    match given {
        Some(dims) => Ok(ProductDomain::new(dims.clone())?),
        None => Ok(ctx.inner()?.domain()),
    }
}

fn poisson(s: &PoissonSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let domain = domain_of(&s.domain, ctx)?;
    let mut rng = ctx.rng();
    let (rule, monte_carlo) = match s.quadrature {
        QuadratureSpec::TensorTrapezoid { resolution } => (BoundaryQuadrature::tensor_trapezoid(&domain, resolution)?, false),
        QuadratureSpec::MonteCarlo { samples } => (BoundaryQuadrature::monte_carlo(&domain, samples, &mut rng)?, true),
    };
    let tol = s.tolerance.unwrap_or(1e-10);
    let items = (0..s.points)
        .map(|i| (params!("point" = i, "blocks" = format!("{:?}", domain.block_dims()).replace(", ", "x")), random_interior_point(&domain, s.max_radius, &mut rng)))
        .collect();
    Ok(par_rows("poisson", items, |params, z| {
        let kernel = |zeta: &[Complex64]| poisson_kernel(&domain, z.coords(), zeta);
        if monte_carlo {
            let (mean, se) = rule.mean_and_standard_error(kernel)?;
            let allowed = s.standard_errors * se;
            let r = (mean - 1.0).abs();
            Ok(Row::scalar("poisson", format!("{params};standard_error={se:.3e}"), mean, 1.0, r, allowed, r <= allowed))
        } else {
            let v = rule.integrate(|zeta| Ok(Complex64::new(kernel(zeta)?, 0.0)))?;
            let c = IdentityCheck::absolute(v, Complex64::new(1.0, 0.0));
            Ok(Row::identity("poisson", params.to_string(), &c, tol))
        }
    }))
}

fn clark_certify(s: &ClarkCertifySpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let tol = tolerance(s.tolerance, inner, 1e-10, 1e-6);
    let support_tol = s.support_tolerance.unwrap_or(1e-8);
    let mut rng = ctx.rng();
    let thetas = alphas(&s.alphas, &mut rng);
    let domain = inner.domain();
    let points: Vec<DomainPoint> = (0..s.points).map(|_| random_interior_point(&domain, s.max_radius, &mut rng)).collect();
    let per_alpha: Vec<Vec<Row>> = thetas
        .par_iter()
        .map(|&theta| {
            let label = format!("{theta:.6}");
            let sigma = match ClarkMeasure::new(inner, unit(theta), s.slice_resolution) {
                Ok(sigma) => sigma,
                Err(e) => return vec![Row::error("clark_certify", params!("alpha" = label), &e.into())],
            };
            let dev = sigma.support_deviation();
            let mut rows = vec![Row::scalar(
                "clark_certify",
                params!("alpha" = label, "part" = "support"),
                dev,
                0.0,
                dev,
                support_tol,
                dev < support_tol,
            )];
            rows.par_extend(points.par_iter().enumerate().map(|(i, z)| {
                let params = params!("alpha" = label, "part" = "poisson", "point" = i);
                match sigma.poisson_reproduction(z.coords()) {
                    Ok(c) => Row::identity("clark_certify", params, &c, tol),
                    Err(e) => Row::error("clark_certify", params, &e.into()),
                }
            }));
            rows
        })
        .collect();
    Ok(per_alpha.into_iter().flatten().collect())
}

fn slices(s: &SlicesSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let domain = domain_of(&s.domain, ctx)?;
    let rule = BoundaryQuadrature::tensor_trapezoid(&domain, s.resolution)?;
    let mut rng = ctx.rng();
    let mut rows = Vec::new();
    for (i, g) in s.functions.iter().enumerate() {
        let run = |rng: &mut ChaCha8Rng| -> anyhow::Result<Row> {
            let (label, check, default_tol) = match g {
                SliceFunction::One => ("one".to_string(), slice_formula_check(|_| Ok(Complex64::new(1.0, 0.0)), &rule, s.lambda_nodes)?, 1e-12),
                SliceFunction::Character { m } => {
                    anyhow::ensure!(m.len() == domain.total_dim(), "character has {} exponents for {} coordinates", m.len(), domain.total_dim());
                    let c = slice_formula_check(|z| Ok(m.iter().zip(z).fold(Complex64::new(1.0, 0.0), |acc, (&e, &x)| acc * x.powi(e))), &rule, s.lambda_nodes)?;
                    (format!("character{m:?}").replace(", ", "/"), c, 1e-12)
                }
                SliceFunction::KernelNorm { nodes, max_radius } => {
                    let f = KernelCombination::random(ctx.inner()?, *nodes, *max_radius, rng)?;
                    let c = slice_formula_check(|z| Ok(Complex64::new(f.eval(z)?.norm_sqr(), 0.0)), &rule, s.lambda_nodes)?;
                    ("kernel_norm".to_string(), c, 1e-8)
                }
            };
            let tol = s.tolerance.unwrap_or(default_tol);
            Ok(Row::identity("slices", params!("g" = label, "index" = i), &check, tol))
        };
        rows.push(run(&mut rng).unwrap_or_else(|e| Row::error("slices", params!("index" = i), &e)));
    }
    Ok(rows)
}

fn preimage_measure(s: &PreimageMeasureSpec, ctx: &CheckContext<'_>) -> anyhow::Result<Vec<Row>> {
    let inner = ctx.inner()?;
    let expect = s.expect.unwrap_or(if inner.value_at_origin().norm() == 0.0 {
        MeasureExpectation::Equal
    } else {
        MeasureExpectation::Proper
    });
    let tol = s.tolerance.unwrap_or(1e-12);
    let rule = if inner.variables() == 1 {
        None
    } else {
        Some(BoundaryQuadrature::tensor_trapezoid(&inner.domain(), s.resolution)?)
    };
    let mut rows = Vec::new();
    for target in &s.targets {
        let q = target.build()?;
        let label = target_label(&q);
        let e: PreimageSet = preimage(inner, &q)?;
        let sigma_e = e.measure(rule.as_ref())?;
        let m = q.total_measure();
        let r = (sigma_e - m).abs();
        rows.push(match expect {
            MeasureExpectation::Equal => {
                Row::scalar("preimage_measure", params!("target" = label, "expect" = "equal"), sigma_e, m, r, tol, r <= tol)
            }
            MeasureExpectation::Proper => Row::scalar(
                "preimage_measure",
                params!("target" = label, "expect" = "proper"),
                sigma_e,
                m,
                r,
                f64::NAN,
                sigma_e > 0.0 && sigma_e < 1.0,
            ),
        });
    }
    Ok(rows)
}
