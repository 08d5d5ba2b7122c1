//! Dominant sets `E = I⁻¹(Q)` for arcs `Q ⊂ T` and the equality
//! `m(Q)·‖f‖² = ∫_E |f|² dΣ` for `f` in the model space of `I`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clark::IdentityCheck;
use crate::quadrature::{CompensatedSum, GaussLegendre};
use crate::{Arc, ArcSet, BoundaryQuadrature, Error, FiniteBlaschke, InnerFunction, KernelCombination, Result};

/// Angular distance below which a grid node counts as lying on `∂Q`.
pub const TIE_TOL: f64 = 1e-12;

/// How a preimage is represented.
#[derive(Debug, Clone, PartialEq)]
pub enum Preimage {
    /// Exact arcs on `T` (one variable).
    Exact(ArcSet),
    /// Membership test `ζ ↦ arg I(ζ) ∈ Q` (several variables).
    Indicator,
}

/// `E = I⁻¹(Q) = {ζ ∈ ∂₀D : I(ζ) ∈ Q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreimageSet {
    inner: InnerFunction,
    target: ArcSet,
    representation: Preimage,
}

/// Computes `I⁻¹(Q)`; requires `0 < m(Q) < 1`.
pub fn preimage(inner: &InnerFunction, target: &ArcSet) -> Result<PreimageSet> {
    target.require_proper()?;
    let representation = if inner.domain().is_disk() {
        Preimage::Exact(preimage_arcs(&inner.as_disk_blaschke()?, target)?)
    } else {
        Preimage::Indicator
    };
    Ok(PreimageSet { inner: inner.clone(), target: target.clone(), representation })
}

/// Exact preimage arcs of a finite Blaschke product: `d` arcs per target
/// arc, from the level sets at both endpoints.
pub fn preimage_arcs(b: &FiniteBlaschke, target: &ArcSet) -> Result<ArcSet> {
    let mut arcs = Vec::with_capacity(b.degree() * target.len());
    for q in target.arcs() {
        let starts = level_angles(b, q.start())?;
        let ends = level_angles(b, q.end())?;
        // arg B increases strictly along T, so sorted starts and ends must
        // interleave; each start pairs with the next end counterclockwise.
        let first_end = ends.iter().position(|&e| e > starts[0]).unwrap_or(0);
        for (i, &s) in starts.iter().enumerate() {
            let e = ends[(first_end + i) % ends.len()];
            let next_start = starts[(i + 1) % starts.len()];
            let to_end = crate::blaschke::normalize_angle(e - s);
            let to_next = crate::blaschke::normalize_angle(next_start - s);
            if starts.len() > 1 && !(to_end < to_next) {
                return Err(Error::RootPairing);
            }
            arcs.push(Arc::new(s, to_end).map_err(|_| Error::RootPairing)?);
        }
    }
    ArcSet::new(arcs)
}

fn level_angles(b: &FiniteBlaschke, theta: f64) -> Result<Vec<f64>> {
    let mut v: Vec<f64> =
        b.level_set(Complex64::from_polar(1.0, theta))?.iter().map(|z| crate::blaschke::normalize_angle(z.arg())).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    if v.len() != b.degree() {
        return Err(Error::RootPairing);
    }
    Ok(v)
}

impl PreimageSet {
    pub fn inner(&self) -> &InnerFunction {
        &self.inner
    }

    pub fn target(&self) -> &ArcSet {
        &self.target
    }

    pub fn representation(&self) -> &Preimage {
        &self.representation
    }

    /// The exact arcs, one-variable case only.
    pub fn arcs(&self) -> Option<&ArcSet> {
        match &self.representation {
            Preimage::Exact(a) => Some(a),
            Preimage::Indicator => None,
        }
    }

    pub fn contains(&self, zeta: &[Complex64]) -> bool {
        match &self.representation {
            Preimage::Exact(a) => a.contains_point(zeta[0]),
            Preimage::Indicator => self.target.contains_point(self.inner.value(zeta)),
        }
    }

    /// Quadrature weight of a boundary node: the indicator of `E`, with
    /// weight 1/2 when `I(ζ)` lies on an endpoint of `Q`.
    pub fn weight(&self, zeta: &[Complex64]) -> f64 {
        self.target.indicator_weight(self.inner.value(zeta).arg(), TIE_TOL)
    }

    /// `Σ(E)`: exact arc-length sum for arcs, indicator quadrature otherwise.
    pub fn measure(&self, rule: Option<&BoundaryQuadrature>) -> Result<f64> {
        match (&self.representation, rule) {
            (Preimage::Exact(a), _) => Ok(a.total_measure()),
            (Preimage::Indicator, Some(rule)) => {
                self.inner.domain().check_same(rule.domain())?;
                let acc: CompensatedSum = rule.iter().map(|(z, w)| Complex64::new(w * self.weight(z), 0.0)).collect();
                Ok(acc.value().re)
            }
            (Preimage::Indicator, None) => Err(Error::invalid("indicator preimages need a boundary rule")),
        }
    }

    /// `∫_E g dΣ`.
    pub fn integrate<F>(&self, plan: &DominancePlan, mut g: F) -> Result<Complex64>
    where
        F: FnMut(&[Complex64]) -> Result<Complex64>,
    {
        match (&self.representation, plan) {
            (Preimage::Exact(arcs), DominancePlan::ArcWise { nodes_per_arc }) => {
                let rule = GaussLegendre::new(*nodes_per_arc)?;
                let mut acc = CompensatedSum::default();
                for arc in arcs.arcs() {
                    acc.add(arc.integrate(&rule, |t| g(&[Complex64::from_polar(1.0, t)]))?);
                }
                Ok(acc.value())
            }
            (_, DominancePlan::Grid { resolution }) => {
                let rule = BoundaryQuadrature::tensor_trapezoid(&self.inner.domain(), *resolution)?;
                let mut acc = CompensatedSum::default();
                for (i, (z, w)) in rule.iter().enumerate() {
                    let chi = match &self.representation {
                        Preimage::Exact(a) => a.indicator_weight(z[0].arg(), TIE_TOL),
                        Preimage::Indicator => self.weight(z),
                    };
                    if chi > 0.0 {
                        acc.add(g(z).map_err(|e| e.at_node(i))? * (w * chi));
                    }
                }
                Ok(acc.value())
            }
            (Preimage::Indicator, DominancePlan::ArcWise { .. }) => {
                Err(Error::invalid("arc-wise quadrature needs exact preimage arcs"))
            }
        }
    }
}

/// `Σ(I⁻¹(Q))`; `rule` is only used for indicator preimages.
pub fn preimage_measure(e: &PreimageSet, rule: Option<&BoundaryQuadrature>) -> Result<f64> {
    e.measure(rule)
}

/// Quadrature for `∫_E |f|² dΣ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominancePlan {
    /// Gauss–Legendre on each exact preimage arc.
    ArcWise { nodes_per_arc: usize },
    /// Tensor trapezoid grid with `resolution^k` nodes and indicator weights.
    Grid { resolution: usize },
}

impl DominancePlan {
    /// Arc-wise for one variable, grid otherwise.
    pub fn default_for(inner: &InnerFunction, nodes: usize) -> Self {
        if inner.domain().is_disk() {
            DominancePlan::ArcWise { nodes_per_arc: nodes }
        } else {
            DominancePlan::Grid { resolution: nodes }
        }
    }
}

/// `m(Q)·‖f‖²` (exact) against `∫_{I⁻¹(Q)} |f|² dΣ`, relative residual.
pub fn dominance_check(f: &KernelCombination, target: &ArcSet, plan: &DominancePlan) -> Result<IdentityCheck> {
    let e = preimage(f.inner(), target)?;
    dominance_check_on(f, &e, plan)
}

/// [`dominance_check`] with a precomputed preimage.
pub fn dominance_check_on(f: &KernelCombination, e: &PreimageSet, plan: &DominancePlan) -> Result<IdentityCheck> {
    if e.inner() != f.inner() {
        return Err(Error::invalid("preimage belongs to a different inner function"));
    }
    let lhs = e.target().total_measure() * f.norm_sqr()?;
    let rhs = e.integrate(plan, |z| Ok(Complex64::new(f.eval(z)?.norm_sqr(), 0.0)))?;
    let lhs = Complex64::new(lhs, 0.0);
    Ok(IdentityCheck::relative(lhs, rhs, lhs.norm()))
}

/// Observed dominance constants over random kernel combinations.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    pub target_measure: f64,
    /// `Σ(E)`.
    pub preimage_measure: f64,
    /// `max ‖f‖² / ∫_E |f|²` over the trials.
    pub max_ratio: f64,
    pub min_ratio: f64,
    /// Largest relative residual of the dominance equality.
    pub max_residual: f64,
    pub trials: usize,
}

impl DominanceReport {
    /// The constant forced by the dominance equality, `1/m(Q)`.
    pub fn bound(&self) -> f64 {
        1.0 / self.target_measure
    }

    /// Ratio within `1/m(Q)·(1 + tol)` and `0 < Σ(E) < 1`.
    pub fn passes(&self, tol: f64) -> bool {
        self.max_ratio <= self.bound() * (1.0 + tol) && self.preimage_measure > 0.0 && self.preimage_measure < 1.0
    }
}

/// Runs `trials` dominance checks on random kernel combinations with
/// `node_budget` nodes of radius at most `max_radius`.
pub fn dominance_constant_report(
    inner: &InnerFunction,
    target: &ArcSet,
    trials: usize,
    node_budget: usize,
    max_radius: f64,
    plan: &DominancePlan,
    seed: u64,
) -> Result<DominanceReport> {
    let e = preimage(inner, target)?;
    let preimage_measure = match plan {
        DominancePlan::Grid { resolution } => {
            e.measure(Some(&BoundaryQuadrature::tensor_trapezoid(&inner.domain(), *resolution)?))?
        }
        DominancePlan::ArcWise { .. } => e.measure(None)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DominanceReport {
        target_measure: target.total_measure(),
        preimage_measure,
        max_ratio: 0.0,
        min_ratio: f64::INFINITY,
        max_residual: 0.0,
        trials,
    };
    for _ in 0..trials {
        let f = KernelCombination::random(inner, node_budget, max_radius, &mut rng)?;
        let check = dominance_check_on(&f, &e, plan)?;
        let ratio = f.norm_sqr()? / check.rhs.re;
        report.max_ratio = report.max_ratio.max(ratio);
        report.min_ratio = report.min_ratio.min(ratio);
        report.max_residual = report.max_residual.max(check.residual);
    }
    Ok(report)
}

/// Observed orders `log2(e_i / e_{i+1})` for errors on successively doubled
/// resolutions.
pub fn convergence_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
