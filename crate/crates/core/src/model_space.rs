//! Large model spaces `K_I = H² ⊖ I·H²` through their reproducing kernel
//! `k(z, w) = (1 − I(z)·conj(I(w)))·C(z, w)`.
//!
//! Model-space functions are finite kernel combinations `f = Σ c_i k(·, w_i)`,
//! whose `H²` inner products are exact sums of kernel values.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use num_traits::One;
use rand::Rng;

use crate::clark::IdentityCheck;
use crate::fourier::{grid_coefficients, multi_index};
use crate::kernels::cauchy_kernel;
use crate::quadrature::{circle_grid, CompensatedSum, GaussLegendre};
use crate::random::{random_in_disk, random_interior_point};
use crate::{BoundaryQuadrature, ClarkMeasure, DomainPoint, Error, InnerFunction, ProductDomain, Result};

/// Minimum distance between nodes of a kernel combination.
pub const MIN_NODE_SEPARATION: f64 = 1e-10;

fn in_closure(domain: &ProductDomain, z: &[Complex64]) -> bool {
    domain.block_norms(z).all(|r| r <= 1.0 + crate::domain::BOUNDARY_TOL)
}

/// `k(z, w) = (1 − I(z)·conj(I(w)))·C(z, w)`; one of the points must be
/// interior, the other may lie on the distinguished boundary.
pub fn kernel_eval(inner: &InnerFunction, z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
    let domain = inner.domain();
    domain.check_point(z)?;
    domain.check_point(w)?;
    if !in_closure(&domain, z) || !in_closure(&domain, w) {
        return Err(Error::invalid("kernel arguments must lie in the closed domain"));
    }
    if !domain.is_interior(z) && !domain.is_interior(w) {
        return Err(Error::invalid("at least one kernel argument must be interior"));
    }
    kernel_unchecked(inner, &domain, z, w)
}

#[inline]
fn kernel_unchecked(inner: &InnerFunction, domain: &ProductDomain, z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
    Ok((Complex64::one() - inner.value(z) * inner.value(w).conj()) * cauchy_kernel(domain, z, w)?)
}

/// `f = Σ c_i k(·, w_i)` over interior nodes `w_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCombination {
    inner: InnerFunction,
    domain: ProductDomain,
    nodes: Vec<DomainPoint>,
    coefficients: Vec<Complex64>,
    /// Cached `I(w_i)`.
    node_values: Vec<Complex64>,
}

impl KernelCombination {
    pub fn new(inner: InnerFunction, nodes: Vec<DomainPoint>, coefficients: Vec<Complex64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != coefficients.len() {
            return Err(Error::invalid("need one coefficient per node and at least one node"));
        }
        let domain = inner.domain();
        for (i, w) in nodes.iter().enumerate() {
            domain.require_interior(w.coords()).map_err(|e| e.at_node(i))?;
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let d = nodes[i].coords().iter().zip(nodes[j].coords()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
                if d.sqrt() < MIN_NODE_SEPARATION {
                    return Err(Error::invalid(alloc::format!("nodes {i} and {j} coincide")));
                }
            }
        }
        let node_values = nodes.iter().map(|w| inner.value(w.coords())).collect();
        Ok(KernelCombination { inner, domain, nodes, coefficients, node_values })
    }

    /// The single kernel `k(·, w)`.
    pub fn kernel(inner: InnerFunction, w: DomainPoint) -> Result<Self> {
        Self::new(inner, alloc::vec![w], alloc::vec![Complex64::one()])
    }

    /// Random nodes uniform in the blocks of radius `max_radius` and
    /// coefficients uniform in the unit disk.
    pub fn random<R: Rng + ?Sized>(inner: &InnerFunction, count: usize, max_radius: f64, rng: &mut R) -> Result<Self> {
        let domain = inner.domain();
        let nodes = (0..count).map(|_| random_interior_point(&domain, max_radius, rng)).collect();
        let coefficients = (0..count).map(|_| random_in_disk(1.0, rng)).collect();
        Self::new(inner.clone(), nodes, coefficients)
    }

    pub fn inner(&self) -> &InnerFunction {
        &self.inner
    }

    pub fn nodes(&self) -> &[DomainPoint] {
        &self.nodes
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `f(z)` anywhere on the closed domain away from kernel poles.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.domain.check_point(z)?;
        let iz = self.inner.value(z);
        let mut acc = CompensatedSum::default();
        for ((w, &c), &iw) in self.nodes.iter().zip(&self.coefficients).zip(&self.node_values) {
            acc.add(c * (Complex64::one() - iz * iw.conj()) * cauchy_kernel(&self.domain, z, w.coords())?);
        }
        Ok(acc.value())
    }

    fn require_same_space(&self, other: &KernelCombination) -> Result<()> {
        if self.inner != other.inner {
            return Err(Error::invalid("kernel combinations belong to different model spaces"));
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> Result<f64> {
        Ok(h2_inner_product(self, self)?.re)
    }
}

/// `(f, g)_{H²} = Σ_i Σ_j c_i·conj(d_j)·k(v_j, w_i)`, exact.
pub fn h2_inner_product(f: &KernelCombination, g: &KernelCombination) -> Result<Complex64> {
    f.require_same_space(g)?;
    let mut acc = CompensatedSum::default();
    for (w, &c) in f.nodes.iter().zip(&f.coefficients) {
        for (v, &d) in g.nodes.iter().zip(&g.coefficients) {
            acc.add(c * d.conj() * kernel_unchecked(&f.inner, &f.domain, v.coords(), w.coords())?);
        }
    }
    Ok(acc.value())
}

/// Gram matrix `G_{ij} = (k_{w_j}, k_{w_i}) = k(w_i, w_j)`, row-major.
pub fn gram_matrix(inner: &InnerFunction, nodes: &[DomainPoint]) -> Result<Vec<Complex64>> {
    let mut g = Vec::with_capacity(nodes.len() * nodes.len());
    for a in nodes {
        for b in nodes {
            g.push(kernel_eval(inner, a.coords(), b.coords())?);
        }
    }
    Ok(g)
}

/// `∫ f·conj(g) dσ_α`, which equals `(f, g)_{H²}` for every `α` when `f` and
/// `g` are kernel combinations.
pub fn clark_inner_product(f: &KernelCombination, g: &KernelCombination, sigma: &ClarkMeasure) -> Result<Complex64> {
    f.require_same_space(g)?;
    if sigma.inner() != f.inner() {
        return Err(Error::invalid("Clark measure belongs to a different inner function"));
    }
    sigma.integrate(|zeta| Ok(f.eval(zeta)? * g.eval(zeta)?.conj()))
}

/// A function on `T` with finitely many jump angles.
pub struct CircleFunction<F> {
    pub f: F,
    /// Angles where `f` may be discontinuous.
    pub jumps: Vec<f64>,
}

impl<F: Fn(Complex64) -> Complex64> CircleFunction<F> {
    pub fn smooth(f: F) -> Self {
        CircleFunction { f, jumps: Vec::new() }
    }

    /// `∫_T f dm`: trapezoid with `nodes` points for smooth `f`, otherwise a
    /// Gauss–Legendre rule with `nodes` points on each piece between jumps.
    pub fn mean(&self, nodes: usize) -> Result<Complex64> {
        if self.jumps.is_empty() {
            let grid = circle_grid(nodes);
            let acc: CompensatedSum = grid.iter().map(|&a| (self.f)(a)).collect();
            return Ok(acc.value() / nodes as f64);
        }
        let gl = GaussLegendre::new(nodes)?;
        let cuts = sorted_angles(self.jumps.iter().copied());
        let mut acc = CompensatedSum::default();
        for (i, &a) in cuts.iter().enumerate() {
            let b = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + core::f64::consts::TAU };
            acc.add(gl.integrate(a, b, |t| Ok((self.f)(Complex64::from_polar(1.0, t))))?);
        }
        Ok(acc.value() / core::f64::consts::TAU)
    }
}

fn sorted_angles(it: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = it.map(crate::blaschke::normalize_angle).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    v
}

/// How boundary integrals `∫ … dΣ` are discretized.
pub enum BoundaryPlan<'a> {
    /// A precomputed rule on the distinguished boundary.
    Rule(&'a BoundaryQuadrature),
    /// One variable only: split `T` at the preimages of the jump angles and
    /// use a Gauss–Legendre rule with this many nodes on each arc.
    ArcSplit { nodes_per_arc: usize },
}

/// `∫ (Φ∘I)·f·conj(g) dΣ` against `(∫ Φ dm)·(f, g)_{H²}`; the residual is
/// relative to `‖f‖·‖g‖`, the natural bound on both sides for `|Φ| ≤ 1`.
pub fn composition_identity<F>(
    f: &KernelCombination,
    g: &KernelCombination,
    phi: &CircleFunction<F>,
    plan: BoundaryPlan<'_>,
    alpha_nodes: usize,
) -> Result<IdentityCheck>
where
    F: Fn(Complex64) -> Complex64,
{
    f.require_same_space(g)?;
    let inner = f.inner();
    let integrand = |zeta: &[Complex64]| Ok((phi.f)(inner.value(zeta)) * f.eval(zeta)? * g.eval(zeta)?.conj());
    let lhs = match plan {
        BoundaryPlan::Rule(rule) => {
            inner.domain().check_same(rule.domain())?;
            rule.integrate(integrand)?
        }
        BoundaryPlan::ArcSplit { nodes_per_arc } => {
            let b = inner.as_disk_blaschke()?;
            let mut cuts = Vec::new();
            for &t in &phi.jumps {
                cuts.extend(b.level_set(Complex64::from_polar(1.0, t))?.iter().map(|z| z.arg()));
            }
            let cuts = if cuts.is_empty() { alloc::vec![0.0] } else { sorted_angles(cuts.into_iter()) };
            let gl = GaussLegendre::new(nodes_per_arc)?;
            let mut acc = CompensatedSum::default();
            for (i, &a) in cuts.iter().enumerate() {
                let end = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + core::f64::consts::TAU };
                acc.add(gl.integrate(a, end, |t| integrand(&[Complex64::from_polar(1.0, t)]))?);
            }
            acc.value() / core::f64::consts::TAU
        }
    };
    let rhs = phi.mean(alpha_nodes)? * h2_inner_product(f, g)?;
    let scale = (f.norm_sqr()? * g.norm_sqr()?).sqrt();
    Ok(IdentityCheck::relative(lhs, rhs, scale))
}

/// Largest Fourier coefficient of `ζ ↦ I(ζ)·conj(f(ζ))` outside the
/// frequencies of `H²₀` (nonnegative multi-indices other than 0), from the
/// `N^k` grid. Small values certify approximate membership of `f` in the
/// small model space `{f : I·conj(f) ∈ H²₀}`.
pub fn small_space_residual<F>(inner: &InnerFunction, mut f: F, resolution: usize) -> Result<f64>
where
    F: FnMut(&[Complex64]) -> Result<Complex64>,
{
    let domain = inner.domain();
    let bound = inner.degree_bounds().into_iter().max().unwrap_or(0);
    if resolution <= 2 * bound {
        return Err(Error::invalid(alloc::format!(
            "resolution {resolution} aliases an inner function of degree {bound}; need > {}",
            2 * bound
        )));
    }
    let rule = BoundaryQuadrature::tensor_trapezoid(&domain, resolution)?;
    let mut samples = Vec::with_capacity(rule.len());
    for (i, (zeta, _)) in rule.iter().enumerate() {
        samples.push(inner.value(zeta) * f(zeta).map_err(|e| e.at_node(i))?.conj());
    }
    let k = domain.factors();
    let coeffs = grid_coefficients(&samples, resolution, k)?;
    let mut worst = 0.0f64;
    for (flat, c) in coeffs.iter().enumerate() {
        let m = multi_index(flat, resolution, k);
        let in_h20 = m.iter().all(|&x| x >= 0) && m.iter().any(|&x| x != 0);
        if !in_h20 {
            worst = worst.max(c.norm());
        }
    }
    Ok(worst)
}

/// [`small_space_residual`] for a kernel combination.
pub fn small_space_residual_of(f: &KernelCombination, resolution: usize) -> Result<f64> {
    small_space_residual(f.inner(), |z| f.eval(z), resolution)
}
