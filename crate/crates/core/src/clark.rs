//! Clark measures `σ_α[I]`, the unique positive measures with
//! `P[σ_α](z) = Re((α + I(z))/(α − I(z)))`.
//!
//! For a finite Blaschke product `B` of degree `d` the measure is atomic: it
//! puts mass `1/|B′(ζ)|` on each of the `d` solutions of `B(ζ) = α`. On a
//! polydisk the measure is represented through its slices: for boundary
//! points `ξ` the slice measure is the Clark measure of `λ ↦ I(λξ)`, and
//! integrals against `σ_α` are averages of exact slice integrals over `ξ`.
//! Every measure built here is certified against the defining Poisson
//! identity by the tests.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::One;

use crate::blaschke::normalize_angle;
use crate::kernels::{cauchy_kernel, disk_poisson, poisson_kernel};
use crate::quadrature::{circle_grid, CompensatedSum};
use crate::{BoundaryQuadrature, Error, FiniteBlaschke, InnerFunction, Result};

/// Default number of slice nodes per torus dimension.
pub const DEFAULT_SLICE_RESOLUTION: usize = 512;

/// Values of `α` closer than this to `I(z)` make the Cauchy identity
/// ill-conditioned and are flagged.
pub const NEAR_SINGULAR: f64 = 1e-12;

/// Total mass of `σ_α` for an inner function with `I(0) = b`, from the
/// Poisson identity at the origin.
pub fn expected_mass(value_at_origin: Complex64, alpha: Complex64) -> f64 {
    (1.0 - value_at_origin.norm_sqr()) / (alpha - value_at_origin).norm_sqr()
}

/// `Re((α + w)/(α − w)) = (1 − |w|²)/|α − w|²`.
pub fn clark_poisson_target(alpha: Complex64, w: Complex64) -> f64 {
    (1.0 - w.norm_sqr()) / (alpha - w).norm_sqr()
}

fn check_unimodular(alpha: Complex64) -> Result<Complex64> {
    if !alpha.is_finite() || (alpha.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(alloc::format!("alpha = {alpha} is not unimodular")));
    }
    Ok(alpha / alpha.norm())
}

/// Clark measure of a finite Blaschke product: atoms sorted by argument.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicClark {
    alpha: Complex64,
    atoms: Vec<(Complex64, f64)>,
}

impl AtomicClark {
    pub fn new(b: &FiniteBlaschke, alpha: Complex64) -> Result<Self> {
        let alpha = check_unimodular(alpha)?;
        let atoms = b
            .level_set(alpha)?
            .into_iter()
            .map(|zeta| (zeta, 1.0 / b.derivative_modulus(zeta)))
            .collect();
        Ok(AtomicClark { alpha, atoms })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// `(ζ_j, w_j)` pairs.
    pub fn atoms(&self) -> &[(Complex64, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// `Σ_j w_j g(ζ_j)`.
    pub fn integrate<F>(&self, mut g: F) -> Result<Complex64>
    where
        F: FnMut(Complex64) -> Result<Complex64>,
    {
        let mut acc = CompensatedSum::default();
        for (i, &(zeta, w)) in self.atoms.iter().enumerate() {
            acc.add(g(zeta).map_err(|e| e.at_node(i))? * w);
        }
        Ok(acc.value())
    }

    /// `P[σ_α](z)` for `z` in the disk.
    pub fn poisson_integral(&self, z: Complex64) -> f64 {
        self.atoms.iter().map(|&(zeta, w)| w * disk_poisson(z, zeta)).sum()
    }
}

/// Slice representation of `σ_α[I]` on a polydisk.
#[derive(Debug, Clone)]
pub struct SliceClark {
    alpha: Complex64,
    inner: InnerFunction,
    slice_rule: BoundaryQuadrature,
    degree: usize,
    /// `degree` atoms `(λ, weight)` per slice node, in rule order.
    atoms: Vec<(Complex64, f64)>,
}

impl SliceClark {
    pub fn new(inner: &InnerFunction, alpha: Complex64, resolution: usize) -> Result<Self> {
        let alpha = check_unimodular(alpha)?;
        let slice_rule = BoundaryQuadrature::tensor_trapezoid(&inner.domain(), resolution)?;
        if let Some((_, degree)) = inner.monomial_slice(slice_rule.node(0)) {
            let mut atoms = Vec::with_capacity(degree * slice_rule.len());
            for (xi, _) in slice_rule.iter() {
                let (c, _) = inner.monomial_slice(xi).expect("monomial");
                let base = normalize_angle((alpha / c).arg()) / degree as f64;
                let w = 1.0 / degree as f64;
                atoms.extend((0..degree).map(|j| {
                    (Complex64::from_polar(1.0, base + TAU * j as f64 / degree as f64), w)
                }));
            }
            return Ok(SliceClark { alpha, inner: inner.clone(), slice_rule, degree, atoms });
        }
        let mut atoms = Vec::new();
        let mut degree = 0;
        for (i, (xi, _)) in slice_rule.iter().enumerate() {
            let sliced = inner.slice(xi).map_err(|e| e.at_node(i))?;
            let clark = AtomicClark::new(&sliced.one_variable, alpha).map_err(|e| e.at_node(i))?;
            if i == 0 {
                degree = clark.atoms.len();
                atoms.reserve(degree * slice_rule.len());
            } else if clark.atoms.len() != degree {
                return Err(Error::invalid("slice degree varies across the torus").at_node(i));
            }
            atoms.extend_from_slice(&clark.atoms);
        }
        Ok(SliceClark { alpha, inner: inner.clone(), slice_rule, degree, atoms })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn inner(&self) -> &InnerFunction {
        &self.inner
    }

    pub fn slice_rule(&self) -> &BoundaryQuadrature {
        &self.slice_rule
    }

    pub fn resolution(&self) -> usize {
        self.slice_rule.resolution()
    }

    /// Degree of every slice `I_ξ`.
    pub fn slice_degree(&self) -> usize {
        self.degree
    }

    /// Atoms of the slice measure at slice node `i`.
    pub fn slice_atoms(&self, i: usize) -> &[(Complex64, f64)] {
        &self.atoms[i * self.degree..(i + 1) * self.degree]
    }

    /// `∫ g dσ_α = ∫ Σ_j w_j(ξ) g(λ_j(ξ)·ξ) dΣ(ξ)`; `g` receives points
    /// `λ·ξ` of the distinguished boundary.
    pub fn integrate<F>(&self, mut g: F) -> Result<Complex64>
    where
        F: FnMut(&[Complex64]) -> Result<Complex64>,
    {
        let mut point = alloc::vec![Complex64::default(); self.inner.variables()];
        let mut acc = CompensatedSum::default();
        for (i, (xi, outer_w)) in self.slice_rule.iter().enumerate() {
            for &(lambda, w) in self.slice_atoms(i) {
                for (p, x) in point.iter_mut().zip(xi) {
                    *p = lambda * x;
                }
                acc.add(g(&point).map_err(|e| e.at_node(i))? * (w * outer_w));
            }
        }
        Ok(acc.value())
    }

    /// Calls `f(point, weight)` on every weighted support point of the slice
    /// representation.
    pub fn for_each_atom<F: FnMut(&[Complex64], f64)>(&self, mut f: F) {
        let mut point = alloc::vec![Complex64::default(); self.inner.variables()];
        for (i, (xi, outer_w)) in self.slice_rule.iter().enumerate() {
            for &(lambda, w) in self.slice_atoms(i) {
                for (p, x) in point.iter_mut().zip(xi) {
                    *p = lambda * x;
                }
                f(&point, w * outer_w);
            }
        }
    }
}

/// `σ_α[I]` in whichever exact representation the inner function admits.
#[derive(Debug, Clone)]
pub enum ClarkMeasure {
    Atomic { inner: InnerFunction, measure: AtomicClark },
    Sliced(SliceClark),
}

impl ClarkMeasure {
    /// Atomic for functions of one variable, sliced otherwise.
    pub fn new(inner: &InnerFunction, alpha: Complex64, slice_resolution: usize) -> Result<Self> {
        if inner.variables() == 1 {
            let b = inner.as_disk_blaschke()?;
            Ok(ClarkMeasure::Atomic { inner: inner.clone(), measure: AtomicClark::new(&b, alpha)? })
        } else {
            Ok(ClarkMeasure::Sliced(SliceClark::new(inner, alpha, slice_resolution)?))
        }
    }

    pub fn alpha(&self) -> Complex64 {
        match self {
            ClarkMeasure::Atomic { measure, .. } => measure.alpha(),
            ClarkMeasure::Sliced(s) => s.alpha(),
        }
    }

    pub fn inner(&self) -> &InnerFunction {
        match self {
            ClarkMeasure::Atomic { inner, .. } => inner,
            ClarkMeasure::Sliced(s) => s.inner(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, ClarkMeasure::Atomic { .. })
    }

    /// `∫ g dσ_α` for a function on the distinguished boundary.
    pub fn integrate<F>(&self, mut g: F) -> Result<Complex64>
    where
        F: FnMut(&[Complex64]) -> Result<Complex64>,
    {
        match self {
            ClarkMeasure::Atomic { measure, .. } => measure.integrate(|z| g(&[z])),
            ClarkMeasure::Sliced(s) => s.integrate(g),
        }
    }

    pub fn for_each_atom<F: FnMut(&[Complex64], f64)>(&self, mut f: F) {
        match self {
            ClarkMeasure::Atomic { measure, .. } => {
                for &(z, w) in measure.atoms() {
                    f(&[z], w);
                }
            }
            ClarkMeasure::Sliced(s) => s.for_each_atom(f),
        }
    }

    pub fn total_mass(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        self.for_each_atom(|_, w| acc.add(Complex64::new(w, 0.0)));
        acc.value().re
    }

    /// `max |I(ζ) − α|` over the support points.
    pub fn support_deviation(&self) -> f64 {
        let inner = self.inner();
        let alpha = self.alpha();
        let mut worst = 0.0f64;
        self.for_each_atom(|p, _| worst = worst.max((inner.value(p) - alpha).norm()));
        worst
    }

    /// `∫ P(z, ·) dσ_α` against `(1 − |I(z)|²)/|α − I(z)|²`; the residual is
    /// relative to `max(1, rhs)`.
    pub fn poisson_reproduction(&self, z: &[Complex64]) -> Result<IdentityCheck> {
        let inner = self.inner();
        let domain = inner.domain();
        let iz = inner.eval(z)?;
        let lhs = self.integrate(|zeta| Ok(Complex64::new(poisson_kernel(&domain, z, zeta)?, 0.0)))?;
        let rhs = Complex64::new(clark_poisson_target(self.alpha(), iz), 0.0);
        Ok(IdentityCheck::relative(lhs, rhs, rhs.norm().max(1.0)))
    }
}

/// Two independently computed sides of an identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Set when the closed form is evaluated close to a pole.
    pub near_singular: bool,
}

impl IdentityCheck {
    pub fn absolute(lhs: Complex64, rhs: Complex64) -> Self {
        IdentityCheck { lhs, rhs, residual: (lhs - rhs).norm(), near_singular: false }
    }

    pub fn relative(lhs: Complex64, rhs: Complex64, scale: f64) -> Self {
        IdentityCheck { lhs, rhs, residual: (lhs - rhs).norm() / scale, near_singular: false }
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.residual.is_finite() && self.residual < tolerance
    }
}

/// `∫_T ∫ g dσ_α dm(α)` against `∫ g dΣ`; the outer integral uses the
/// `alpha_nodes`-point trapezoid rule on `T`. Absolute residual.
pub fn disintegration_check<F>(
    inner: &InnerFunction,
    mut g: F,
    alpha_nodes: usize,
    boundary_rule: &BoundaryQuadrature,
    slice_resolution: usize,
) -> Result<IdentityCheck>
where
    F: FnMut(&[Complex64]) -> Result<Complex64>,
{
    inner.domain().check_same(boundary_rule.domain())?;
    if alpha_nodes < 2 {
        return Err(Error::invalid("alpha rule needs at least 2 nodes"));
    }
    let mut lhs = CompensatedSum::default();
    for alpha in circle_grid(alpha_nodes) {
        let sigma = ClarkMeasure::new(inner, alpha, slice_resolution)?;
        lhs.add(sigma.integrate(&mut g)?);
    }
    let lhs = lhs.value() / alpha_nodes as f64;
    let rhs = boundary_rule.integrate(g)?;
    Ok(IdentityCheck::absolute(lhs, rhs))
}

/// `∫ C(z, ζ) C(ζ, w) dσ_α(ζ)` against
/// `(1 − I(z)·conj(I(w))) / ((1 − ᾱ I(z))(1 − α·conj(I(w)))) · C(z, w)`.
/// The residual is relative to `|rhs|`.
pub fn double_cauchy_identity(sigma: &ClarkMeasure, z: &[Complex64], w: &[Complex64]) -> Result<IdentityCheck> {
    let inner = sigma.inner();
    let domain = inner.domain();
    let alpha = sigma.alpha();
    let iz = inner.eval(z)?;
    let iw = inner.eval(w)?;
    let lhs = sigma.integrate(|zeta| Ok(cauchy_kernel(&domain, z, zeta)? * cauchy_kernel(&domain, zeta, w)?))?;
    let one = Complex64::one();
    let den = (one - alpha.conj() * iz) * (one - alpha * iw.conj());
    let rhs = (one - iz * iw.conj()) / den * cauchy_kernel(&domain, z, w)?;
    let mut check = IdentityCheck::relative(lhs, rhs, rhs.norm());
    check.near_singular = (alpha - iz).norm() < NEAR_SINGULAR || (alpha - iw).norm() < NEAR_SINGULAR;
    Ok(check)
}
