//! Quadrature for normalized Lebesgue measure `Σ` on the distinguished
//! boundary, plus the one-dimensional rules used on arcs.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use rand::{Rng, SeedableRng};

use crate::{Error, ProductDomain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureKind {
    /// Uniform `N^k` grid of half-step rotated roots of unity; polydisks only.
    TensorTrapezoid,
    /// I.i.d. uniform points on the distinguished boundary, equal weights.
    MonteCarlo,
}

/// A discrete approximation of `Σ`: nodes on the distinguished boundary with
/// nonnegative weights summing to one.
#[derive(Debug, Clone)]
pub struct BoundaryQuadrature {
    domain: ProductDomain,
    kind: QuadratureKind,
    /// Grid size per block (tensor) or sample count (Monte Carlo).
    resolution: usize,
    coords: Vec<Complex64>,
    weights: Vec<f64>,
}

/// Angle of the `j`-th node of the half-step rotated `n`-point grid on `T`.
#[inline]
pub fn grid_angle(j: usize, n: usize) -> f64 {
    TAU * (j as f64 + 0.5) / n as f64
}

/// The `n` half-step rotated `n`-th roots of unity, `e^{2πi(j+½)/n}`.
pub fn circle_grid(n: usize) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::from_polar(1.0, grid_angle(j, n))).collect()
}

impl BoundaryQuadrature {
    /// Builds a rule by kind; `seed` only matters for Monte Carlo.
    pub fn lebesgue(domain: &ProductDomain, resolution: usize, kind: QuadratureKind, seed: u64) -> Result<Self> {
        match kind {
            QuadratureKind::TensorTrapezoid => Self::tensor_trapezoid(domain, resolution),
            QuadratureKind::MonteCarlo => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                Self::monte_carlo(domain, resolution, &mut rng)
            }
        }
    }

    pub fn tensor_trapezoid(domain: &ProductDomain, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("quadrature resolution must be >= 2"));
        }
        if !domain.is_polydisk() {
            return Err(Error::invalid("tensor trapezoid rule requires every block dimension to be 1"));
        }
        let k = domain.factors();
        let count = n
            .checked_pow(k as u32)
            .filter(|&c| c <= 1 << 28)
            .ok_or_else(|| Error::invalid("tensor grid too large"))?;
        let grid = circle_grid(n);
        let mut coords = Vec::with_capacity(count * k);
        let mut index = alloc::vec![0usize; k];
        for _ in 0..count {
            coords.extend(index.iter().map(|&j| grid[j]));
            // odometer, last coordinate fastest
            for slot in index.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        let w = 1.0 / count as f64;
        Ok(BoundaryQuadrature {
            domain: domain.clone(),
            kind: QuadratureKind::TensorTrapezoid,
            resolution: n,
            coords,
            weights: alloc::vec![w; count],
        })
    }

    pub fn monte_carlo<R: Rng + ?Sized>(domain: &ProductDomain, samples: usize, rng: &mut R) -> Result<Self> {
        if samples < 2 {
            return Err(Error::invalid("quadrature resolution must be >= 2"));
        }
        let mut coords = Vec::with_capacity(samples * domain.total_dim());
        for _ in 0..samples {
            for &n in domain.block_dims() {
                coords.extend(crate::random::sphere_vector(n, rng));
            }
        }
        let w = 1.0 / samples as f64;
        Ok(BoundaryQuadrature {
            domain: domain.clone(),
            kind: QuadratureKind::MonteCarlo,
            resolution: samples,
            coords,
            weights: alloc::vec![w; samples],
        })
    }

    pub fn domain(&self) -> &ProductDomain {
        &self.domain
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node(&self, i: usize) -> &[Complex64] {
        let d = self.domain.total_dim();
        &self.coords[i * d..(i + 1) * d]
    }

    /// `(node, weight)` pairs in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = (&[Complex64], f64)> + '_ {
        self.coords.chunks_exact(self.domain.total_dim()).zip(self.weights.iter().copied())
    }

    /// `Σ_i w_i g(node_i)` with compensated summation; the first failing node
    /// is reported with its index.
    pub fn integrate<F>(&self, mut g: F) -> Result<Complex64>
    where
        F: FnMut(&[Complex64]) -> Result<Complex64>,
    {
        let mut acc = CompensatedSum::default();
        for (i, (node, w)) in self.iter().enumerate() {
            acc.add(g(node).map_err(|e| e.at_node(i))? * w);
        }
        Ok(acc.value())
    }

    /// Sample mean and its standard error for a real integrand; meaningful
    /// for equal-weight Monte Carlo rules.
    pub fn mean_and_standard_error<F>(&self, mut g: F) -> Result<(f64, f64)>
    where
        F: FnMut(&[Complex64]) -> Result<f64>,
    {
        let n = self.len() as f64;
        let mut sum = CompensatedSum::default();
        let mut sum_sq = CompensatedSum::default();
        for (i, (node, _)) in self.iter().enumerate() {
            let v = g(node).map_err(|e| e.at_node(i))?;
            sum.add(Complex64::new(v, 0.0));
            sum_sq.add(Complex64::new(v * v, 0.0));
        }
        let mean = sum.value().re / n;
        let var = (sum_sq.value().re / n - mean * mean).max(0.0) * n / (n - 1.0);
        Ok((mean, (var / n).sqrt()))
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: Complex64) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

impl core::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Gauss–Legendre rule on `[-1, 1]`, nodes by Newton iteration on the
/// three-term recurrence.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("Gauss-Legendre rule needs at least one node"));
        }
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(GaussLegendre { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f(x) dx`.
    pub fn integrate<F>(&self, a: f64, b: f64, mut f: F) -> Result<Complex64>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = CompensatedSum::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(mid + half * x)? * w);
        }
        Ok(acc.value() * half)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}
