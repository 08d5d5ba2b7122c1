//! Random sampling on product domains, their boundaries, and of test data.
//!
//! All samplers take a caller-supplied generator so results are reproducible
//! from a seed.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{DomainPoint, FiniteBlaschke, ProductDomain};

/// A uniformly distributed point on the unit sphere of `C^n`, from a
/// normalized complex Gaussian vector.
pub fn sphere_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// A point uniformly distributed on the distinguished boundary.
pub fn random_boundary_point<R: Rng + ?Sized>(domain: &ProductDomain, rng: &mut R) -> DomainPoint {
    let mut coords = Vec::with_capacity(domain.total_dim());
    for &n in domain.block_dims() {
        coords.extend(sphere_vector(n, rng));
    }
    DomainPoint::new(coords)
}

/// A point whose blocks are uniform in the balls of radius `max_radius`.
pub fn random_interior_point<R: Rng + ?Sized>(
    domain: &ProductDomain,
    max_radius: f64,
    rng: &mut R,
) -> DomainPoint {
    assert!(max_radius > 0.0 && max_radius < 1.0);
    let mut coords = Vec::with_capacity(domain.total_dim());
    for &n in domain.block_dims() {
        let u: f64 = rng.random();
        let r = max_radius * u.powf(1.0 / (2 * n) as f64);
        coords.extend(sphere_vector(n, rng).into_iter().map(|c| c * r));
    }
    DomainPoint::new(coords)
}

pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.random::<f64>() * TAU)
}

/// A point uniform in the disk of radius `max_radius`.
pub fn random_in_disk<R: Rng + ?Sized>(max_radius: f64, rng: &mut R) -> Complex64 {
    let r = max_radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random::<f64>() * TAU)
}

/// A Blaschke product of the given degree with zeros uniform in the disk of
/// radius `max_radius` and a random unimodular constant.
pub fn random_blaschke<R: Rng + ?Sized>(degree: usize, max_radius: f64, rng: &mut R) -> FiniteBlaschke {
    let zeros = (0..degree).map(|_| random_in_disk(max_radius, rng)).collect();
    FiniteBlaschke::new(zeros, random_unimodular(rng)).expect("degree >= 1 and |zeros| < 1")
}
