//! Cauchy and Poisson-type kernels of a product domain.

use num_complex::Complex64;

use crate::{Error, ProductDomain, Result};

/// `|1 − ⟨z_j, ζ_j⟩|` below this is treated as a pole.
pub const SINGULAR_GAP: f64 = 1e-15;

/// Hermitian pairing `⟨z, w⟩ = Σ z_i·conj(w_i)`.
#[inline]
pub fn hermitian(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

#[inline]
fn powi(base: Complex64, n: usize) -> Complex64 {
    let mut acc = base;
    for _ in 1..n {
        acc *= base;
    }
    acc
}

/// `C(z, ζ) = ∏_j (1 − ⟨z_j, ζ_j⟩)^{−n_j}`.
///
/// Either argument may be interior or on the closure; only the pole
/// `⟨z_j, ζ_j⟩ = 1` is rejected.
pub fn cauchy_kernel(domain: &ProductDomain, z: &[Complex64], zeta: &[Complex64]) -> Result<Complex64> {
    domain.check_point(z)?;
    domain.check_point(zeta)?;
    let mut denom = Complex64::new(1.0, 0.0);
    for (block, (r, &n)) in domain.block_ranges().zip(domain.block_dims()).enumerate() {
        let gap = Complex64::new(1.0, 0.0) - hermitian(&z[r.clone()], &zeta[r]);
        if gap.norm() < SINGULAR_GAP {
            return Err(Error::SingularKernel { block, gap: gap.norm() });
        }
        denom *= powi(gap, n);
    }
    Ok(denom.inv())
}

/// `P(z, ζ) = C(z, ζ)·C(ζ, z) / C(z, z)`, which is real and nonnegative.
pub fn poisson_kernel(domain: &ProductDomain, z: &[Complex64], zeta: &[Complex64]) -> Result<f64> {
    let q = cauchy_kernel(domain, z, zeta)? * cauchy_kernel(domain, zeta, z)? / cauchy_kernel(domain, z, z)?;
    if q.im.abs() > 1e-12 * q.re.abs().max(1.0) {
        return Err(Error::NotReal { value: q });
    }
    Ok(q.re)
}

/// The one-variable Poisson kernel `(1 − |z|²)/|ζ − z|²` for `|ζ| = 1`.
#[inline]
pub fn disk_poisson(z: Complex64, zeta: Complex64) -> f64 {
    (1.0 - z.norm_sqr()) / (zeta - z).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::random::{random_boundary_point, random_interior_point};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cauchy_examples() {
        let disk = ProductDomain::disk();
        assert_eq!(cauchy_kernel(&disk, &[c64(0.5, 0.0)], &[c64(1.0, 0.0)]).unwrap(), c64(2.0, 0.0));
        let bidisk = ProductDomain::polydisk(2);
        let v = cauchy_kernel(&bidisk, &[c64(0.5, 0.0), c64(0.0, 0.0)], &[c64(1.0, 0.0), c64(0.0, 1.0)]).unwrap();
        assert_eq!(v, c64(2.0, 0.0));
        let ball = ProductDomain::new(alloc::vec![2, 1]).unwrap();
        let zeta = [c64(0.6, 0.0), c64(0.0, 0.8), c64(0.0, -1.0)];
        assert_eq!(cauchy_kernel(&ball, &[c64(0.0, 0.0); 3], &zeta).unwrap(), c64(1.0, 0.0));
    }

    #[test]
    fn cauchy_rejects_poles_and_mismatch() {
        let disk = ProductDomain::disk();
        let err = cauchy_kernel(&disk, &[c64(1.0, 0.0)], &[c64(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::SingularKernel { block: 0, .. }));
        assert!(cauchy_kernel(&disk, &[c64(0.1, 0.0), c64(0.0, 0.0)], &[c64(1.0, 0.0)]).is_err());
    }

    #[test]
    fn ball_power_uses_block_dimension() {
        let ball = ProductDomain::ball(3);
        let z = [c64(0.5, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)];
        let zeta = [c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)];
        let v = cauchy_kernel(&ball, &z, &zeta).unwrap();
        assert!((v - c64(8.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn poisson_examples() {
        let disk = ProductDomain::disk();
        assert!((poisson_kernel(&disk, &[c64(0.5, 0.0)], &[c64(1.0, 0.0)]).unwrap() - 3.0).abs() < 1e-14);
        assert_eq!(poisson_kernel(&disk, &[c64(0.0, 0.0)], &[c64(0.0, 1.0)]).unwrap(), 1.0);
        let bidisk = ProductDomain::polydisk(2);
        let p = poisson_kernel(&bidisk, &[c64(0.5, 0.0); 2], &[c64(1.0, 0.0); 2]).unwrap();
        assert!((p - 9.0).abs() < 1e-13);
    }

    #[test]
    fn symmetry_positivity_and_product_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ball = ProductDomain::new(alloc::vec![2, 1, 3]).unwrap();
        for _ in 0..200 {
            let z = random_interior_point(&ball, 0.95, &mut rng);
            let w = random_interior_point(&ball, 0.95, &mut rng);
            let a = cauchy_kernel(&ball, z.coords(), w.coords()).unwrap();
            let b = cauchy_kernel(&ball, w.coords(), z.coords()).unwrap();
            assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
            let zeta = random_boundary_point(&ball, &mut rng);
            assert!(poisson_kernel(&ball, z.coords(), zeta.coords()).unwrap() >= 0.0);
        }
        let bidisk = ProductDomain::polydisk(2);
        for _ in 0..200 {
            let z = random_interior_point(&bidisk, 0.95, &mut rng);
            let zeta = random_boundary_point(&bidisk, &mut rng);
            let p = poisson_kernel(&bidisk, z.coords(), zeta.coords()).unwrap();
            let (z, zeta) = (z.coords(), zeta.coords());
            let q = disk_poisson(z[0], zeta[0]) * disk_poisson(z[1], zeta[1]);
            assert!((p - q).abs() <= 1e-12 * q.max(1.0));
        }
    }
}
