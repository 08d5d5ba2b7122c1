//! Finite Blaschke products on the unit disk.
//!
//! A zero `a ≠ 0` contributes the factor `(|a|/a)·(a − z)/(1 − ā z)`, which is
//! positive at the origin; a zero at the origin contributes `z`. The global
//! unimodular constant is carried separately.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use num_traits::{One, Zero};

use crate::{poly, Error, Result};

/// Roots farther than this from `T` when solving `B(ζ) = α`, `|α| = 1`,
/// indicate numerical breakdown.
pub const OFF_CIRCLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteBlaschke {
    zeros: Vec<Complex64>,
    constant: Complex64,
}

#[inline]
fn factor(a: Complex64, z: Complex64) -> Complex64 {
    if a.is_zero() {
        z
    } else {
        let n = a.norm();
        (a - z) / (Complex64::one() - a.conj() * z) * (n / a)
    }
}

/// Maps an angle into `[0, 2π)`.
#[inline]
pub fn normalize_angle(theta: f64) -> f64 {
    let t = num_traits::Euclid::rem_euclid(&theta, &TAU);
    if t >= TAU { 0.0 } else { t }
}

/// Maps an angle difference into `(−π, π]`.
#[inline]
pub fn wrap_pi(theta: f64) -> f64 {
    let t = normalize_angle(theta);
    if t > PI { t - TAU } else { t }
}

impl FiniteBlaschke {
    pub fn new(zeros: Vec<Complex64>, constant: Complex64) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::NotInner("a Blaschke product of degree 0 is a unimodular constant".into()));
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0) || !a.is_finite()) {
            return Err(Error::invalid(alloc::format!("Blaschke zero {a} is not inside the unit disk")));
        }
        if !constant.is_finite() || (constant.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(alloc::format!("constant {constant} is not unimodular")));
        }
        Ok(FiniteBlaschke { zeros, constant: constant / constant.norm() })
    }

    /// `z^d`.
    pub fn power(d: usize) -> Result<Self> {
        Self::new(alloc::vec![Complex64::zero(); d], Complex64::one())
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// True for `c·z^d`.
    pub fn is_monomial(&self) -> bool {
        self.zeros.iter().all(|a| a.is_zero())
    }

    /// Closed-form value anywhere on the closed disk.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(self.constant, |acc, &a| acc * factor(a, z))
    }

    /// `|B′(ζ)| = Σ_a (1 − |a|²)/|ζ − a|²` for `|ζ| = 1`, which is also the
    /// rate at which `arg B(e^{iθ})` increases.
    pub fn derivative_modulus(&self, zeta: Complex64) -> f64 {
        self.zeros.iter().map(|a| (1.0 - a.norm_sqr()) / (zeta - a).norm_sqr()).sum()
    }

    /// `B = numerator/denominator` with the constant folded into the numerator.
    pub fn rational_form(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut num = alloc::vec![self.constant];
        let mut den = alloc::vec![Complex64::one()];
        for &a in &self.zeros {
            if a.is_zero() {
                num = poly::mul(&num, &[Complex64::zero(), Complex64::one()]);
            } else {
                let s = a.norm() / a;
                num = poly::mul(&num, &[a * s, -s]);
                den = poly::mul(&den, &[Complex64::one(), -a.conj()]);
            }
        }
        (num, den)
    }

    /// All `d` solutions of `B(z) = w` for `|w| ≤ 1`, with multiplicity.
    pub fn solve(&self, w: Complex64) -> Result<Vec<Complex64>> {
        let d = self.degree();
        if self.is_monomial() {
            // c z^d = w
            let t = w / self.constant;
            if t.is_zero() {
                return Ok(alloc::vec![Complex64::zero(); d]);
            }
            let r = t.norm().powf(1.0 / d as f64);
            let base = t.arg() / d as f64;
            return Ok((0..d).map(|j| Complex64::from_polar(r, base + TAU * j as f64 / d as f64)).collect());
        }
        if w.is_zero() {
            return Ok(self.zeros.clone());
        }
        let (num, den) = self.rational_form();
        poly::roots(&poly::axpy(&num, -w, &den))
    }

    /// The `d` points of `T` where `B = α`, sorted by argument in `[0, 2π)`.
    ///
    /// Roots are refined by Newton steps on `θ ↦ arg(B(e^{iθ})/α)`, whose
    /// derivative is `|B′(e^{iθ})|`.
    pub fn level_set(&self, alpha: Complex64) -> Result<Vec<Complex64>> {
        if (alpha.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(alloc::format!("level {alpha} is not unimodular")));
        }
        let alpha = alpha / alpha.norm();
        let mut thetas = Vec::with_capacity(self.degree());
        for z in self.solve(alpha)? {
            let deviation = (z.norm() - 1.0).abs();
            if deviation > OFF_CIRCLE_TOL {
                return Err(Error::OffCircle { root: z, deviation });
            }
            let mut theta = z.arg();
            for _ in 0..2 {
                let zeta = Complex64::from_polar(1.0, theta);
                let miss = (self.eval(zeta) * alpha.conj()).arg();
                theta -= miss / self.derivative_modulus(zeta);
            }
            thetas.push(normalize_angle(theta));
        }
        thetas.sort_by(|a, b| a.total_cmp(b));
        Ok(thetas.into_iter().map(|t| Complex64::from_polar(1.0, t)).collect())
    }

    /// `λ ↦ B(λ·ξ)` for `|ξ| = 1`, again a Blaschke product: the zeros rotate
    /// to `a·conj(ξ)` and each origin zero contributes a factor `ξ` to the
    /// constant.
    pub fn rotated(&self, xi: Complex64) -> Self {
        let mut constant = self.constant;
        let zeros = self
            .zeros
            .iter()
            .map(|&a| {
                if a.is_zero() {
                    constant *= xi;
                    a
                } else {
                    a * xi.conj()
                }
            })
            .collect();
        FiniteBlaschke { zeros, constant: constant / constant.norm() }
    }

    /// `c·self` for unimodular `c`.
    pub fn times_constant(&self, c: Complex64) -> Self {
        let c = self.constant * c;
        FiniteBlaschke { zeros: self.zeros.clone(), constant: c / c.norm() }
    }

    /// Product of two Blaschke products.
    pub fn product(&self, other: &FiniteBlaschke) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        let c = self.constant * other.constant;
        FiniteBlaschke { zeros, constant: c / c.norm() }
    }

    /// `outer ∘ inner` as a single Blaschke product of degree
    /// `deg(outer)·deg(inner)`.
    pub fn compose(outer: &FiniteBlaschke, inner: &FiniteBlaschke) -> Result<Self> {
        let mut zeros = Vec::with_capacity(outer.degree() * inner.degree());
        for &a in &outer.zeros {
            zeros.extend(inner.solve(a)?);
        }
        if let Some(z) = zeros.iter().find(|z| z.norm() >= 1.0) {
            return Err(Error::OffCircle { root: *z, deviation: z.norm() - 1.0 });
        }
        let probe = Complex64::one();
        let target = outer.eval(inner.eval(probe));
        let partial = zeros.iter().fold(Complex64::one(), |acc, &a| acc * factor(a, probe));
        let c = target / partial;
        Ok(FiniteBlaschke { zeros, constant: c / c.norm() })
    }

    /// The disk automorphism `ψ(z) = (b − z)/(1 − b̄ z)`, which swaps `b` and 0.
    pub fn mobius_swap(b: Complex64) -> Result<Self> {
        if b.is_zero() {
            return Self::new(alloc::vec![Complex64::zero()], -Complex64::one());
        }
        Self::new(alloc::vec![b], b / b.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::random::{random_blaschke, random_in_disk, random_unimodular};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_degenerate_data() {
        assert!(matches!(FiniteBlaschke::new(alloc::vec![], Complex64::one()), Err(Error::NotInner(_))));
        assert!(FiniteBlaschke::new(alloc::vec![c64(1.0, 0.0)], Complex64::one()).is_err());
        assert!(FiniteBlaschke::new(alloc::vec![c64(0.1, 0.0)], c64(2.0, 0.0)).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let b = FiniteBlaschke::power(1).unwrap();
        assert_eq!(b.eval(c64(0.3, 0.0)), c64(0.3, 0.0));
        let b = FiniteBlaschke::power(2).unwrap();
        assert!((b.eval(c64(0.0, 1.0)) - c64(-1.0, 0.0)).norm() < 1e-15);
        let b = FiniteBlaschke::new(alloc::vec![c64(0.5, 0.0)], Complex64::one()).unwrap();
        assert!((b.eval(Complex64::zero()) - c64(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_modulus_examples() {
        let b = FiniteBlaschke::power(4).unwrap();
        assert!((b.derivative_modulus(c64(0.0, 1.0)) - 4.0).abs() < 1e-15);
        let b = FiniteBlaschke::new(alloc::vec![c64(0.5, 0.0)], Complex64::one()).unwrap();
        assert!((b.derivative_modulus(Complex64::one()) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_modulus_matches_finite_differences_of_argument() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = 1e-5;
        for _ in 0..50 {
            let b = random_blaschke(4, 0.8, &mut rng);
            let theta: f64 = rand::Rng::random::<f64>(&mut rng) * TAU;
            let ahead = b.eval(Complex64::from_polar(1.0, theta + h));
            let behind = b.eval(Complex64::from_polar(1.0, theta - h));
            let fd = (ahead / behind).arg() / (2.0 * h);
            let exact = b.derivative_modulus(Complex64::from_polar(1.0, theta));
            assert!((fd - exact).abs() <= 1e-6 * exact, "{fd} vs {exact}");
        }
    }

    #[test]
    fn unimodular_on_circle_and_contractive_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let b = random_blaschke(5, 0.95, &mut rng);
            let zeta = random_unimodular(&mut rng);
            assert!((b.eval(zeta).norm() - 1.0).abs() < 1e-12);
            let z = random_in_disk(0.999, &mut rng);
            assert!(b.eval(z).norm() < 1.0);
        }
    }

    #[test]
    fn argument_winds_d_times_and_increases() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 1..=6 {
            let b = random_blaschke(d, 0.9, &mut rng);
            let n = 4096;
            let mut total = 0.0;
            let mut prev = b.eval(Complex64::one());
            for j in 1..=n {
                let cur = b.eval(Complex64::from_polar(1.0, TAU * j as f64 / n as f64));
                let step = (cur / prev).arg();
                assert!(step > 0.0);
                total += step;
                prev = cur;
            }
            assert!((total - TAU * d as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn rational_form_reproduces_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = random_blaschke(5, 0.9, &mut rng);
        let (p, q) = b.rational_form();
        for _ in 0..20 {
            let z = random_in_disk(1.0, &mut rng);
            assert!((poly::eval(&p, z) / poly::eval(&q, z) - b.eval(z)).norm() < 1e-13);
        }
    }

    #[test]
    fn level_sets_hit_alpha() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for d in 1..=7 {
            let b = random_blaschke(d, 0.9, &mut rng);
            let alpha = random_unimodular(&mut rng);
            let pts = b.level_set(alpha).unwrap();
            assert_eq!(pts.len(), d);
            for w in pts.windows(2) {
                assert!(normalize_angle(w[0].arg()) < normalize_angle(w[1].arg()));
            }
            for z in pts {
                assert!((b.eval(z) - alpha).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn solve_interior_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let b = random_blaschke(4, 0.8, &mut rng);
        let w = c64(0.2, -0.3);
        let zs = b.solve(w).unwrap();
        assert_eq!(zs.len(), 4);
        for z in zs {
            assert!(z.norm() < 1.0);
            assert!((b.eval(z) - w).norm() < 1e-11);
        }
    }

    #[test]
    fn rotation_and_composition_agree_with_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let outer = random_blaschke(3, 0.8, &mut rng);
            let inner = random_blaschke(2, 0.8, &mut rng);
            let xi = random_unimodular(&mut rng);
            let rot = inner.rotated(xi);
            let comp = FiniteBlaschke::compose(&outer, &inner).unwrap();
            assert_eq!(comp.degree(), 6);
            for _ in 0..20 {
                let z = random_in_disk(1.0, &mut rng);
                assert!((rot.eval(z) - inner.eval(z * xi)).norm() < 1e-12);
                assert!((comp.eval(z) - outer.eval(inner.eval(z))).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn mobius_swap_exchanges_b_and_zero() {
        let b = c64(0.3, -0.4);
        let psi = FiniteBlaschke::mobius_swap(b).unwrap();
        assert!(psi.eval(b).norm() < 1e-15);
        assert!((psi.eval(Complex64::zero()) - b).norm() < 1e-15);
        let psi0 = FiniteBlaschke::mobius_swap(Complex64::zero()).unwrap();
        assert_eq!(psi0.eval(c64(0.2, 0.1)), c64(-0.2, -0.1));
    }
}
