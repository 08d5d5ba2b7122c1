//! Closed-form inner functions on the disk and on polydisks.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::{DomainPoint, Error, FiniteBlaschke, ProductDomain, Result};

/// A holomorphic map of a polydisk into the unit disk with unimodular
/// boundary values on the torus. Unimodular constants are excluded.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerFunction {
    /// A finite Blaschke product on the disk.
    Blaschke(FiniteBlaschke),
    /// `c·z^m` on the polydisk `D^k`, `k = exponents.len()`, `m ≠ 0`.
    Monomial { exponents: Vec<u32>, constant: Complex64 },
    /// `∏_j B_j(z_j)` on `D^k`; `None` marks the constant factor 1.
    Separable { factors: Vec<Option<FiniteBlaschke>> },
    /// `outer ∘ inner`.
    Composed { outer: FiniteBlaschke, inner: Box<InnerFunction> },
}

/// The one-variable restriction `λ ↦ I(λξ)` along a boundary point `ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicedInner {
    pub base_point: DomainPoint,
    pub one_variable: FiniteBlaschke,
}

impl SlicedInner {
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        self.one_variable.eval(lambda)
    }
}

impl InnerFunction {
    pub fn blaschke(zeros: Vec<Complex64>, constant: Complex64) -> Result<Self> {
        Ok(InnerFunction::Blaschke(FiniteBlaschke::new(zeros, constant)?))
    }

    pub fn monomial(exponents: Vec<u32>, constant: Complex64) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::invalid("a monomial needs at least one variable"));
        }
        if exponents.iter().all(|&m| m == 0) {
            return Err(Error::NotInner("the zero multi-index gives a unimodular constant".into()));
        }
        if !constant.is_finite() || (constant.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(alloc::format!("constant {constant} is not unimodular")));
        }
        Ok(InnerFunction::Monomial { exponents, constant: constant / constant.norm() })
    }

    pub fn separable(factors: Vec<Option<FiniteBlaschke>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("a separable product needs at least one variable"));
        }
        if factors.iter().all(Option::is_none) {
            return Err(Error::NotInner("all factors of the separable product are constant".into()));
        }
        Ok(InnerFunction::Separable { factors })
    }

    /// `outer ∘ inner`; `outer` is nonconstant by construction of
    /// [`FiniteBlaschke`].
    pub fn composed(outer: FiniteBlaschke, inner: InnerFunction) -> Self {
        InnerFunction::Composed { outer, inner: Box::new(inner) }
    }

    pub fn domain(&self) -> ProductDomain {
        match self {
            InnerFunction::Blaschke(_) => ProductDomain::disk(),
            InnerFunction::Monomial { exponents, .. } => ProductDomain::polydisk(exponents.len()),
            InnerFunction::Separable { factors } => ProductDomain::polydisk(factors.len()),
            InnerFunction::Composed { inner, .. } => inner.domain(),
        }
    }

    /// Number of variables `k` of the polydisk it acts on.
    pub fn variables(&self) -> usize {
        match self {
            InnerFunction::Blaschke(_) => 1,
            InnerFunction::Monomial { exponents, .. } => exponents.len(),
            InnerFunction::Separable { factors } => factors.len(),
            InnerFunction::Composed { inner, .. } => inner.variables(),
        }
    }

    /// Closed-form value on the closed polydisk; no domain classification.
    pub fn value(&self, z: &[Complex64]) -> Complex64 {
        match self {
            InnerFunction::Blaschke(b) => b.eval(z[0]),
            InnerFunction::Monomial { exponents, constant } => exponents
                .iter()
                .zip(z)
                .fold(*constant, |acc, (&m, &zj)| acc * zj.powu(m)),
            InnerFunction::Separable { factors } => factors
                .iter()
                .zip(z)
                .fold(Complex64::one(), |acc, (f, &zj)| match f {
                    Some(b) => acc * b.eval(zj),
                    None => acc,
                }),
            InnerFunction::Composed { outer, inner } => outer.eval(inner.value(z)),
        }
    }

    /// `I(z)` at an interior point.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.domain().require_interior(z)?;
        Ok(self.value(z))
    }

    /// Boundary values on the torus, by the closed form.
    pub fn boundary_eval(&self, zeta: &[Complex64]) -> Result<Complex64> {
        self.domain().require_boundary(zeta)?;
        Ok(self.value(zeta))
    }

    pub fn value_at_origin(&self) -> Complex64 {
        self.value(&alloc::vec![Complex64::zero(); self.variables()])
    }

    /// Per-variable degree bounds, used to guard discrete Fourier transforms
    /// against aliasing.
    pub fn degree_bounds(&self) -> Vec<usize> {
        match self {
            InnerFunction::Blaschke(b) => alloc::vec![b.degree()],
            InnerFunction::Monomial { exponents, .. } => exponents.iter().map(|&m| m as usize).collect(),
            InnerFunction::Separable { factors } => {
                factors.iter().map(|f| f.as_ref().map_or(0, FiniteBlaschke::degree)).collect()
            }
            InnerFunction::Composed { outer, inner } => {
                inner.degree_bounds().into_iter().map(|d| d * outer.degree()).collect()
            }
        }
    }

    /// The single Blaschke product equal to this function, for functions on
    /// the disk.
    pub fn as_disk_blaschke(&self) -> Result<FiniteBlaschke> {
        if self.variables() != 1 {
            return Err(Error::invalid("not a function of one variable"));
        }
        match self {
            InnerFunction::Blaschke(b) => Ok(b.clone()),
            InnerFunction::Monomial { exponents, constant } => {
                FiniteBlaschke::new(alloc::vec![Complex64::zero(); exponents[0] as usize], *constant)
            }
            InnerFunction::Separable { factors } => {
                Ok(factors[0].clone().expect("separable product has a nonconstant factor"))
            }
            InnerFunction::Composed { outer, inner } => {
                FiniteBlaschke::compose(outer, &inner.as_disk_blaschke()?)
            }
        }
    }

    /// The slice `λ ↦ I(λξ)` as a one-variable Blaschke product.
    pub fn slice(&self, xi: &[Complex64]) -> Result<SlicedInner> {
        let domain = self.domain();
        if !domain.is_polydisk() {
            return Err(Error::UnsupportedSlice("slices are defined on polydisks only".into()));
        }
        domain.require_boundary(xi)?;
        Ok(SlicedInner {
            base_point: DomainPoint::new(xi.to_vec()),
            one_variable: self.slice_unchecked(xi)?,
        })
    }

    /// `(c, d)` with `I(λξ) = c·λ^d`, for monomials only.
    pub(crate) fn monomial_slice(&self, xi: &[Complex64]) -> Option<(Complex64, usize)> {
        match self {
            InnerFunction::Monomial { exponents, constant } => {
                let c = exponents.iter().zip(xi).fold(*constant, |acc, (&m, &x)| acc * x.powu(m));
                Some((c, exponents.iter().sum::<u32>() as usize))
            }
            _ => None,
        }
    }

    fn slice_unchecked(&self, xi: &[Complex64]) -> Result<FiniteBlaschke> {
        match self {
            InnerFunction::Blaschke(b) => Ok(b.rotated(xi[0])),
            InnerFunction::Monomial { exponents, constant } => {
                let total: u32 = exponents.iter().sum();
                let c = exponents.iter().zip(xi).fold(*constant, |acc, (&m, &x)| acc * x.powu(m));
                FiniteBlaschke::new(alloc::vec![Complex64::zero(); total as usize], c)
            }
            InnerFunction::Separable { factors } => {
                let mut parts = factors.iter().zip(xi).filter_map(|(f, &x)| f.as_ref().map(|b| b.rotated(x)));
                let first = parts.next().expect("separable product has a nonconstant factor");
                Ok(parts.fold(first, |acc, b| acc.product(&b)))
            }
            InnerFunction::Composed { outer, inner } => {
                FiniteBlaschke::compose(outer, &inner.slice_unchecked(xi)?)
            }
        }
    }

    /// `ψ∘I` with `ψ(z) = (I(0) − z)/(1 − conj(I(0)) z)`, which vanishes at
    /// the origin.
    pub fn mobius_shift(&self) -> Result<InnerFunction> {
        let psi = FiniteBlaschke::mobius_swap(self.value_at_origin())?;
        Ok(InnerFunction::composed(psi, self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::random::{random_blaschke, random_boundary_point, random_in_disk, random_interior_point};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zoo(rng: &mut ChaCha8Rng) -> Vec<InnerFunction> {
        alloc::vec![
            InnerFunction::Blaschke(random_blaschke(3, 0.9, rng)),
            InnerFunction::monomial(alloc::vec![1, 1], Complex64::one()).unwrap(),
            InnerFunction::monomial(alloc::vec![2, 0, 1], c64(0.0, 1.0)).unwrap(),
            InnerFunction::separable(alloc::vec![Some(random_blaschke(2, 0.8, rng)), None, Some(random_blaschke(1, 0.8, rng))]).unwrap(),
            InnerFunction::composed(
                random_blaschke(2, 0.7, rng),
                InnerFunction::monomial(alloc::vec![1, 1], Complex64::one()).unwrap(),
            ),
            InnerFunction::composed(
                random_blaschke(2, 0.7, rng),
                InnerFunction::separable(alloc::vec![Some(random_blaschke(2, 0.8, rng)), Some(random_blaschke(1, 0.5, rng))]).unwrap(),
            ),
        ]
    }

    #[test]
    fn evaluation_examples() {
        let m = InnerFunction::monomial(alloc::vec![1, 1], Complex64::one()).unwrap();
        assert!((m.eval(&[c64(0.5, 0.0), c64(0.0, 0.5)]).unwrap() - c64(0.0, 0.25)).norm() < 1e-16);
        let b = InnerFunction::blaschke(alloc::vec![Complex64::zero()], Complex64::one()).unwrap();
        assert_eq!(b.eval(&[c64(0.3, 0.0)]).unwrap(), c64(0.3, 0.0));
        let comp = InnerFunction::composed(FiniteBlaschke::power(2).unwrap(), m.clone());
        assert!((comp.eval(&[c64(0.5, 0.0); 2]).unwrap() - c64(0.0625, 0.0)).norm() < 1e-16);
        let m21 = InnerFunction::monomial(alloc::vec![2, 1], Complex64::one()).unwrap();
        assert!((m21.boundary_eval(&[c64(1.0, 0.0), c64(-1.0, 0.0)]).unwrap() - c64(-1.0, 0.0)).norm() < 1e-16);
        let z2 = InnerFunction::Blaschke(FiniteBlaschke::power(2).unwrap());
        assert!((z2.boundary_eval(&[c64(0.0, 1.0)]).unwrap() - c64(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constructors_reject_constants() {
        assert!(matches!(InnerFunction::monomial(alloc::vec![0, 0], Complex64::one()), Err(Error::NotInner(_))));
        assert!(matches!(InnerFunction::separable(alloc::vec![None, None]), Err(Error::NotInner(_))));
        assert!(InnerFunction::blaschke(alloc::vec![], Complex64::one()).is_err());
    }

    #[test]
    fn domain_checks() {
        let m = InnerFunction::monomial(alloc::vec![1, 1], Complex64::one()).unwrap();
        assert!(m.eval(&[c64(0.5, 0.0)]).is_err());
        assert!(m.eval(&[c64(1.0, 0.0), c64(0.0, 0.0)]).is_err());
        assert!(m.boundary_eval(&[c64(0.5, 0.0), c64(1.0, 0.0)]).is_err());
    }

    #[test]
    fn inner_function_invariants_hold_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for f in zoo(&mut rng) {
            let d = f.domain();
            for _ in 0..1000 {
                let zeta = random_boundary_point(&d, &mut rng);
                assert!((f.boundary_eval(zeta.coords()).unwrap().norm() - 1.0).abs() < 1e-12);
                let r: f64 = rng.random::<f64>() * 0.999;
                assert!(f.eval(zeta.scaled(c64(r, 0.0)).coords()).unwrap().norm() < 1.0);
            }
        }
    }

    #[test]
    fn radial_values_approach_boundary_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for f in zoo(&mut rng) {
            let zeta = random_boundary_point(&f.domain(), &mut rng);
            let target = f.boundary_eval(zeta.coords()).unwrap();
            let gaps: Vec<f64> = [0.9, 0.99, 0.999, 0.9999]
                .iter()
                .map(|&r| (f.eval(zeta.scaled(c64(r, 0.0)).coords()).unwrap() - target).norm())
                .collect();
            for w in gaps.windows(2) {
                assert!(w[1] < w[0], "{gaps:?}");
            }
            assert!(gaps[3] < 1e-2);
        }
    }

    #[test]
    fn composition_matches_outer_of_boundary_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let outer = random_blaschke(3, 0.8, &mut rng);
        let inner = InnerFunction::monomial(alloc::vec![1, 2], Complex64::one()).unwrap();
        let comp = InnerFunction::composed(outer.clone(), inner.clone());
        for _ in 0..200 {
            let zeta = random_boundary_point(&comp.domain(), &mut rng);
            let a = comp.boundary_eval(zeta.coords()).unwrap();
            let b = outer.eval(inner.boundary_eval(zeta.coords()).unwrap());
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn slices_agree_with_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for f in zoo(&mut rng) {
            let d = f.domain();
            for _ in 0..200 {
                let xi = random_boundary_point(&d, &mut rng);
                let s = f.slice(xi.coords()).unwrap();
                let lambda = random_in_disk(1.0, &mut rng);
                let direct = f.value(xi.scaled(lambda).coords());
                assert!((s.eval(lambda) - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn monomial_slice_is_rotated_power() {
        let f = InnerFunction::monomial(alloc::vec![1, 1], Complex64::one()).unwrap();
        let xi = [Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -1.1)];
        let s = f.slice(&xi).unwrap().one_variable;
        assert_eq!(s.degree(), 2);
        assert!(s.is_monomial());
        assert!((s.constant() - xi[0] * xi[1]).norm() < 1e-15);
        let ball = InnerFunction::monomial(alloc::vec![1], Complex64::one()).unwrap();
        assert!(ball.slice(&[c64(0.5, 0.0)]).is_err());
    }

    #[test]
    fn separable_slice_rotates_zeros() {
        let b = FiniteBlaschke::new(alloc::vec![c64(0.5, 0.0)], Complex64::one()).unwrap();
        let f = InnerFunction::separable(alloc::vec![Some(b), None]).unwrap();
        let xi = [Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, 2.0)];
        let s = f.slice(&xi).unwrap().one_variable;
        assert!((s.zeros()[0] - c64(0.5, 0.0) * xi[0].conj()).norm() < 1e-15);
    }

    #[test]
    fn mobius_shift_vanishes_at_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let shifted_zero = InnerFunction::blaschke(alloc::vec![c64(0.5, 0.0)], Complex64::one()).unwrap();
        assert!((shifted_zero.value_at_origin() - c64(0.5, 0.0)).norm() < 1e-15);
        let mut all = zoo(&mut rng);
        all.push(shifted_zero);
        for f in all {
            let g = f.mobius_shift().unwrap();
            assert!(g.value_at_origin().norm() < 1e-15);
            for _ in 0..100 {
                let zeta = random_boundary_point(&g.domain(), &mut rng);
                assert!((g.boundary_eval(zeta.coords()).unwrap().norm() - 1.0).abs() < 1e-12);
            }
        }
        // I(0) = 0 gives ψ = −z
        let m = InnerFunction::monomial(alloc::vec![1, 1], Complex64::one()).unwrap();
        let g = m.mobius_shift().unwrap();
        let z = random_interior_point(&m.domain(), 0.9, &mut rng);
        assert!((g.value(z.coords()) + m.value(z.coords())).norm() < 1e-15);
    }

    #[test]
    fn disk_flattening() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let outer = random_blaschke(2, 0.6, &mut rng);
        let inner = InnerFunction::Blaschke(random_blaschke(3, 0.6, &mut rng));
        let f = InnerFunction::composed(outer, inner);
        let b = f.as_disk_blaschke().unwrap();
        assert_eq!(b.degree(), 6);
        for _ in 0..50 {
            let z = random_in_disk(1.0, &mut rng);
            assert!((b.eval(z) - f.value(&[z])).norm() < 1e-10);
        }
        assert!(InnerFunction::monomial(alloc::vec![1, 1], Complex64::one()).unwrap().as_disk_blaschke().is_err());
    }
}
