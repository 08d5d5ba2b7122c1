//! Integration on slices: `∫ g dΣ = ∫∫ g(λζ) dm(λ) dΣ(ζ)`.

use hardy_core::quadrature::{circle_grid, CompensatedSum};
use hardy_core::{BoundaryQuadrature, Complex64, IdentityCheck};

/// Both sides of the slice formula on the nodes of `rule`, with
/// `lambda_nodes` equispaced values of `λ`. Absolute residual.
pub fn slice_formula_check<G>(mut g: G, rule: &BoundaryQuadrature, lambda_nodes: usize) -> anyhow::Result<IdentityCheck>
where
    G: FnMut(&[Complex64]) -> anyhow::Result<Complex64>,
{
    anyhow::ensure!(lambda_nodes >= 1, "need at least one λ node");
    let mut lhs = CompensatedSum::default();
    for (z, w) in rule.iter() {
        lhs.add(g(z)? * w);
    }
    let lambdas = circle_grid(lambda_nodes);
    let mut rhs = CompensatedSum::default();
    let mut point = vec![Complex64::new(0.0, 0.0); rule.domain().total_dim()];
    for (z, w) in rule.iter() {
        let mut inner = CompensatedSum::default();
        for &l in &lambdas {
            for (p, x) in point.iter_mut().zip(z) {
                *p = x * l;
            }
            inner.add(g(&point)?);
        }
        rhs.add(inner.value() * (w / lambda_nodes as f64));
    }
    Ok(IdentityCheck::absolute(lhs.value(), rhs.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hardy_core::{InnerFunction, KernelCombination, ProductDomain};
    use num_traits::One;
    use rand::SeedableRng;

    #[test]
    fn constant_and_characters() {
        let rule = BoundaryQuadrature::tensor_trapezoid(&ProductDomain::polydisk(2), 64).unwrap();
        let one = slice_formula_check(|_| Ok(Complex64::one()), &rule, 8).unwrap();
        assert!(one.residual < 1e-15 && (one.lhs - Complex64::one()).norm() < 1e-14);
        let ch = slice_formula_check(|z| Ok(z[0].powi(3) * z[1].conj()), &rule, 8).unwrap();
        assert!(ch.lhs.norm() < 1e-12 && ch.rhs.norm() < 1e-12);
    }

    #[test]
    fn kernel_norms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let inner = InnerFunction::monomial(vec![1, 2], Complex64::one()).unwrap();
        let f = KernelCombination::random(&inner, 3, 0.8, &mut rng).unwrap();
        let rule = BoundaryQuadrature::tensor_trapezoid(&inner.domain(), 128).unwrap();
        let check = slice_formula_check(|z| Ok(Complex64::new(f.eval(z)?.norm_sqr(), 0.0)), &rule, 64).unwrap();
        assert!(check.residual < 1e-8, "{check:?}");
        assert!((check.lhs.re - f.norm_sqr().unwrap()).abs() < 1e-8);
    }
}
