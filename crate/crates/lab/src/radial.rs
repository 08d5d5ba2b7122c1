//! Radial limits `lim_{r→1} f(rζ)` at the atoms of Clark measures.

use anyhow::bail;
use hardy_core::{ClarkMeasure, Complex64, KernelCombination};

/// Last delta below which a probe counts as converged.
pub const CONVERGED_DELTA: f64 = 1e-6;

/// `r_j = 1 − 2^{−j}` for `j = 1..=steps`.
pub fn dyadic_schedule(steps: usize) -> Vec<f64> {
    (1..=steps).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect()
}

pub fn validate_schedule(radii: &[f64]) -> anyhow::Result<()> {
    if radii.len() < 2 {
        bail!("radial schedule needs at least two radii, got {}", radii.len());
    }
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        bail!("radii must lie in (0, 1)");
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        bail!("radii must be strictly increasing");
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProbeResult {
    pub alpha: Complex64,
    pub atom: Vec<Complex64>,
    pub radii: Vec<f64>,
    pub values: Vec<Complex64>,
    /// `|f(r_{i+1}ζ) − f(r_iζ)|`.
    pub deltas: Vec<f64>,
    /// Linear extrapolation of the last two values to `r = 1`.
    pub limit: Complex64,
    /// `f(ζ)` from the closed form.
    pub boundary_value: Complex64,
    /// Last delta below [`CONVERGED_DELTA`] and deltas non-increasing over
    /// the final three steps.
    pub converged: bool,
    pub error: Option<String>,
}

impl RadialProbeResult {
    pub fn limit_error(&self) -> f64 {
        (self.limit - self.boundary_value).norm()
    }
}

/// Probes `f` along the rays through every atom of `σ`.
pub fn radial_probe(f: &KernelCombination, sigma: &ClarkMeasure, radii: &[f64]) -> anyhow::Result<Vec<RadialProbeResult>> {
    validate_schedule(radii)?;
    if sigma.inner() != f.inner() {
        bail!("Clark measure belongs to a different inner function");
    }
    let mut atoms = Vec::new();
    sigma.for_each_atom(|z, _| atoms.push(z.to_vec()));
    Ok(atoms.into_iter().map(|atom| probe_ray(f, sigma.alpha(), atom, radii)).collect())
}

fn probe_ray(f: &KernelCombination, alpha: Complex64, atom: Vec<Complex64>, radii: &[f64]) -> RadialProbeResult {
    let mut result = RadialProbeResult {
        alpha,
        atom,
        radii: radii.to_vec(),
        values: Vec::with_capacity(radii.len()),
        deltas: Vec::new(),
        limit: Complex64::new(f64::NAN, f64::NAN),
        boundary_value: Complex64::new(f64::NAN, f64::NAN),
        converged: false,
        error: None,
    };
    let mut point = vec![Complex64::new(0.0, 0.0); result.atom.len()];
    for &r in radii {
        for (p, z) in point.iter_mut().zip(&result.atom) {
            *p = z * r;
        }
        match f.eval(&point) {
            Ok(v) if v.is_finite() => result.values.push(v),
            Ok(_) => {
                result.error = Some(format!("non-finite value at r = {r}"));
                return result;
            }
            Err(e) => {
                result.error = Some(format!("r = {r}: {e}"));
                return result;
            }
        }
    }
    match f.eval(&result.atom) {
        Ok(v) => result.boundary_value = v,
        Err(e) => result.error = Some(format!("boundary value: {e}")),
    }
    result.deltas = result.values.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let n = radii.len();
    let (r0, r1) = (radii[n - 2], radii[n - 1]);
    let (v0, v1) = (result.values[n - 2], result.values[n - 1]);
    result.limit = v1 + (v1 - v0) * ((1.0 - r1) / (r1 - r0));
    let tail = &result.deltas[result.deltas.len().saturating_sub(3)..];
    result.converged = tail.last().is_some_and(|&d| d < CONVERGED_DELTA) && tail.windows(2).all(|w| w[1] <= w[0]);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use hardy_core::{c64, DomainPoint, FiniteBlaschke, InnerFunction};
    use num_traits::One;

    #[test]
    fn schedules() {
        let s = dyadic_schedule(20);
        assert_eq!(s.len(), 20);
        assert_eq!(s[0], 0.5);
        assert!(validate_schedule(&s).is_ok());
        assert!(validate_schedule(&s[..1]).is_err());
        assert!(validate_schedule(&[0.5, 1.0]).is_err());
    }

    #[test]
    fn constant_kernel_converges_at_both_atoms() {
        let inner = InnerFunction::Blaschke(FiniteBlaschke::power(2).unwrap());
        let f = KernelCombination::kernel(inner.clone(), DomainPoint::new(vec![c64(0.0, 0.0)])).unwrap();
        let sigma = ClarkMeasure::new(&inner, Complex64::one(), 0).unwrap();
        let probes = radial_probe(&f, &sigma, &dyadic_schedule(20)).unwrap();
        assert_eq!(probes.len(), 2);
        for p in &probes {
            assert!(p.converged && p.error.is_none());
            assert!((p.atom[0].re.abs() - 1.0).abs() < 1e-12);
            let closed = hardy_core::model_space::kernel_eval(&inner, &p.atom, &[c64(0.0, 0.0)]).unwrap();
            assert!((p.limit - closed).norm() < 1e-12);
        }
    }

    #[test]
    fn extrapolation_beats_the_last_value() {
        let inner = InnerFunction::Blaschke(FiniteBlaschke::power(3).unwrap());
        let f = KernelCombination::kernel(inner.clone(), DomainPoint::new(vec![c64(0.6, 0.3)])).unwrap();
        let sigma = ClarkMeasure::new(&inner, c64(0.0, 1.0), 0).unwrap();
        for p in radial_probe(&f, &sigma, &dyadic_schedule(30)).unwrap() {
            assert!(p.converged, "{:?}", p.deltas.last());
            let last = (p.values.last().unwrap() - p.boundary_value).norm();
            assert!(p.limit_error() < 1e-10 && p.limit_error() < last);
        }
    }
}
