//! Half-open arcs `[start, end)` on the unit circle and finite disjoint
//! unions of them.

use alloc::vec::Vec;
use core::f64::consts::TAU;


use crate::blaschke::normalize_angle;
use crate::quadrature::GaussLegendre;
use crate::{Complex64, Error, Result};

/// The arc `[start, start + length)` with `start ∈ [0, 2π)` and
/// `0 < length ≤ 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    start: f64,
    length: f64,
}

impl Arc {
    /// Arc running counterclockwise from `start` to `end`. A difference of
    /// exactly `2π` or more gives the full circle; otherwise the difference
    /// is reduced mod `2π`.
    pub fn from_endpoints(start: f64, end: f64) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::invalid("arc endpoints must be finite"));
        }
        let diff = end - start;
        let length = if diff >= TAU { TAU } else { normalize_angle(diff) };
        Self::new(start, length)
    }

    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= TAU) || !start.is_finite() {
            return Err(Error::invalid(alloc::format!("arc length {length} outside (0, 2π]")));
        }
        Ok(Arc { start: normalize_angle(start), length })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    /// End angle, not reduced mod `2π`.
    pub fn end(&self) -> f64 {
        self.start + self.length
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Normalized measure `length / 2π`.
    pub fn measure(&self) -> f64 {
        self.length / TAU
    }

    pub fn midpoint(&self) -> f64 {
        normalize_angle(self.start + 0.5 * self.length)
    }

    /// Counterclockwise offset of `theta` from the start, in `[0, 2π)`.
    pub fn offset(&self, theta: f64) -> f64 {
        normalize_angle(theta - self.start)
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.offset(theta) < self.length
    }

    pub fn contains_point(&self, z: Complex64) -> bool {
        self.contains(z.arg())
    }

    /// Whether `other ⊆ self` up to `tol` in angle at either end.
    pub fn contains_arc(&self, other: &Arc, tol: f64) -> bool {
        let mut off = self.offset(other.start);
        if off > TAU - tol {
            off -= TAU;
        }
        off >= -tol && off + other.length <= self.length + tol
    }

    pub fn overlaps(&self, other: &Arc) -> bool {
        self.contains(other.start) || other.contains(self.start)
    }

    /// `∫_arc f(θ) dθ / 2π` with a Gauss–Legendre rule mapped onto the arc.
    pub fn integrate<F>(&self, rule: &GaussLegendre, f: F) -> Result<Complex64>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        Ok(rule.integrate(self.start, self.end(), f)? / TAU)
    }
}

/// Pairwise disjoint arcs, kept sorted by start angle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn new(mut arcs: Vec<Arc>) -> Result<Self> {
        arcs.sort_by(|a, b| a.start.total_cmp(&b.start));
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                if arcs[i].overlaps(&arcs[j]) {
                    return Err(Error::invalid(alloc::format!("arcs {i} and {j} overlap")));
                }
            }
        }
        Ok(ArcSet { arcs })
    }

    pub fn from_endpoints(pairs: &[[f64; 2]]) -> Result<Self> {
        let arcs = pairs.iter().map(|&[a, b]| Arc::from_endpoints(a, b)).collect::<Result<Vec<_>>>()?;
        Self::new(arcs)
    }

    pub fn single(start: f64, end: f64) -> Result<Self> {
        Self::new(alloc::vec![Arc::from_endpoints(start, end)?])
    }

    /// `[0, π)`.
    pub fn upper_semicircle() -> Self {
        ArcSet { arcs: alloc::vec![Arc { start: 0.0, length: core::f64::consts::PI }] }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn endpoints(&self) -> Vec<[f64; 2]> {
        self.arcs.iter().map(|a| [a.start, a.end()]).collect()
    }

    /// `m(Q) = Σ lengths / 2π`.
    pub fn total_measure(&self) -> f64 {
        self.arcs.iter().map(Arc::length).sum::<f64>() / TAU
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(theta))
    }

    pub fn contains_point(&self, z: Complex64) -> bool {
        self.contains(z.arg())
    }

    /// Angular distance from `theta` to the nearest arc endpoint.
    pub fn endpoint_distance(&self, theta: f64) -> f64 {
        let d = |x: f64| {
            let t = normalize_angle(theta - x);
            t.min(TAU - t)
        };
        self.arcs.iter().map(|a| d(a.start).min(d(a.end()))).fold(f64::INFINITY, f64::min)
    }

    /// Membership weight for quadrature: 1 inside, 0 outside, and 1/2 within
    /// `tie` of an endpoint.
    pub fn indicator_weight(&self, theta: f64, tie: f64) -> f64 {
        if self.endpoint_distance(theta) <= tie {
            0.5
        } else if self.contains(theta) {
            1.0
        } else {
            0.0
        }
    }

    /// Whether every arc of `other` lies inside some arc of `self`.
    pub fn contains_set(&self, other: &ArcSet, tol: f64) -> bool {
        other.arcs.iter().all(|b| self.arcs.iter().any(|a| a.contains_arc(b, tol)))
    }

    /// Requires `0 < m(Q) < 1`.
    pub fn require_proper(&self) -> Result<f64> {
        let m = self.total_measure();
        if m <= 0.0 || m >= 1.0 {
            return Err(Error::invalid(alloc::format!("arc set measure {m} must lie strictly between 0 and 1")));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn wrapping_arc() {
        let a = Arc::from_endpoints(1.5 * PI, 0.5 * PI).unwrap();
        assert!((a.length() - PI).abs() < 1e-15);
        assert!(a.contains(0.0) && a.contains(1.9 * PI) && !a.contains(0.5 * PI) && a.contains(1.5 * PI));
        assert!((a.midpoint() - 0.0).abs() < 1e-15);
        let neg = Arc::from_endpoints(-0.5 * PI, 0.5 * PI).unwrap();
        assert_eq!(neg, a);
    }

    #[test]
    fn half_open_convention() {
        let q = ArcSet::upper_semicircle();
        assert!(q.contains(0.0));
        assert!(!q.contains(PI));
        assert!((q.total_measure() - 0.5).abs() < 1e-16);
        assert_eq!(q.indicator_weight(PI + 1e-14, 1e-12), 0.5);
        assert_eq!(q.indicator_weight(1.0, 1e-12), 1.0);
        assert_eq!(q.indicator_weight(4.0, 1e-12), 0.0);
    }

    #[test]
    fn rejects_degenerate_and_overlapping() {
        assert!(Arc::from_endpoints(1.0, 1.0).is_err());
        assert!(ArcSet::from_endpoints(&[[0.0, 2.0], [1.0, 3.0]]).is_err());
        assert!(ArcSet::from_endpoints(&[[5.0, 1.0], [0.5, 2.0]]).is_err());
        let ok = ArcSet::from_endpoints(&[[2.0, 3.0], [0.0, 1.0]]).unwrap();
        assert_eq!(ok.arcs()[0].start(), 0.0);
        assert!(ArcSet::single(0.0, TAU).unwrap().require_proper().is_err());
        assert!(ok.require_proper().is_ok());
    }

    #[test]
    fn nested_arcs() {
        let big = ArcSet::single(5.0, 2.0).unwrap();
        let small = ArcSet::from_endpoints(&[[5.5, 6.0], [0.1, 1.9]]).unwrap();
        assert!(big.contains_set(&small, 0.0));
        assert!(!small.contains_set(&big, 0.0));
    }

    #[test]
    fn arc_integration() {
        let rule = GaussLegendre::new(16).unwrap();
        let a = Arc::from_endpoints(-0.5 * PI, 0.5 * PI).unwrap();
        let v = a.integrate(&rule, |t| Ok(Complex64::new(t.cos(), 0.0))).unwrap();
        assert!((v.re - 1.0 / PI).abs() < 1e-14);
    }
}
