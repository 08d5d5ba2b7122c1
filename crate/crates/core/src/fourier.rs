//! Discrete Fourier coefficients of samples on the half-step rotated
//! tensor grid of `T^k`.
//!
//! Samples are laid out in the same order as
//! [`BoundaryQuadrature::tensor_trapezoid`](crate::BoundaryQuadrature::tensor_trapezoid)
//! (last coordinate fastest). Coefficient index `m` corresponds to the
//! character `ζ^m`, with each `m_j` in `[−N/2, N/2)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::quadrature::grid_angle;
use crate::{Error, Result};

/// Frequency carried by position `idx` of a transformed axis of length `n`.
#[inline]
pub fn frequency(idx: usize, n: usize) -> i64 {
    idx as i64 - (n / 2) as i64
}

/// `ĥ(m) = N^{−k} Σ h(ζ)·ζ^{−m}` for every `m` in the box, by separable
/// one-dimensional transforms.
pub fn grid_coefficients(samples: &[Complex64], n: usize, k: usize) -> Result<Vec<Complex64>> {
    let count = n.checked_pow(k as u32).ok_or_else(|| Error::invalid("grid too large"))?;
    if samples.len() != count {
        return Err(Error::invalid(alloc::format!(
            "expected {count} samples for a {n}^{k} grid, got {}",
            samples.len()
        )));
    }
    // twiddle[idx * n + j] = e^{−i m θ_j} / n
    let mut twiddle = vec![Complex64::zero(); n * n];
    for idx in 0..n {
        let m = frequency(idx, n) as f64;
        for j in 0..n {
            twiddle[idx * n + j] = Complex64::from_polar(1.0 / n as f64, -m * grid_angle(j, n));
        }
    }
    let mut data = samples.to_vec();
    let mut line = vec![Complex64::zero(); n];
    for axis in 0..k {
        let stride = n.pow((k - 1 - axis) as u32);
        let block = stride * n;
        for base in (0..count).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + j * stride];
                }
                for idx in 0..n {
                    let row = &twiddle[idx * n..(idx + 1) * n];
                    data[start + idx * stride] = row.iter().zip(&line).map(|(t, v)| t * v).sum();
                }
            }
        }
    }
    Ok(data)
}

/// Multi-index of flat position `flat` in a `n^k` coefficient array.
pub fn multi_index(mut flat: usize, n: usize, k: usize) -> Vec<i64> {
    let mut m = vec![0i64; k];
    for slot in m.iter_mut().rev() {
        *slot = frequency(flat % n, n);
        flat /= n;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BoundaryQuadrature, ProductDomain};

    #[test]
    fn picks_out_single_characters() {
        let n = 16;
        let q = BoundaryQuadrature::tensor_trapezoid(&ProductDomain::polydisk(2), n).unwrap();
        let samples: Vec<_> = q.iter().map(|(z, _)| z[0].powi(3) * z[1].powi(-2) * 2.0).collect();
        let coeffs = grid_coefficients(&samples, n, 2).unwrap();
        for (flat, c) in coeffs.iter().enumerate() {
            let m = multi_index(flat, n, 2);
            let expected = if m == [3, -2] { 2.0 } else { 0.0 };
            assert!((c.re - expected).abs() < 1e-13 && c.im.abs() < 1e-13, "{m:?} {c}");
        }
    }

    #[test]
    fn rejects_wrong_sample_count() {
        assert!(grid_coefficients(&[Complex64::zero(); 10], 4, 2).is_err());
    }
}
