//! Dense complex polynomials (ascending coefficients) and their roots via
//! companion-matrix eigenvalues.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use num_traits::{Zero};

use crate::{Error, Result};

/// Horner evaluation of `Σ p_i z^i`.
pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
}

/// Value and first derivative in one Horner pass.
pub fn eval_with_derivative(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a + s·b`, padding the shorter operand.
pub fn axpy(a: &[Complex64], s: Complex64, b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() + s * b.get(i).copied().unwrap_or_default())
        .collect()
}

/// All roots of `p`, with multiplicity.
///
/// Exact trailing zero coefficients (the highest powers) are dropped first, so
/// the degree is the index of the last nonzero coefficient. Each eigenvalue of
/// the companion matrix is refined by Newton steps that are kept only when
/// they reduce `|p|`.
pub fn roots(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = match p.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return Err(Error::invalid("the zero polynomial has no finite root set")),
    };
    let p = &p[..=deg];
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p[deg];
    let monic: Vec<Complex64> = p.iter().map(|&c| c / lead).collect();
    let mut h = companion(&monic);
    let mut found = hessenberg_eigenvalues(&mut h, deg)?;
    for z in found.iter_mut() {
        *z = polish(&monic, *z, 3);
    }
    Ok(found)
}

/// Newton refinement that never accepts a step increasing `|p(z)|`.
pub fn polish(p: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    let mut best = eval(p, z).norm();
    for _ in 0..steps {
        let (v, d) = eval_with_derivative(p, z);
        if d.is_zero() || !v.is_finite() {
            break;
        }
        let cand = z - v / d;
        let val = eval(p, cand).norm();
        if val.is_finite() && val <= best {
            z = cand;
            best = val;
        } else {
            break;
        }
    }
    z
}

/// Companion matrix of a monic polynomial, row-major, upper Hessenberg:
/// ones on the subdiagonal and `−p_i` in the last column.
fn companion(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let mut h = vec![Complex64::zero(); n * n];
    for i in 1..n {
        h[i * n + i - 1] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        h[i * n + n - 1] = -monic[i];
    }
    h
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift QR with
/// Wilkinson shifts and Givens rotations.
fn hessenberg_eigenvalues(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let at = |i: usize, j: usize| i * n + j;
    let mut eig = vec![Complex64::zero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut rot = vec![(Complex64::zero(), Complex64::zero()); n];
    loop {
        if hi == 0 {
            eig[0] = h[at(0, 0)];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let sub = h[at(l, l - 1)].norm();
            let scale = h[at(l - 1, l - 1)].norm() + h[at(l, l)].norm();
            if sub <= f64::EPSILON * scale.max(f64::MIN_POSITIVE) {
                h[at(l, l - 1)] = Complex64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[at(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > 60 * n.max(10) {
            return Err(Error::RootFinding { degree: n });
        }
        let a = h[at(hi - 1, hi - 1)];
        let b = h[at(hi - 1, hi)];
        let c = h[at(hi, hi - 1)];
        let d = h[at(hi, hi)];
        let mu = if iter % 11 == 10 {
            // exceptional shift to break cycles
            d + Complex64::new(0.75 * c.norm(), 0.43 * c.norm())
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() <= (m2 - d).norm() { m1 } else { m2 }
        };
        for i in l..=hi {
            h[at(i, i)] -= mu;
        }
        for k in l..hi {
            let x = h[at(k, k)];
            let y = h[at(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::zero())
            } else {
                (x / r, y / r)
            };
            rot[k] = (cs, sn);
            for j in k..n {
                let u = h[at(k, j)];
                let v = h[at(k + 1, j)];
                h[at(k, j)] = cs.conj() * u + sn.conj() * v;
                h[at(k + 1, j)] = -sn * u + cs * v;
            }
        }
        for k in l..hi {
            let (cs, sn) = rot[k];
            for i in 0..=(k + 1).min(hi) {
                let u = h[at(i, k)];
                let v = h[at(i, k + 1)];
                h[at(i, k)] = u * cs + v * sn;
                h[at(i, k + 1)] = -u * sn.conj() + v * cs.conj();
            }
        }
        for i in l..=hi {
            h[at(i, i)] += mu;
        }
    }
    Ok(eig)
}
