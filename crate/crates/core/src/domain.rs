//! Product domains `D = B_{n1} × … × B_{nk}` and points on them.
//!
//! Points are stored as flat coordinate vectors of length `n1 + … + nk`;
//! the domain supplies the block structure. Functions that only read a point
//! take `&[Complex64]` so that quadrature rules can hand out borrowed slices of
//! one contiguous node buffer.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;

use crate::{Error, Result};

/// Tolerance on block norms when classifying a point as lying on the
/// distinguished boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductDomain {
    block_dims: Vec<usize>,
    total_dim: usize,
}

impl ProductDomain {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::invalid("a product domain needs at least one factor"));
        }
        if block_dims.iter().any(|&n| n == 0) {
            return Err(Error::invalid("every ball factor must have dimension >= 1"));
        }
        let total_dim = block_dims.iter().sum();
        Ok(ProductDomain { block_dims, total_dim })
    }

    /// The unit disk `D`.
    pub fn disk() -> Self {
        Self::polydisk(1)
    }

    /// The polydisk `D^k`.
    pub fn polydisk(k: usize) -> Self {
        assert!(k >= 1, "polydisk needs k >= 1");
        ProductDomain { block_dims: vec![1; k], total_dim: k }
    }

    /// The unit ball `B_n`.
    pub fn ball(n: usize) -> Self {
        assert!(n >= 1, "ball needs n >= 1");
        ProductDomain { block_dims: vec![n], total_dim: n }
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    /// Number of ball factors `k`.
    pub fn factors(&self) -> usize {
        self.block_dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// True when every factor is a disk, so the distinguished boundary is `T^k`.
    pub fn is_polydisk(&self) -> bool {
        self.block_dims.iter().all(|&n| n == 1)
    }

    pub fn is_disk(&self) -> bool {
        self.block_dims == [1]
    }

    /// Coordinate ranges of the blocks within a flat point.
    pub fn block_ranges(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.block_dims.iter().scan(0usize, |start, &n| {
            let r = *start..*start + n;
            *start += n;
            Some(r)
        })
    }

    pub fn check_point(&self, coords: &[Complex64]) -> Result<()> {
        if coords.len() != self.total_dim {
            return Err(Error::DomainMismatch {
                expected: format!("{} coordinates for blocks {:?}", self.total_dim, self.block_dims),
                found: format!("{} coordinates", coords.len()),
            });
        }
        Ok(())
    }

    pub fn check_same(&self, other: &ProductDomain) -> Result<()> {
        if self != other {
            return Err(Error::DomainMismatch {
                expected: format!("blocks {:?}", self.block_dims),
                found: format!("blocks {:?}", other.block_dims),
            });
        }
        Ok(())
    }

    /// Euclidean norms of the blocks of a point.
    pub fn block_norms<'a>(&'a self, coords: &'a [Complex64]) -> impl Iterator<Item = f64> + 'a {
        self.block_ranges().map(move |r| {
            coords[r].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
        })
    }

    pub fn is_interior(&self, coords: &[Complex64]) -> bool {
        coords.len() == self.total_dim && self.block_norms(coords).all(|r| r < 1.0)
    }

    pub fn is_boundary(&self, coords: &[Complex64]) -> bool {
        coords.len() == self.total_dim
            && self.block_norms(coords).all(|r| (r - 1.0).abs() <= BOUNDARY_TOL)
    }

    pub fn require_interior(&self, coords: &[Complex64]) -> Result<()> {
        self.check_point(coords)?;
        if !self.is_interior(coords) {
            return Err(Error::invalid("point is not interior to the domain"));
        }
        Ok(())
    }

    pub fn require_boundary(&self, coords: &[Complex64]) -> Result<()> {
        self.check_point(coords)?;
        if !self.is_boundary(coords) {
            return Err(Error::invalid("point is not on the distinguished boundary"));
        }
        Ok(())
    }
}

/// A point of `D` or of its closure, as a flat coordinate vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainPoint {
    coords: Vec<Complex64>,
}

impl DomainPoint {
    pub fn new(coords: Vec<Complex64>) -> Self {
        DomainPoint { coords }
    }

    /// Builds a point from explicit blocks, validating them against `domain`.
    pub fn from_blocks(domain: &ProductDomain, blocks: &[Vec<Complex64>]) -> Result<Self> {
        if blocks.len() != domain.factors()
            || blocks.iter().zip(domain.block_dims()).any(|(b, &n)| b.len() != n)
        {
            return Err(Error::DomainMismatch {
                expected: format!("blocks {:?}", domain.block_dims()),
                found: format!("blocks {:?}", blocks.iter().map(Vec::len).collect::<Vec<_>>()),
            });
        }
        Ok(DomainPoint { coords: blocks.concat() })
    }

    /// The origin of a domain.
    pub fn origin(domain: &ProductDomain) -> Self {
        DomainPoint { coords: vec![Complex64::new(0.0, 0.0); domain.total_dim()] }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    pub fn block<'a>(&'a self, domain: &ProductDomain, j: usize) -> &'a [Complex64] {
        let r = domain.block_ranges().nth(j).expect("block index out of range");
        &self.coords[r]
    }

    /// The point `λ·self`, rotating and scaling every coordinate.
    pub fn scaled(&self, lambda: Complex64) -> Self {
        DomainPoint { coords: self.coords.iter().map(|&c| c * lambda).collect() }
    }
}

impl AsRef<[Complex64]> for DomainPoint {
    fn as_ref(&self) -> &[Complex64] {
        &self.coords
    }
}

impl From<Vec<Complex64>> for DomainPoint {
    fn from(coords: Vec<Complex64>) -> Self {
        DomainPoint { coords }
    }
}
