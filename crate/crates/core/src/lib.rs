//! Numerics for Hardy spaces on products of balls `B_{n1} × … × B_{nk}`.
//!
//! The crate covers the Cauchy and Poisson-type kernels of the product domain,
//! closed-form inner functions (finite Blaschke products, torus monomials,
//! separable products and compositions), exactly integrable Clark measures,
//! large model spaces spanned by reproducing kernels, and dominant sets built
//! as preimages `I⁻¹(Q)` of arcs `Q ⊂ T`.
//!
//! Everything here is pure computation on immutable values and only needs
//! `core` and `alloc`. File formats, reports and the experiment runner live
//! in the `hardy-lab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arcs;
pub mod blaschke;
pub mod clark;
pub mod domain;
pub mod dominant;
mod error;
pub mod fourier;
pub mod inner;
pub mod kernels;
pub mod model_space;
pub mod poly;
pub mod quadrature;
pub mod random;

pub use arcs::{Arc, ArcSet};
pub use blaschke::FiniteBlaschke;
pub use clark::{AtomicClark, ClarkMeasure, IdentityCheck, SliceClark};
pub use domain::{DomainPoint, ProductDomain};
pub use dominant::{DominanceReport, PreimageSet};
pub use error::{Error, Result};
pub use inner::{InnerFunction, SlicedInner};
pub use model_space::KernelCombination;
pub use quadrature::{BoundaryQuadrature, QuadratureKind};

pub use num_complex::Complex64;

/// Shorthand for building a `Complex64`.
#[inline]
pub const fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
