use alloc::string::String;
use core::fmt;

use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point or function does not conform to the block structure expected.
    DomainMismatch { expected: String, found: String },
    /// `1 − ⟨z_j, ζ_j⟩` vanished for some block.
    SingularKernel { block: usize, gap: f64 },
    /// A computed quantity that should be real carried an imaginary part.
    NotReal { value: Complex64 },
    /// An argument violates a documented precondition.
    InvalidArgument(String),
    /// Unimodular constants and other degenerate data are not inner functions.
    NotInner(String),
    /// The variant has no one-variable representation along slices.
    UnsupportedSlice(String),
    /// Eigenvalue iteration failed to deflate.
    RootFinding { degree: usize },
    /// A root that must lie on the unit circle did not.
    OffCircle { root: Complex64, deviation: f64 },
    /// Preimage endpoints did not alternate along the circle.
    RootPairing,
    /// A failure while evaluating at a specific node.
    AtNode { index: usize, source: alloc::boxed::Box<Error> },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn at_node(self, index: usize) -> Self {
        Error::AtNode { index, source: alloc::boxed::Box::new(self) }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DomainMismatch { expected, found } => {
                write!(f, "domain mismatch: expected {expected}, found {found}")
            }
            Error::SingularKernel { block, gap } => {
                write!(f, "Cauchy kernel is singular in block {block} (|1 - <z, w>| = {gap:e})")
            }
            Error::NotReal { value } => write!(f, "expected a real value, got {value}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NotInner(msg) => write!(f, "not an inner function: {msg}"),
            Error::UnsupportedSlice(msg) => write!(f, "cannot slice: {msg}"),
            Error::RootFinding { degree } => {
                write!(f, "eigenvalue iteration did not converge for degree {degree}")
            }
            Error::OffCircle { root, deviation } => {
                write!(f, "root {root} is off the unit circle by {deviation:e}")
            }
            Error::RootPairing => write!(f, "preimage endpoints do not alternate along the circle"),
            Error::AtNode { index, source } => write!(f, "at node {index}: {source}"),
        }
    }
}

impl core::error::Error for Error {}
