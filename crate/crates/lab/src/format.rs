//! JSON descriptions of inner functions, arc sets, kernel combinations and
//! Clark measures. Complex numbers are `[re, im]` pairs.

use anyhow::{bail, Context};
use hardy_core::{ArcSet, ClarkMeasure, Complex64, DomainPoint, FiniteBlaschke, InnerFunction, KernelCombination};
use serde::{Deserialize, Serialize};

pub type ComplexPair = [f64; 2];

pub fn to_complex([re, im]: ComplexPair) -> Complex64 {
    Complex64::new(re, im)
}

pub fn to_pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

fn one() -> ComplexPair {
    [1.0, 0.0]
}

/// Zeros and unimodular constant of a finite Blaschke product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlaschkeSpec {
    pub zeros: Vec<ComplexPair>,
    #[serde(default = "one")]
    pub constant: ComplexPair,
}

impl BlaschkeSpec {
    pub fn build(&self) -> anyhow::Result<FiniteBlaschke> {
        Ok(FiniteBlaschke::new(self.zeros.iter().copied().map(to_complex).collect(), to_complex(self.constant))?)
    }
}

impl From<&FiniteBlaschke> for BlaschkeSpec {
    fn from(b: &FiniteBlaschke) -> Self {
        BlaschkeSpec { zeros: b.zeros().iter().copied().map(to_pair).collect(), constant: to_pair(b.constant()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InnerSpec {
    Blaschke {
        zeros: Vec<ComplexPair>,
        #[serde(default = "one")]
        constant: ComplexPair,
    },
    Monomial {
        exponents: Vec<u32>,
        #[serde(default = "one")]
        constant: ComplexPair,
    },
    /// `null` entries are constant factors.
    Separable { factors: Vec<Option<BlaschkeSpec>> },
    Composed { outer: BlaschkeSpec, inner: Box<InnerSpec> },
}

impl InnerSpec {
    pub fn build(&self) -> anyhow::Result<InnerFunction> {
        Ok(match self {
            InnerSpec::Blaschke { zeros, constant } => {
                InnerFunction::Blaschke(BlaschkeSpec { zeros: zeros.clone(), constant: *constant }.build()?)
            }
            InnerSpec::Monomial { exponents, constant } => InnerFunction::monomial(exponents.clone(), to_complex(*constant))?,
            InnerSpec::Separable { factors } => InnerFunction::separable(
                factors.iter().map(|f| f.as_ref().map(BlaschkeSpec::build).transpose()).collect::<anyhow::Result<_>>()?,
            )?,
            InnerSpec::Composed { outer, inner } => InnerFunction::composed(outer.build()?, inner.build()?),
        })
    }
}

impl From<&InnerFunction> for InnerSpec {
    fn from(f: &InnerFunction) -> Self {
        match f {
            InnerFunction::Blaschke(b) => {
                let b = BlaschkeSpec::from(b);
                InnerSpec::Blaschke { zeros: b.zeros, constant: b.constant }
            }
            InnerFunction::Monomial { exponents, constant } => {
                InnerSpec::Monomial { exponents: exponents.clone(), constant: to_pair(*constant) }
            }
            InnerFunction::Separable { factors } => {
                InnerSpec::Separable { factors: factors.iter().map(|f| f.as_ref().map(BlaschkeSpec::from)).collect() }
            }
            InnerFunction::Composed { outer, inner } => {
                InnerSpec::Composed { outer: outer.into(), inner: Box::new(inner.as_ref().into()) }
            }
        }
    }
}

/// `{arcs: [[theta_start, theta_end], …]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSetSpec {
    pub arcs: Vec<[f64; 2]>,
}

impl ArcSetSpec {
    pub fn build(&self) -> anyhow::Result<ArcSet> {
        Ok(ArcSet::from_endpoints(&self.arcs)?)
    }
}

impl From<&ArcSet> for ArcSetSpec {
    fn from(q: &ArcSet) -> Self {
        ArcSetSpec { arcs: q.endpoints() }
    }
}

/// `{inner: …, nodes: [[…]], coefficients: [[re, im]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelCombinationSpec {
    pub inner: InnerSpec,
    pub nodes: Vec<Vec<ComplexPair>>,
    pub coefficients: Vec<ComplexPair>,
}

impl KernelCombinationSpec {
    pub fn build(&self) -> anyhow::Result<KernelCombination> {
        let nodes = self.nodes.iter().map(|w| DomainPoint::new(w.iter().copied().map(to_complex).collect())).collect();
        let coefficients = self.coefficients.iter().copied().map(to_complex).collect();
        Ok(KernelCombination::new(self.inner.build()?, nodes, coefficients)?)
    }
}

impl From<&KernelCombination> for KernelCombinationSpec {
    fn from(f: &KernelCombination) -> Self {
        KernelCombinationSpec {
            inner: f.inner().into(),
            nodes: f.nodes().iter().map(|w| w.coords().iter().copied().map(to_pair).collect()).collect(),
            coefficients: f.coefficients().iter().copied().map(to_pair).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub zeta: ComplexPair,
    pub weight: f64,
}

/// `{alpha, atoms: [{zeta, weight}]}` or `{alpha, slice_resolution, inner}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClarkSpec {
    Atomic { alpha: ComplexPair, atoms: Vec<AtomSpec> },
    Sliced { alpha: ComplexPair, slice_resolution: usize, inner: InnerSpec },
}

impl From<&ClarkMeasure> for ClarkSpec {
    fn from(sigma: &ClarkMeasure) -> Self {
        match sigma {
            ClarkMeasure::Atomic { measure, .. } => ClarkSpec::Atomic {
                alpha: to_pair(measure.alpha()),
                atoms: measure.atoms().iter().map(|&(z, w)| AtomSpec { zeta: to_pair(z), weight: w }).collect(),
            },
            ClarkMeasure::Sliced(s) => ClarkSpec::Sliced {
                alpha: to_pair(s.alpha()),
                slice_resolution: s.resolution(),
                inner: s.inner().into(),
            },
        }
    }
}

impl ClarkSpec {
    /// Rebuilds a sliced measure; atomic exports are rebuilt from `inner`
    /// and checked against the stored atoms.
    pub fn build(&self, inner: Option<&InnerFunction>) -> anyhow::Result<ClarkMeasure> {
        match self {
            ClarkSpec::Sliced { alpha, slice_resolution, inner } => {
                Ok(ClarkMeasure::new(&inner.build()?, to_complex(*alpha), *slice_resolution)?)
            }
            ClarkSpec::Atomic { alpha, atoms } => {
                let inner = inner.context("atomic Clark exports need the inner function to rebuild")?;
                let sigma = ClarkMeasure::new(inner, to_complex(*alpha), 0)?;
                let mut rebuilt = Vec::new();
                sigma.for_each_atom(|z, w| rebuilt.push((z[0], w)));
                if rebuilt.len() != atoms.len()
                    || rebuilt.iter().zip(atoms).any(|(&(z, w), a)| {
                        (z - to_complex(a.zeta)).norm() > 1e-10 || (w - a.weight).abs() > 1e-10 * w.max(1.0)
                    })
                {
                    bail!("stored atoms do not match the Clark measure of the given inner function");
                }
                Ok(sigma)
            }
        }
    }
}
