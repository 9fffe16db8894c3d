//! Exact invariants of parabolic Higgs bundle moduli spaces.
//!
//! Everything here is integer or rational arithmetic — no floating point.
//! The crate is organized around five layers:
//!
//! - [`parabolic`]: parabolic weight systems over a pointed curve and the
//!   degree identities of the parabolic calculus (dual, direct sum, tensor
//!   by a line bundle, morphism block patterns, slope comparison).
//! - [`vgeom`]: orbifold (V-surface) signatures, line V-bundle arithmetic,
//!   Riemann-Roch, Z2 V-cohomology ranks and square-root counting.
//! - [`spectral`]: spectral-cover bookkeeping (branch degree, spectral
//!   genus, lifted weights, Hitchin base/fiber numerics, Prym data).
//! - [`higgs`]: the Sp(2n,R) layer (Toledo invariant, Cayley partner,
//!   minimum classification, Morse index, local sparsity patterns).
//! - [`components`]: enumeration of topological invariant classes of
//!   maximal parabolic Sp(2n,R)-Higgs bundles and the closed-form
//!   connected-component counts, cross-checked against each other.

pub mod components;
mod error;
pub mod higgs;
pub mod parabolic;
pub mod spectral;
pub mod vgeom;

pub use error::{Error, ErrorKind, Result};
pub use parabolic::{ParabolicBundleData, PointWeights, Rat, Weight, WeightEntry};
pub use vgeom::{LineVBundle, OrbifoldSignature};
