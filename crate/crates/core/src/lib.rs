//! Exact verification kernel for Moufang loops, their tangent Mal'tsev
//! algebras, birepresentations, the Lie algebra generated by birepresentation
//! generators, and Noether charge densities on a finite fermionic lattice.
//!
//! Everything except the finite-difference chart extraction in [`chart`] runs
//! in exact rational (or Gaussian-integer) arithmetic. The crate is `no_std`
//! and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod birep;
pub mod chart;
pub mod envelope;
pub mod etc;
pub mod fock;
pub mod glc;
pub mod linalg;
pub mod loops;
pub mod octonion;
pub mod rational;
pub mod report;

pub use algebra::{catalog_algebra, StructureTensor, TangentVector};
pub use birep::{GeneratorSet, LoopBirep};
pub use envelope::{build_envelope, EnvelopeAlgebra, YamagutiTensor};
pub use loops::CayleyTable;
pub use rational::{GaussianRational, Rational};
pub use report::{CheckReport, Witness};
