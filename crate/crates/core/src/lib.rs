//! Scattering and inverse-scattering numerics for symmetric, compactly
//! supported 1D potentials.
//!
//! Units are natural throughout: `ħ = 1`, `2m = 1`, so `k² = E` and the
//! interior equation reads `ψ'' = (V − E) ψ`.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command-line frontend live in the `symscat-cli` crate.

#![no_std]
// `num_traits::Float` supplies the libm-backed math methods. When a dependency
// links std (dev-dependencies do) the inherent methods win and the import
// looks unused.
#![allow(unused_imports)]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod linalg;
pub mod noninjective;
pub mod potential;
pub mod propagate;
pub mod quadrature;
pub mod smatrix;
pub mod spectral;
pub mod szego;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use potential::{EvaluatedPotential, PotentialSpec, PotentialTable};
pub use propagate::{BoundaryData, WaveTrace};
pub use smatrix::{AmplitudeQuad, SMatrix, TransferMatrix};
pub use units::{Energy, WaveNumber};
