//! Fourier-series expansions of iterated Ito and Stratonovich stochastic
//! integrals with respect to a multidimensional Wiener process.
//!
//! The crate covers the full pipeline: orthonormal systems on an interval,
//! Fourier coefficients of Volterra-type kernels, truncated expansions of
//! multiple Wiener integrals, trace operators and Hu-Meyer decompositions in
//! both directions, Ito/Stratonovich conversion of the expansions, and a
//! path-coupled Monte Carlo oracle for validating everything against direct
//! simulation.

pub mod basis;
pub mod coeffs;
pub mod error;
pub mod humeyer;
pub mod mc;
mod nested;
pub mod partitions;
pub mod traces;
pub mod wiener;

pub use basis::{BasisKind, BasisSpec, Interval, Quadrature};
pub use error::{Error, Result};
