//! Bound-state spectra and s-wave scattering observables for the Morse
//! potential, under both the auxiliary boundary condition (coordinate
//! extended to the full line) and the physical one (Dirichlet wall at the
//! origin), cross-validated by a direct Numerov integration oracle.
//!
//! Everything physical is computed from the dimensionless pair
//! (d, beta*r0); see [`potential`] for the reduction from SI units. Energies
//! are in units of hbar^2 beta^2 / (2 mu), lengths in 1/beta.

pub mod bound;
mod error;
pub mod oracle;
pub mod potential;
mod precision;
pub mod scatter;
pub mod specfun;

pub use bound::Condition;
pub use error::{Error, Result};
pub use potential::{DimensionlessParams, MorseParams};
pub use precision::Precision;
