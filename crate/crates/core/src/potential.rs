//! Morse potential definition, unit reduction, and the variable changes
//! (d, b, z) every other module consumes.
//!
//! Physical units appear only here (and at the CLI boundary): everything
//! downstream works with the dimensionless pair (d, beta*r0). Energies are
//! reported in units of hbar^2 beta^2 / (2 mu), so a state with wavenumber
//! parameter b has scaled energy -b^2.

use crate::error::{Error, Result};

/// Reduced Planck constant, J s (CODATA).
pub const HBAR: f64 = 1.054571817e-34;

/// Electron volt, J (exact SI).
pub const EV: f64 = 1.602176634e-19;

/// Atomic mass unit, kg (CODATA 2018).
pub const AMU: f64 = 1.66053906660e-27;

/// Morse potential parameters in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams {
    /// Well depth D, J.
    pub depth: f64,
    /// Width parameter beta, 1/m.
    pub beta: f64,
    /// Equilibrium position r0, m.
    pub r0: f64,
    /// Reduced mass mu, kg.
    pub mu: f64,
}

impl MorseParams {
    pub fn new(depth: f64, beta: f64, r0: f64, mu: f64) -> Result<MorseParams> {
        if !(depth > 0.0 && beta > 0.0 && r0 > 0.0 && mu > 0.0) {
            return Err(Error::InvalidParams(format!(
                "MorseParams must be positive: D={depth}, beta={beta}, r0={r0}, mu={mu}"
            )));
        }
        Ok(MorseParams { depth, beta, r0, mu })
    }

    /// Convenience constructor with the depth in meV.
    pub fn from_mev(depth_mev: f64, beta: f64, r0: f64, mu: f64) -> Result<MorseParams> {
        MorseParams::new(depth_mev * 1e-3 * EV, beta, r0, mu)
    }
}

/// The dimensionless pair (d, beta*r0) plus the derived z0 all formulas use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// Dimensionless depth d = sqrt(2 mu D) / (hbar beta).
    pub d: f64,
    /// Dimensionless equilibrium position beta * r0.
    pub beta_r0: f64,
    /// z at r = 0: z0 = 2 d exp(beta r0).
    pub z0: f64,
}

impl DimensionlessParams {
    pub fn new(d: f64, beta_r0: f64) -> Result<DimensionlessParams> {
        if !(d > 0.0) || !(beta_r0 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "dimensionless parameters must be positive: d={d}, beta_r0={beta_r0}"
            )));
        }
        if beta_r0 > 700.0 {
            return Err(Error::Overflow {
                what: "z0",
                detail: format!("exp({beta_r0}) exceeds the floating-point range"),
            });
        }
        let z0 = 2.0 * d * beta_r0.exp();
        if !z0.is_finite() {
            return Err(Error::Overflow { what: "z0", detail: format!("2 d e^(beta r0) = {z0}") });
        }
        Ok(DimensionlessParams { d, beta_r0, z0 })
    }
}

/// V(r) = D ((1 - e^(-beta (r - r0)))^2 - 1), J. Negative r is allowed; the
/// auxiliary problem uses it.
pub fn eval_potential(p: &MorseParams, r: f64) -> f64 {
    let e = (-p.beta * (r - p.r0)).exp();
    p.depth * ((1.0 - e) * (1.0 - e) - 1.0)
}

/// Reduce physical parameters to the dimensionless set.
pub fn reduce(p: &MorseParams) -> Result<DimensionlessParams> {
    let d = (2.0 * p.mu * p.depth).sqrt() / (HBAR * p.beta);
    DimensionlessParams::new(d, p.beta * p.r0)
}

/// Reconstruct physical parameters from (d, beta*r0) given beta and mu.
///
/// The dimensionless pair under-determines the physical set; beta and mu fix
/// the remaining freedom. Round-trips with [`reduce`].
pub fn expand(dp: &DimensionlessParams, beta: f64, mu: f64) -> Result<MorseParams> {
    if !(beta > 0.0 && mu > 0.0) {
        return Err(Error::InvalidParams(format!("expand needs beta, mu > 0; got {beta}, {mu}")));
    }
    let depth = (dp.d * HBAR * beta).powi(2) / (2.0 * mu);
    MorseParams::new(depth, beta, dp.beta_r0 / beta, mu)
}

/// z as a function of beta*r: z = 2 d exp(-(beta r - beta r0)).
pub fn z_of_r(dp: &DimensionlessParams, beta_r: f64) -> f64 {
    2.0 * dp.d * (-(beta_r - dp.beta_r0)).exp()
}

/// Dimensionless potential v(x) = d^2 ((1 - e^(-(x - beta r0)))^2 - 1) with
/// x = beta r, in units of hbar^2 beta^2 / (2 mu).
pub fn v_scaled(dp: &DimensionlessParams, x: f64) -> f64 {
    let e = (-(x - dp.beta_r0)).exp();
    dp.d * dp.d * ((1.0 - e) * (1.0 - e) - 1.0)
}
