use thiserror::Error;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Gamma-family function evaluated at a non-positive integer.
    #[error("{function} has a pole at {argument}")]
    Pole { function: &'static str, argument: f64 },

    /// Kummer M with a non-positive-integer second parameter.
    #[error("Kummer M undefined: q = {re} + {im}i is a non-positive integer")]
    QPole { re: f64, im: f64 },

    /// Series evaluation could not be certified to the requested accuracy,
    /// even after escalating the working precision.
    #[error("series for {what} did not certify {requested:e} (estimated error {estimated:e})")]
    NonConvergence {
        what: &'static str,
        requested: f64,
        estimated: f64,
    },

    /// Depth parameter within the pole window of a half-integer, where the
    /// scattering length diverges (zero-energy resonance).
    #[error("d = {d} is within {window:e} of a half-integer (unitarity limit)")]
    UnitarityPole { d: f64, window: f64 },

    /// Effective range undefined because the scattering length vanishes.
    #[error("scattering length |a*beta| = {a_beta:e} too close to zero for an effective range")]
    ZeroScatteringLength { a_beta: f64 },

    /// A bracketed sign change that bisection could not localize.
    #[error("root refinement failed in [{lo}, {hi}]: {reason}")]
    RootRefinement { lo: f64, hi: f64, reason: String },

    /// The low-k extrapolation ladders disagreed beyond tolerance.
    #[error("low-k fit unstable: ladders give {first} vs {second} (rel diff {rel:e})")]
    FitInstability { first: f64, second: f64, rel: f64 },

    /// A scaled quantity left the representable range.
    #[error("overflow in {what}: {detail}")]
    Overflow { what: &'static str, detail: String },

    /// A predicted bound level could not be bracketed by the shooting search.
    #[error("energy window exhausted: {detail}")]
    WindowExhaustion { detail: String },

    /// The asymptotic matching region fell outside the integration grid.
    #[error("match region unreachable: {detail}")]
    MatchRegion { detail: String },

    /// Parameter validation failure.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
