/// Tunable tolerances and discretization defaults.
///
/// Every threshold used by the library routines lives here so that a single
/// settings value can tighten or relax the whole pipeline. The defaults are
/// the values the test suite and the CLI assume.
#[derive(Debug, Clone)]
pub struct Precision {
    /// Target relative accuracy for Kummer M evaluations.
    pub kummer_rel_tol: f64,
    /// Relative accuracy that suffices for sign queries during root bracketing.
    pub kummer_sign_tol: f64,
    /// Absolute bound on the analytically estimated tail of the phase-shift sum.
    pub series_tail_tol: f64,
    /// Absolute bound on the truncated log-tail of the normalization product.
    pub product_tail_tol: f64,
    /// Bisection width target for bound-state roots in b.
    pub root_b_tol: f64,
    /// Bracketing grid density (points per unit b) for root scans.
    pub bracket_per_unit: usize,
    /// Relative consistency required between the two low-k fit ladders.
    pub fit_rel_tol: f64,
    /// Half-width of the pole window around non-positive-integer digamma
    /// arguments, i.e. around half-integer d.
    pub unitarity_window: f64,
    /// |a*beta| above which observables are flagged resonant.
    pub resonant_a_threshold: f64,
    /// |a*beta| below which the effective range is reported as undefined.
    pub zero_a_threshold: f64,
    /// Numerov step in beta*r units.
    pub oracle_step: f64,
    /// Forbidden-region depth (in z) at which the auxiliary integration starts.
    pub oracle_z_start: f64,
    /// Minimum distance past beta*r0 for phase-shift matching.
    pub oracle_match_min: f64,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            kummer_rel_tol: 1e-10,
            kummer_sign_tol: 1e-5,
            series_tail_tol: 1e-12,
            product_tail_tol: 1e-12,
            root_b_tol: 1e-12,
            bracket_per_unit: 200,
            fit_rel_tol: 1e-6,
            unitarity_window: 1e-12,
            resonant_a_threshold: 1e6,
            zero_a_threshold: 1e-10,
            oracle_step: 0.005,
            oracle_z_start: 500.0,
            oracle_match_min: 25.0,
        }
    }
}
