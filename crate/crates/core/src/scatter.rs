//! s-wave phase shift, scattering length, and effective range.
//!
//! The auxiliary problem has two independent closed-form routes to the same
//! phase shift: a digamma-regularized series and a complex log-gamma
//! expression. They agree mod pi and cross-validate each other. The physical
//! problem phase shift is the argument of a single Kummer evaluation at z0;
//! its low-energy observables come from a numerical k -> 0 limit of
//! k cot(delta), fitted on two geometric ladders and Richardson-combined.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::bound::Condition;
use crate::error::{Error, Result};
use crate::potential::DimensionlessParams;
use crate::precision::Precision;
use crate::specfun::{
    digamma, digamma_with_window, kummer_m_tol, log_gamma, polygamma2, polygamma2_with_window,
    EULER_GAMMA, ZETA_3,
};

/// One phase-shift sample: principal value in (-pi/2, pi/2] plus the integer
/// branch index, so `total() = delta0 + branch * pi` can stay continuous
/// along a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftSample {
    pub k_over_beta: f64,
    /// Principal value, radians, in (-pi/2, pi/2].
    pub delta0: f64,
    /// Integer number of pi separating the principal value from the tracked one.
    pub branch: i64,
}

impl PhaseShiftSample {
    fn from_raw(k_over_beta: f64, raw: f64) -> PhaseShiftSample {
        let (delta0, branch) = split_mod_pi(raw);
        PhaseShiftSample { k_over_beta, delta0, branch }
    }

    /// The branch-tracked value, delta0 + branch * pi.
    pub fn total(&self) -> f64 {
        self.delta0 + self.branch as f64 * PI
    }
}

/// Decompose an angle as `principal + branch * pi` with principal in
/// (-pi/2, pi/2].
pub fn split_mod_pi(raw: f64) -> (f64, i64) {
    let mut branch = (raw / PI).round();
    let mut principal = raw - branch * PI;
    if principal <= -FRAC_PI_2 {
        principal += PI;
        branch -= 1.0;
    } else if principal > FRAC_PI_2 {
        principal -= PI;
        branch += 1.0;
    }
    (principal, branch as i64)
}

/// Distance between two angles modulo pi.
pub fn mod_pi_distance(a: f64, b: f64) -> f64 {
    let t = (a - b).rem_euclid(PI);
    t.min(PI - t)
}

/// Low-energy expansion coefficients of the auxiliary phase shift,
/// delta0 = -k eta + k^3 xi + O(k^5), stored in beta units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowEnergyCoefficients {
    /// eta * beta (dimensionless); equals the auxiliary a * beta.
    pub eta_beta: f64,
    /// xi * beta^3 (dimensionless).
    pub xi_beta3: f64,
}

/// How a ScatteringObservables value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservablesMethod {
    ClosedForm,
    LowKFit,
}

/// Scattering length and effective range in beta units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringObservables {
    pub a_beta: f64,
    pub re_beta: f64,
    pub condition: Condition,
    pub method: ObservablesMethod,
    /// Set when |a*beta| exceeds the resonance threshold.
    pub resonant: bool,
}

/// Continuum normalization constant for the auxiliary unbound states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumNormalization {
    pub b: f64,
    /// nu = d - 1/2.
    pub nu: f64,
    pub c_tilde: f64,
}

fn require_positive_k(k: f64) -> Result<()> {
    if !(k > 0.0) {
        return Err(Error::InvalidParams(format!("k/beta must be positive, got {k}")));
    }
    Ok(())
}

/// Auxiliary phase shift from the regularized series route.
///
/// The summand decays only like 1/n^2, so the sum is truncated at N and the
/// remainder is restored analytically: its 1/n and 1/n^3 parts telescope into
/// digamma and second-polygamma values at N+1, and the leftover fifth-order
/// piece is bounded and pushed below `series_tail_tol` by growing N.
pub fn aux_phase_shift_series(
    dp: &DimensionlessParams,
    k_over_beta: f64,
    prec: &Precision,
) -> Result<PhaseShiftSample> {
    require_positive_k(k_over_beta)?;
    let k = k_over_beta;
    let c = dp.d + 0.5;

    let mut n_terms: usize = 2048.max((20.0 * (c + 2.0 * k + 1.0)).ceil() as usize);
    while fifth_order_tail_bound(k, c, n_terms) > prec.series_tail_tol {
        n_terms *= 2;
        if n_terms > (1 << 24) {
            return Err(Error::NonConvergence {
                what: "phase-shift series tail",
                requested: prec.series_tail_tol,
                estimated: fifth_order_tail_bound(k, c, n_terms),
            });
        }
    }

    // Kahan-compensated direct sum
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=n_terms {
        let nf = n as f64;
        let term = k / nf - (2.0 * k / nf).atan() + (k / (nf - c)).atan();
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
    }
    sum += comp;

    // analytic tails
    let a = n_terms as f64 + 1.0;
    let tail1 = k * (digamma(a)? - digamma(a - c)?);
    let tail3 = k.powi(3) * (-4.0 / 3.0 * polygamma2(a)? + polygamma2(a - c)? / 6.0);

    let xi_sum = sum + tail1 + tail3;
    let raw = -k * (EULER_GAMMA + (2.0 * dp.d).ln() + dp.beta_r0) + xi_sum;
    Ok(PhaseShiftSample::from_raw(k, raw))
}

/// Upper bound on the fifth-order remainder of the series tail past N.
fn fifth_order_tail_bound(k: f64, c: f64, n_terms: usize) -> f64 {
    let a = n_terms as f64 + 1.0;
    let a_shift = a - c;
    if a_shift <= 2.0 * k + 2.0 {
        return f64::INFINITY;
    }
    let k5 = k.powi(5);
    1.5 * k5 * (32.0 / 5.0 / (4.0 * a.powi(4)) + 0.2 / (4.0 * a_shift.powi(4)))
}

/// Auxiliary phase shift from the complex log-gamma route:
/// delta0 = pi/2 - arg A - k ln(2d) - k beta r0, A = Gamma(-2ik)/Gamma(1/2 - ik - d).
pub fn aux_phase_shift_gamma(
    dp: &DimensionlessParams,
    k_over_beta: f64,
) -> Result<PhaseShiftSample> {
    require_positive_k(k_over_beta)?;
    let k = k_over_beta;
    let lg_top = log_gamma(Complex64::new(0.0, -2.0 * k))?;
    let lg_bot = log_gamma(Complex64::new(0.5 - dp.d, -k))?;
    let arg_a = (lg_top - lg_bot).im;
    let raw = FRAC_PI_2 - arg_a - k * (2.0 * dp.d).ln() - k * dp.beta_r0;
    Ok(PhaseShiftSample::from_raw(k, raw))
}

fn check_unitarity(d: f64, window: f64) -> Result<()> {
    let m = (d - 0.5).round();
    if m >= 0.0 && (d - (m + 0.5)).abs() < window {
        return Err(Error::UnitarityPole { d, window });
    }
    Ok(())
}

/// eta and xi of the low-k expansion, in beta units.
pub fn low_energy_coefficients(
    dp: &DimensionlessParams,
    prec: &Precision,
) -> Result<LowEnergyCoefficients> {
    check_unitarity(dp.d, prec.unitarity_window)?;
    let x = 0.5 - dp.d;
    let eta_beta =
        2.0 * EULER_GAMMA + (2.0 * dp.d).ln() + dp.beta_r0 + digamma_with_window(x, prec.unitarity_window)?;
    let xi_beta3 = polygamma2_with_window(x, prec.unitarity_window)? / 6.0 + 8.0 / 3.0 * ZETA_3;
    Ok(LowEnergyCoefficients { eta_beta, xi_beta3 })
}

/// Closed-form auxiliary scattering length and effective range.
pub fn aux_scattering_params(
    dp: &DimensionlessParams,
    prec: &Precision,
) -> Result<ScatteringObservables> {
    let le = low_energy_coefficients(dp, prec)?;
    let a = le.eta_beta;
    if a.abs() < prec.zero_a_threshold {
        return Err(Error::ZeroScatteringLength { a_beta: a });
    }
    let psi2 = polygamma2_with_window(0.5 - dp.d, prec.unitarity_window)?;
    let re_beta = 2.0 / 3.0 * a - (psi2 + 16.0 * ZETA_3) / (3.0 * a * a);
    Ok(ScatteringObservables {
        a_beta: a,
        re_beta,
        condition: Condition::Auxiliary,
        method: ObservablesMethod::ClosedForm,
        resonant: a.abs() > prec.resonant_a_threshold,
    })
}

/// Effective range recomputed from the (eta, xi) pair; algebraically equal to
/// the closed form and used as an internal cross-check.
pub fn effective_range_from_eta_xi(le: &LowEnergyCoefficients) -> f64 {
    2.0 / 3.0 * le.eta_beta - 2.0 * le.xi_beta3 / (le.eta_beta * le.eta_beta)
}

/// log C_tilde with an explicit product cutoff; the tail of the log-product
/// is restored as Re sum_j w^j zeta(j, N+1)/j with w = nu + i b.
fn ln_c_tilde(dp: &DimensionlessParams, b: f64, n_cut: usize, tail_tol: f64) -> Result<f64> {
    let nu = dp.d - 0.5;
    let t = 2.0 * PI * b;
    let ln_sinh = if t > 30.0 { t - LN_2 + (-(2.0 * t)).exp().ln_1p() } else { t.sinh().ln() };

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=n_cut {
        let nf = n as f64;
        let g = -0.5 * ((1.0 - nu / nf).powi(2) + (b / nf).powi(2)).ln() - nu / nf;
        let s = sum + g;
        comp += if sum.abs() >= g.abs() { (sum - s) + g } else { (g - s) + sum };
        sum = s;
    }
    sum += comp;

    // tail in log space; |w| < (N+1)/4 is guaranteed by the caller's cutoff
    let a = n_cut as f64 + 1.0;
    let rho = nu.hypot(b);
    let theta = b.atan2(nu);
    let ln_rho = rho.ln();
    let ln_a = a.ln();
    let mut tail = 0.0f64;
    for j in 2..400usize {
        let jf = j as f64;
        // zeta(j, a) = a^(1-j)/(j-1) * corr with a short Euler-Maclaurin correction
        let corr = 1.0 + (jf - 1.0) / (2.0 * a) + jf * (jf - 1.0) / (12.0 * a * a)
            - jf * (jf - 1.0) * (jf + 1.0) * (jf + 2.0) / (720.0 * a.powi(4));
        let ln_mag = jf * ln_rho + (1.0 - jf) * ln_a - (jf - 1.0).ln() + corr.ln();
        let mag = ln_mag.exp() / jf;
        tail += (jf * theta).cos() * mag;
        if mag < tail_tol * 1e-3 {
            break;
        }
    }

    Ok(-PI.ln() + 0.5 * (b.ln() + ln_sinh - (nu * nu + b * b).ln()) + EULER_GAMMA * nu + sum + tail)
}

/// Continuum normalization constant C_tilde(b) with certified product tail.
pub fn normalization_constant(
    dp: &DimensionlessParams,
    b: f64,
    prec: &Precision,
) -> Result<ContinuumNormalization> {
    if !(b > 0.0) {
        return Err(Error::InvalidParams(format!("normalization needs b > 0, got {b}")));
    }
    let nu = dp.d - 0.5;
    let n_cut = ((4.0 * nu.hypot(b)).ceil() as usize).max(64);
    let ln_c = ln_c_tilde(dp, b, n_cut, prec.product_tail_tol)?;
    Ok(ContinuumNormalization { b, nu, c_tilde: ln_c.exp() })
}

/// Physical-problem phase shift, delta0 = -arg M(1/2 - ik - d, 1 - 2ik, z0).
pub fn phys_phase_shift(
    dp: &DimensionlessParams,
    k_over_beta: f64,
    prec: &Precision,
) -> Result<PhaseShiftSample> {
    require_positive_k(k_over_beta)?;
    let k = k_over_beta;
    let m = kummer_m_tol(
        Complex64::new(0.5 - dp.d, -k),
        Complex64::new(1.0, -2.0 * k),
        dp.z0,
        prec.kummer_rel_tol,
    )?;
    Ok(PhaseShiftSample::from_raw(k, -m.arg()))
}

/// Branch-tracked sweep of the physical phase shift: each sample's total is
/// chosen within pi/2 of its predecessor so the sweep is continuous.
pub fn phys_phase_shift_sweep(
    dp: &DimensionlessParams,
    ks: &[f64],
    prec: &Precision,
) -> Result<Vec<PhaseShiftSample>> {
    let mut out = Vec::with_capacity(ks.len());
    let mut prev_total: Option<f64> = None;
    for &k in ks {
        let raw = phys_phase_shift(dp, k, prec)?.total();
        let total = match prev_total {
            None => raw,
            Some(pt) => raw + PI * ((pt - raw) / PI).round(),
        };
        prev_total = Some(total);
        let (delta0, _) = split_mod_pi(total);
        let branch = ((total - delta0) / PI).round() as i64;
        out.push(PhaseShiftSample { k_over_beta: k, delta0, branch });
    }
    Ok(out)
}

/// Fit k cot(delta0) = c0 + c1 k^2 on the descending geometric ladder
/// k in [1e-4, 1e-2] and on its halved copies, Richardson-combining
/// successive ladder pairs to cancel the leading k^4 bias. The two
/// extrapolants must agree on c0; near scattering-length zeros the cubic
/// phase term (xi k^3 vs -a k) makes the quadratic model curved enough that
/// the ladder top is lowered until the curvature is mild.
/// Returns (c0, c1) = (-1/(a beta), re beta / 2).
pub fn fit_low_k<F>(phase: F, prec: &Precision) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<PhaseShiftSample>,
{
    let ladder = |k_top: f64| -> Result<(f64, f64)> {
        const POINTS: usize = 9;
        let mut xs = [0.0f64; POINTS];
        let mut ys = [0.0f64; POINTS];
        for (i, (x, y)) in xs.iter_mut().zip(ys.iter_mut()).enumerate() {
            let k = k_top * 10f64.powf(-2.0 * i as f64 / (POINTS - 1) as f64);
            let sample = phase(k)?;
            *x = k * k;
            *y = k / sample.delta0.tan();
        }
        let xb = xs.iter().sum::<f64>() / POINTS as f64;
        let yb = ys.iter().sum::<f64>() / POINTS as f64;
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        for (x, y) in xs.iter().zip(ys.iter()) {
            sxx += (x - xb) * (x - xb);
            sxy += (x - xb) * (y - yb);
        }
        let c1 = sxy / sxx;
        Ok((yb - c1 * xb, c1))
    };
    // Halving the ladder scales the intercept bias by 1/16 (k^4) but the
    // slope bias only by 1/4: the least-squares slope picks up the quadratic
    // residual through Cov(x, x^2)/Var(x), which is linear in the x scale.
    let richardson = |full: (f64, f64), half: (f64, f64)| {
        ((16.0 * half.0 - full.0) / 15.0, (4.0 * half.1 - full.1) / 3.0)
    };

    let mut k_top = 1e-2;
    let mut last_rel = f64::INFINITY;
    let mut last = (0.0, 0.0);
    for _ in 0..8 {
        let full = ladder(k_top)?;
        let half = ladder(k_top / 2.0)?;
        let quarter = ladder(k_top / 4.0)?;
        let first = richardson(full, half);
        let second = richardson(half, quarter);
        let a_est = -1.0 / second.0;
        if a_est.abs() > prec.resonant_a_threshold {
            // zero-energy resonance: flag rather than extrapolate further
            return Ok(second);
        }
        let curvature = (second.1 * k_top * k_top / second.0).abs();
        if curvature <= 0.03 {
            let rel = (first.0 - second.0).abs() / second.0.abs().max(f64::MIN_POSITIVE);
            if rel <= prec.fit_rel_tol {
                // second-level extrapolation clears the slope's k^4 residue
                return Ok((second.0, (16.0 * second.1 - first.1) / 15.0));
            }
            last_rel = rel;
            last = (first.0, second.0);
        }
        k_top /= 2.0;
    }
    Err(Error::FitInstability { first: last.0, second: last.1, rel: last_rel })
}

/// Physical scattering length and effective range from the numerical k -> 0
/// limit of k cot(delta0).
pub fn phys_scattering_params(
    dp: &DimensionlessParams,
    prec: &Precision,
) -> Result<ScatteringObservables> {
    // the fit divides tiny phases by tiny k, so demand more of the Kummer sum
    let mut tight = prec.clone();
    tight.kummer_rel_tol = prec.kummer_rel_tol.min(1e-12);
    let (c0, c1) = fit_low_k(|k| phys_phase_shift(dp, k, &tight), prec)?;
    let a_beta = -1.0 / c0;
    Ok(ScatteringObservables {
        a_beta,
        re_beta: 2.0 * c1,
        condition: Condition::Physical,
        method: ObservablesMethod::LowKFit,
        resonant: a_beta.abs() > prec.resonant_a_threshold,
    })
}
