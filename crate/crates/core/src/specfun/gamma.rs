//! Complex log-gamma, real digamma and second polygamma.
//!
//! All three use the same strategy: shift the argument up by the recurrence
//! until the asymptotic (Stirling / Bernoulli) series applies, then evaluate
//! it. The shift keeps the principal branch intact because
//! `lgamma(z) = lgamma(z+1) - Log(z)` holds exactly for principal branches
//! off the negative real axis.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Riemann zeta at 3 (Apery's constant).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// The stored constants as a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub euler_gamma: f64,
    pub zeta3: f64,
}

pub fn constants() -> Constants {
    Constants { euler_gamma: EULER_GAMMA, zeta3: ZETA_3 }
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k} / (2k (2k-1)) for the Stirling series of log Gamma, k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// B_{2k} / (2k) for the digamma asymptotic series, k = 1..8.
const DIGAMMA_ASYMP: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// (2k+1) B_{2k} for the second-polygamma asymptotic series, k = 1..7.
const POLYGAMMA2_ASYMP: [f64; 7] = [
    0.5,
    -1.0 / 6.0,
    1.0 / 6.0,
    -0.3,
    5.0 / 6.0,
    -691.0 / 210.0,
    17.5,
];

const SHIFT_THRESHOLD: f64 = 10.0;

fn check_gamma_pole(re: f64, im: f64, function: &'static str) -> Result<()> {
    let nearest = re.round();
    if nearest <= 0.0 {
        let dist = ((re - nearest) * (re - nearest) + im * im).sqrt();
        if dist < 1e-300 {
            return Err(Error::Pole { function, argument: re });
        }
    }
    Ok(())
}

/// Principal-branch log Gamma for complex argument.
///
/// `exp(log_gamma(z)) = Gamma(z)`; the imaginary part is continuous along any
/// path that avoids the poles and the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_gamma_pole(z.re, z.im, "log_gamma")?;

    // recurrence shift, compensated accumulation of Log(z+k)
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_THRESHOLD {
        let term = w.ln();
        let t = acc + term;
        let delta = if acc.norm() >= term.norm() {
            (acc - t) + term
        } else {
            (term - t) + acc
        };
        comp += delta;
        acc = t;
        w += 1.0;
    }
    acc += comp;

    // Stirling series at the shifted argument
    let ln_w = w.ln();
    let mut s = (w - 0.5) * ln_w - w + LN_SQRT_2PI;
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut p = inv;
    for c in STIRLING {
        s += p * c;
        p *= inv2;
    }
    Ok(s - acc)
}

/// Digamma for real argument, poles at non-positive integers.
pub fn digamma(x: f64) -> Result<f64> {
    digamma_with_window(x, 1e-12)
}

pub(crate) fn digamma_with_window(x: f64, pole_window: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!("digamma argument {x}")));
    }
    if x <= 0.5 {
        let nearest = x.round();
        if nearest <= 0.0 && (x - nearest).abs() < pole_window {
            return Err(Error::Pole { function: "digamma", argument: x });
        }
    }

    let mut acc = 0.0;
    let mut comp = 0.0;
    let mut w = x;
    while w < SHIFT_THRESHOLD {
        let term = -1.0 / w;
        let t = acc + term;
        comp += if acc.abs() >= term.abs() { (acc - t) + term } else { (term - t) + acc };
        acc = t;
        w += 1.0;
    }
    acc += comp;

    let mut s = w.ln() - 0.5 / w;
    let inv2 = 1.0 / (w * w);
    let mut p = inv2;
    for c in DIGAMMA_ASYMP {
        s -= c * p;
        p *= inv2;
    }
    Ok(acc + s)
}

/// Second polygamma (second derivative of digamma) for real argument.
pub fn polygamma2(x: f64) -> Result<f64> {
    polygamma2_with_window(x, 1e-12)
}

pub(crate) fn polygamma2_with_window(x: f64, pole_window: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!("polygamma2 argument {x}")));
    }
    if x <= 0.5 {
        let nearest = x.round();
        if nearest <= 0.0 && (x - nearest).abs() < pole_window {
            return Err(Error::Pole { function: "polygamma2", argument: x });
        }
    }

    let mut acc = 0.0;
    let mut w = x;
    while w < SHIFT_THRESHOLD {
        acc -= 2.0 / (w * w * w);
        w += 1.0;
    }

    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut s = -inv2 - inv2 * inv;
    let mut p = inv2 * inv2;
    for c in POLYGAMMA2_ASYMP {
        s -= c * p;
        p *= inv2;
    }
    Ok(acc + s)
}
