//! Kummer's confluent hypergeometric M(p, q, z) for complex parameters and
//! real z >= 0, evaluated in overflow-safe scaled form.
//!
//! The Taylor series is summed with compensated accumulation in double
//! precision first. The largest term is tracked so the cancellation damage
//! (largest term over result) can be estimated; when the certified error
//! exceeds the requested tolerance the sum is redone with double-double
//! terms and a compensated double-double accumulator (two machine words per
//! component for the terms, four for the running sum). If even that cannot
//! certify the tolerance the evaluation fails rather than return digits it
//! cannot vouch for. Sign fidelity near zeros of M is what the bound-state
//! root search depends on, so this is the conservative place in the crate.

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::scaled::ScaledComplex;
use crate::error::{Error, Result};

const DEFAULT_TOL: f64 = 1e-10;
const MAX_TERMS: usize = 400_000;
const RESCALE_LIMIT: f64 = 1.3407807929942597e154; // 2^512
const RESCALE_FACTOR: f64 = 7.458340731200207e-155; // 2^-512
const RESCALE_BITS: i64 = 512;
const EPS_F64: f64 = 1.1102230246251565e-16; // 2^-53
const EPS_DD: f64 = 4.93038065763132e-32; // 2^-104

/// M(p, q, z) at the default relative tolerance.
pub fn kummer_m(p: Complex64, q: Complex64, z: f64) -> Result<ScaledComplex> {
    kummer_m_tol(p, q, z, DEFAULT_TOL)
}

/// M(p, q, z) certified to `rel_tol`, escalating precision as needed.
pub fn kummer_m_tol(p: Complex64, q: Complex64, z: f64, rel_tol: f64) -> Result<ScaledComplex> {
    if !(z >= 0.0) {
        return Err(Error::InvalidParams(format!("kummer_m requires z >= 0, got {z}")));
    }
    let qn = q.re.round();
    if q.im == 0.0 && qn <= 0.0 && (q.re - qn).abs() < 1e-300 {
        return Err(Error::QPole { re: q.re, im: q.im });
    }
    if z == 0.0 {
        return Ok(ScaledComplex::from_f64(1.0));
    }
    let tol = rel_tol.max(1e-15);

    let (value, est) = sum_f64(p, q, z);
    if est <= tol {
        return Ok(value);
    }
    let (value, est) = sum_dd(p, q, z);
    if est <= tol {
        return Ok(value);
    }
    Err(Error::NonConvergence { what: "kummer_m", requested: rel_tol, estimated: est })
}

/// Index past which series terms are guaranteed to decay.
fn decay_index(p: Complex64, q: Complex64, z: f64) -> f64 {
    z + (p.norm() * z).sqrt() + q.norm() + 4.0
}

/// Neumaier-compensated scalar accumulator.
#[derive(Clone, Copy)]
struct NSum {
    s: f64,
    c: f64,
}

impl NSum {
    const ZERO: NSum = NSum { s: 0.0, c: 0.0 };

    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.s + self.c
    }

    #[inline]
    fn rescale(&mut self) {
        self.s *= RESCALE_FACTOR;
        self.c *= RESCALE_FACTOR;
    }
}

fn sum_f64(p: Complex64, q: Complex64, z: f64) -> (ScaledComplex, f64) {
    let n_dec = decay_index(p, q, z);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum_re = NSum::ZERO;
    let mut sum_im = NSum::ZERO;
    let mut scale_bits: i64 = 0;
    let mut max_ln = f64::NEG_INFINITY;
    let mut below = 0u32;
    let mut n_used = 0usize;

    for n in 0..MAX_TERMS {
        let nf = n as f64;
        sum_re.add(term.re);
        sum_im.add(term.im);
        n_used = n;

        let term_abs = term.re.abs() + term.im.abs();
        let scale_ln = scale_bits as f64 * std::f64::consts::LN_2;
        if term_abs > 0.0 {
            max_ln = max_ln.max(term_abs.ln() + scale_ln);
        } else {
            break; // exact polynomial termination
        }

        if nf > n_dec {
            let sum_abs = sum_re.s.abs() + sum_im.s.abs();
            if term_abs <= sum_abs * 2.6e-23 {
                below += 1;
                if below >= 3 {
                    break;
                }
            } else {
                below = 0;
            }
        }

        let pn = p + nf;
        let qn = q + nf;
        term = term * pn * z / (qn * (nf + 1.0));

        let term_mag = term.re.abs() + term.im.abs();
        let sum_mag = sum_re.s.abs() + sum_im.s.abs();
        if term_mag > RESCALE_LIMIT || sum_mag > RESCALE_LIMIT {
            term *= RESCALE_FACTOR;
            sum_re.rescale();
            sum_im.rescale();
            scale_bits += RESCALE_BITS;
        }
    }

    let mantissa = Complex64::new(sum_re.value(), sum_im.value());
    let scale_ln = scale_bits as f64 * std::f64::consts::LN_2;
    let result = ScaledComplex::new(mantissa, scale_ln);
    let est = error_estimate(EPS_F64, n_used, max_ln, &result);
    (result, est)
}

fn sum_dd(p: Complex64, q: Complex64, z: f64) -> (ScaledComplex, f64) {
    let n_dec = decay_index(p, q, z);
    let mut term = CDd::from_f64(1.0, 0.0);
    let mut sum = CDd::ZERO;
    let mut comp = CDd::ZERO;
    let mut scale_bits: i64 = 0;
    let mut max_ln = f64::NEG_INFINITY;
    let mut below = 0u32;
    let mut n_used = 0usize;

    for n in 0..MAX_TERMS {
        let nf = n as f64;
        // compensated double-double accumulation
        let t = sum.add(term);
        let residual = if sum.abs1() >= term.abs1() {
            sum.sub(t).add(term)
        } else {
            term.sub(t).add(sum)
        };
        comp = comp.add(residual);
        sum = t;
        n_used = n;

        let term_abs = term.abs1();
        let scale_ln = scale_bits as f64 * std::f64::consts::LN_2;
        if term_abs > 0.0 {
            max_ln = max_ln.max(term_abs.ln() + scale_ln);
        } else {
            break;
        }

        if nf > n_dec {
            if term_abs <= sum.abs1() * 7e-43 {
                below += 1;
                if below >= 3 {
                    break;
                }
            } else {
                below = 0;
            }
        }

        let pn = CDd { re: p.re_dd(nf), im: Dd::from_f64(p.im) };
        let qn = CDd { re: q.re_dd(nf), im: Dd::from_f64(q.im) };
        term = term.mul(pn).mul_f64(z).div(qn.mul_f64(nf + 1.0));

        if term.abs1() > RESCALE_LIMIT || sum.abs1() > RESCALE_LIMIT {
            term = term.scale_pow2(RESCALE_FACTOR);
            sum = sum.scale_pow2(RESCALE_FACTOR);
            comp = comp.scale_pow2(RESCALE_FACTOR);
            scale_bits += RESCALE_BITS;
        }
    }

    let total = sum.add(comp);
    let mantissa = Complex64::new(total.re.to_f64(), total.im.to_f64());
    let scale_ln = scale_bits as f64 * std::f64::consts::LN_2;
    let result = ScaledComplex::new(mantissa, scale_ln);
    let est = error_estimate(EPS_DD, n_used, max_ln, &result);
    (result, est)
}

/// Forward error model: per-term generation noise of `eps` grows linearly in
/// the term count and is amplified by the cancellation ratio
/// (largest term / result).
fn error_estimate(eps: f64, n_used: usize, max_ln: f64, result: &ScaledComplex) -> f64 {
    if result.is_zero() {
        return f64::INFINITY;
    }
    let condition_ln = max_ln - result.ln_abs();
    let amplification = if condition_ln > 700.0 {
        f64::INFINITY
    } else {
        condition_ln.max(0.0).exp()
    };
    eps * (4.0 * n_used as f64 + 10.0) * amplification
}

trait ReDd {
    fn re_dd(&self, shift: f64) -> Dd;
}

impl ReDd for Complex64 {
    /// Real part plus an integer shift, exact in double-double.
    #[inline]
    fn re_dd(&self, shift: f64) -> Dd {
        Dd::from_f64(self.re).add(Dd::from_f64(shift))
    }
}
