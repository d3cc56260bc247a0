//! Double-double arithmetic for the extended-precision Kummer accumulator.
//!
//! A `Dd` carries an unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2, giving
//! roughly 32 significant decimal digits. Only the handful of operations the
//! series recurrence needs are implemented.

/// Error-free sum: returns (s, e) with s = fl(a+b) and a+b = s+e exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

/// Error-free sum assuming |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Division by a double-double, Newton-corrected.
    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn scale_pow2(self, factor: f64) -> Dd {
        Dd { hi: self.hi * factor, lo: self.lo * factor }
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> CDd {
        CDd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    #[inline]
    pub fn add(self, other: CDd) -> CDd {
        CDd { re: self.re.add(other.re), im: self.im.add(other.im) }
    }

    #[inline]
    pub fn sub(self, other: CDd) -> CDd {
        CDd { re: self.re.sub(other.re), im: self.im.sub(other.im) }
    }

    #[inline]
    pub fn mul(self, other: CDd) -> CDd {
        let re = self.re.mul(other.re).sub(self.im.mul(other.im));
        let im = self.re.mul(other.im).add(self.im.mul(other.re));
        CDd { re, im }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> CDd {
        CDd { re: self.re.mul_f64(x), im: self.im.mul_f64(x) }
    }

    /// Division via the conjugate and a real double-double denominator.
    #[inline]
    pub fn div(self, other: CDd) -> CDd {
        let denom = other.re.mul(other.re).add(other.im.mul(other.im));
        let num_re = self.re.mul(other.re).add(self.im.mul(other.im));
        let num_im = self.im.mul(other.re).sub(self.re.mul(other.im));
        CDd { re: num_re.div(denom), im: num_im.div(denom) }
    }

    /// 1-norm of the leading components, cheap magnitude estimate.
    #[inline]
    pub fn abs1(self) -> f64 {
        self.re.abs() + self.im.abs()
    }

    #[inline]
    pub fn scale_pow2(self, factor: f64) -> CDd {
        CDd { re: self.re.scale_pow2(factor), im: self.im.scale_pow2(factor) }
    }
}
