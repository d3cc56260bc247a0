use num_complex::Complex64;

/// Complex value carried as `mantissa * exp(exponent)`.
///
/// Kummer's function grows like `exp(z)`, which leaves the f64 range long
/// before the arguments of interest are exhausted. Downstream consumers only
/// ever need the sign of the real part, the complex argument, or ratios of
/// nearby values, so the exponent is kept separate and never materialized
/// unless the value fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    /// Base-e scale; the represented value is `mantissa * exp(exponent)`.
    pub exponent: f64,
}

impl ScaledComplex {
    /// Canonical zero.
    pub const ZERO: ScaledComplex = ScaledComplex {
        mantissa: Complex64 { re: 0.0, im: 0.0 },
        exponent: 0.0,
    };

    /// Build and normalize so that |mantissa| lies in [1, e).
    pub fn new(mantissa: Complex64, exponent: f64) -> ScaledComplex {
        ScaledComplex { mantissa, exponent }.normalized()
    }

    pub fn from_complex(value: Complex64) -> ScaledComplex {
        ScaledComplex::new(value, 0.0)
    }

    pub fn from_f64(value: f64) -> ScaledComplex {
        ScaledComplex::from_complex(Complex64::new(value, 0.0))
    }

    /// Renormalize so |mantissa| is in [1, e); zero maps to the canonical zero.
    pub fn normalized(self) -> ScaledComplex {
        let norm = self.mantissa.norm();
        if norm == 0.0 {
            return ScaledComplex::ZERO;
        }
        let shift = norm.ln().floor();
        if shift == 0.0 {
            return self;
        }
        ScaledComplex {
            mantissa: self.mantissa * (-shift).exp(),
            exponent: self.exponent + shift,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.norm() == 0.0
    }

    /// Natural log of the magnitude; -inf for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().ln() + self.exponent
        }
    }

    /// Principal argument of the represented value, in (-pi, pi].
    pub fn arg(&self) -> f64 {
        self.mantissa.arg()
    }

    /// Materialize as a plain complex number; overflows to infinity when the
    /// exponent exceeds the f64 range.
    pub fn value(&self) -> Complex64 {
        self.mantissa * self.exponent.exp()
    }

    pub fn mul(&self, other: &ScaledComplex) -> ScaledComplex {
        ScaledComplex::new(self.mantissa * other.mantissa, self.exponent + other.exponent)
    }

    pub fn div(&self, other: &ScaledComplex) -> ScaledComplex {
        ScaledComplex::new(self.mantissa / other.mantissa, self.exponent - other.exponent)
    }

    pub fn scale(&self, factor: Complex64) -> ScaledComplex {
        ScaledComplex::new(self.mantissa * factor, self.exponent)
    }

    /// Sum of two scaled values, performed at the larger exponent.
    pub fn add(&self, other: &ScaledComplex) -> ScaledComplex {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let delta = small.exponent - big.exponent;
        // below -746 the small mantissa underflows to exactly zero anyway
        let shifted = if delta < -745.0 {
            Complex64::new(0.0, 0.0)
        } else {
            small.mantissa * delta.exp()
        };
        ScaledComplex::new(big.mantissa + shifted, big.exponent)
    }
}
