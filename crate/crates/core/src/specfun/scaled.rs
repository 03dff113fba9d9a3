//! Extended-range floating point for series whose terms overflow f64.
//!
//! A value is `m * 2^(512 e)` with the mantissa kept inside
//! `[2^-256, 2^256)`; multiplying two canonical mantissas therefore never
//! overflows, and rescaling by a power of two is exact.

/// 2^256
const STEP: f64 = f64::from_bits(0x4FF0_0000_0000_0000);
/// 2^-256
const INV_STEP: f64 = f64::from_bits(0x2FF0_0000_0000_0000);
const LN_STEP: f64 = 256.0 * std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    m: f64,
    /// exponent counted in units of 2^256
    e: i64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { m: 0.0, e: 0 };
    pub const ONE: Scaled = Scaled { m: 1.0, e: 0 };

    pub fn from_f64(x: f64) -> Self {
        Scaled { m: x, e: 0 }.normalized()
    }

    /// Builds `sign * exp(ln_abs)` without overflowing.
    pub fn from_ln(ln_abs: f64, sign: f64) -> Self {
        if ln_abs == f64::NEG_INFINITY || sign == 0.0 {
            return Scaled::ZERO;
        }
        let e = (ln_abs / LN_STEP).floor();
        Scaled {
            m: sign.signum() * (ln_abs - e * LN_STEP).exp(),
            e: e as i64,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        if self.m == 0.0 || !self.m.is_finite() {
            self.e = 0;
            return self;
        }
        while self.m.abs() >= STEP {
            self.m *= INV_STEP;
            self.e += 1;
        }
        while self.m.abs() < INV_STEP {
            self.m *= STEP;
            self.e -= 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.m.is_finite()
    }

    pub fn signum(&self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else {
            self.m.signum()
        }
    }

    pub fn ln_abs(&self) -> f64 {
        if self.m == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.m.abs().ln() + self.e as f64 * LN_STEP
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.e {
            0 => self.m,
            1 => self.m * STEP,
            -1 => self.m * INV_STEP,
            e if e > 1 => self.m * f64::INFINITY,
            _ => self.m * 0.0,
        }
    }

    pub fn mul(&self, other: &Scaled) -> Scaled {
        Scaled {
            m: self.m * other.m,
            e: self.e + other.e,
        }
        .normalized()
    }

    pub fn mul_f64(&self, k: f64) -> Scaled {
        Scaled {
            m: self.m * k,
            e: self.e,
        }
        .normalized()
    }

    pub fn add(&self, other: &Scaled) -> Scaled {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.e >= other.e {
            (self, other)
        } else {
            (other, self)
        };
        let gap = hi.e - lo.e;
        let m = match gap {
            0 => hi.m + lo.m,
            1 => hi.m + lo.m * INV_STEP,
            // 2^-512 relative: below f64 resolution
            _ => hi.m,
        };
        Scaled { m, e: hi.e }.normalized()
    }

    /// |self| / |other| collapsed to f64 (0 on extreme underflow).
    pub fn abs_ratio(&self, other: &Scaled) -> f64 {
        if other.is_zero() {
            return f64::INFINITY;
        }
        if self.is_zero() {
            return 0.0;
        }
        let gap = self.e - other.e;
        let r = (self.m / other.m).abs();
        match gap {
            0 => r,
            1 => r * STEP,
            -1 => r * INV_STEP,
            g if g > 1 => f64::INFINITY,
            _ => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn roundtrip_and_ln() {
        let x = Scaled::from_f64(3.5e10);
        assert_relative_eq!(x.to_f64(), 3.5e10);
        assert_relative_eq!(x.ln_abs(), (3.5e10f64).ln(), epsilon = 1e-12);

        let y = Scaled::from_ln(900.0, -1.0);
        assert_relative_eq!(y.ln_abs(), 900.0, epsilon = 1e-12);
        assert_eq!(y.signum(), -1.0);
    }

    #[test]
    fn products_beyond_f64_range() {
        // (1e200)^4 = 1e800 overflows f64 but not Scaled.
        let mut p = Scaled::ONE;
        for _ in 0..4 {
            p = p.mul(&Scaled::from_f64(1e200));
        }
        assert_relative_eq!(p.ln_abs(), 800.0 * std::f64::consts::LN_10, epsilon = 1e-9);
        assert_eq!(p.to_f64(), f64::INFINITY);

        let tiny = p.mul(&Scaled::from_ln(-2000.0 * std::f64::consts::LN_10, 1.0));
        assert_relative_eq!(
            tiny.ln_abs(),
            -1200.0 * std::f64::consts::LN_10,
            epsilon = 1e-9
        );
    }

    #[test]
    fn signed_addition_with_cancellation() {
        let a = Scaled::from_f64(2.0);
        let b = Scaled::from_f64(-1.25);
        assert_relative_eq!(a.add(&b).to_f64(), 0.75);

        let big = Scaled::from_ln(1500.0, 1.0);
        let small = Scaled::from_ln(100.0, -1.0);
        let s = big.add(&small);
        assert_relative_eq!(s.ln_abs(), 1500.0, epsilon = 1e-12);
        assert_relative_eq!(small.abs_ratio(&big), (-1400.0f64).exp(), epsilon = 1e-9);
    }
}
