//! Overflow-safe real numbers stored as `mantissa * exp(log_scale)`.
//!
//! Jacobi polynomials with parameters proportional to the degree, the
//! normalization constant of the Christoffel–Darboux kernel and the weight
//! all leave the double range well before `n = 1000`, while the products the
//! kernel needs stay moderate. Intermediate results are therefore carried in
//! this representation and exponentiated once at the end.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

/// A real number `mantissa * e^log_scale`.
///
/// After normalization `|mantissa|` lies in `[1, 2)` (or the value is an
/// exact zero with `log_scale == 0`); the scale moves in whole multiples of
/// `ln 2` so that normalizing never rounds the mantissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue<T> {
    mantissa: T,
    log_scale: T,
}

impl<T: Real> ScaledValue<T> {
    pub fn zero() -> Self {
        Self { mantissa: T::zero(), log_scale: T::zero() }
    }

    pub fn one() -> Self {
        Self { mantissa: T::one(), log_scale: T::zero() }
    }

    /// Builds `mantissa * e^log_scale` and normalizes it.
    pub fn new(mantissa: T, log_scale: T) -> Self {
        Self { mantissa, log_scale }.normalized()
    }

    pub fn from_value(x: T) -> Self {
        Self::new(x, T::zero())
    }

    /// `sign * e^ln_abs`. A `-inf` log gives zero.
    pub fn from_ln(ln_abs: T, negative: bool) -> Self {
        if ln_abs == T::neg_infinity() {
            return Self::zero();
        }
        let sign = if negative { -T::one() } else { T::one() };
        Self::new(sign, ln_abs)
    }

    pub fn mantissa(&self) -> T {
        self.mantissa
    }

    pub fn log_scale(&self) -> T {
        self.log_scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == T::zero()
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.is_finite() && self.log_scale.is_finite()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> T {
        if self.is_zero() {
            T::zero()
        } else {
            self.mantissa.signum()
        }
    }

    /// `ln |x|`, `-inf` for zero.
    pub fn ln_abs(&self) -> T {
        if self.is_zero() {
            T::neg_infinity()
        } else {
            self.mantissa.abs().ln() + self.log_scale
        }
    }

    /// Plain value; overflows to `±inf` or underflows to `0` when out of range.
    pub fn value(&self) -> T {
        if self.is_zero() {
            return T::zero();
        }
        self.mantissa * self.log_scale.exp()
    }

    pub fn abs(&self) -> Self {
        Self { mantissa: self.mantissa.abs(), log_scale: self.log_scale }
    }

    /// `x^p` for `x > 0`; the sign is dropped for negative inputs.
    pub fn powf(&self, p: T) -> Self {
        if self.is_zero() {
            return if p == T::zero() { Self::one() } else { Self::zero() };
        }
        Self::from_ln(p * self.ln_abs(), false)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(T::lit(0.5))
    }

    pub fn scale(&self, factor: T) -> Self {
        Self::new(self.mantissa * factor, self.log_scale)
    }

    fn normalized(self) -> Self {
        let m = self.mantissa;
        if m == T::zero() || !m.is_finite() || !self.log_scale.is_finite() {
            return Self {
                mantissa: m,
                log_scale: if m == T::zero() { T::zero() } else { self.log_scale },
            };
        }
        let two = T::lit(2.0);
        let mut j = m.abs().log2().floor();
        let mut mant = m * two.powf(-j);
        // log2 may be off by one ulp around powers of two
        if mant.abs() >= two {
            mant = mant / two;
            j = j + T::one();
        } else if mant.abs() < T::one() {
            mant = mant * two;
            j = j - T::one();
        }
        Self { mantissa: mant, log_scale: self.log_scale + j * T::LN_2() }
    }
}

impl<T: Real> Default for ScaledValue<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> From<T> for ScaledValue<T> {
    fn from(x: T) -> Self {
        Self::from_value(x)
    }
}

impl<T: Real> Mul for ScaledValue<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.mantissa * rhs.mantissa, self.log_scale + rhs.log_scale)
    }
}

impl<T: Real> Div for ScaledValue<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.is_zero() && !rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.mantissa / rhs.mantissa, self.log_scale - rhs.log_scale)
    }
}

impl<T: Real> Neg for ScaledValue<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mantissa: -self.mantissa, log_scale: self.log_scale }
    }
}

impl<T: Real> Add for ScaledValue<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.log_scale >= rhs.log_scale { (self, rhs) } else { (rhs, self) };
        let shift = small.log_scale - big.log_scale;
        if shift < T::lit(-745.0) {
            return big;
        }
        Self::new(big.mantissa + small.mantissa * shift.exp(), big.log_scale)
    }
}

impl<T: Real> Sub for ScaledValue<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization_keeps_mantissa_in_range() {
        for &x in &[1.0f64, 1.999, 2.0, 3.5, 1e300, -7e-200, 0.75, -1.0] {
            let s = ScaledValue::from_value(x);
            let m = s.mantissa().abs();
            assert!((1.0..2.0).contains(&m), "{x}: mantissa {m}");
            assert!(((s.value() - x) / x).abs() < 1e-13);
        }
        let z = ScaledValue::<f64>::from_value(0.0);
        assert!(z.is_zero());
        assert_eq!(z.log_scale(), 0.0);
    }

    #[test]
    fn survives_beyond_double_range() {
        let big = ScaledValue::<f64>::from_ln(2000.0, false);
        let small = ScaledValue::<f64>::from_ln(-1990.0, true);
        let prod = big * small;
        assert!((prod.value() + 10f64.exp()).abs() < 1e-9 * 10f64.exp());
        assert!(big.value().is_infinite());
        assert!((big.ln_abs() - 2000.0).abs() < 1e-12);
        assert!(((big / big).value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn adding_cancels_exactly() {
        let x = ScaledValue::<f64>::from_ln(500.0, false);
        assert!((x - x).is_zero());
    }

    fn arb() -> impl Strategy<Value = f64> {
        (-1.0e3f64..1.0e3, -300i32..300).prop_map(|(m, e)| m * 10f64.powi(e / 3))
    }

    proptest! {
        #[test]
        fn arithmetic_matches_doubles(x in arb(), y in arb()) {
            let (sx, sy) = (ScaledValue::from_value(x), ScaledValue::from_value(y));
            let rel = |a: f64, b: f64| if b == 0.0 { a.abs() } else { ((a - b) / b).abs() };
            let p = x * y;
            if p.is_finite() && p != 0.0 && p.abs() > 1e-300 {
                prop_assert!(rel((sx * sy).value(), p) < 1e-12);
            }
            if y != 0.0 && (x / y).is_finite() && (x / y).abs() > 1e-300 {
                prop_assert!(rel((sx / sy).value(), x / y) < 1e-12);
            }
            let s = x + y;
            let scale = x.abs().max(y.abs());
            prop_assert!(((sx + sy).value() - s).abs() <= 1e-12 * scale.max(1e-300));
            prop_assert!(((sx - sy).value() - (x - y)).abs() <= 1e-12 * scale.max(1e-300));
        }
    }
}
