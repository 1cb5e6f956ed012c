//! Directed-rounding helpers for the few places where exact rationals meet
//! transcendental functions.
//!
//! Every `f64` produced here for a bound carries an outward nudge of a few
//! ulps (or, for transcendental functions, a relative slack of
//! [`REL_SLACK`]), so a value labelled "upper" is never below the true one.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Relative slack applied to results of `ln`, `exp` and `powf`.
pub const REL_SLACK: f64 = 1e-12;

pub fn up(x: f64) -> f64 {
    x.next_up().next_up()
}

pub fn down(x: f64) -> f64 {
    x.next_down().next_down()
}

/// Pushes a transcendental result outward by [`REL_SLACK`].
pub fn slack_up(x: f64) -> f64 {
    up(x + x.abs() * REL_SLACK + f64::MIN_POSITIVE)
}

pub fn slack_down(x: f64) -> f64 {
    down(x - x.abs() * REL_SLACK - f64::MIN_POSITIVE)
}

pub fn f64_up(q: &BigRational) -> f64 {
    up(q.to_f64().unwrap_or(f64::INFINITY))
}

pub fn f64_down(q: &BigRational) -> f64 {
    down(q.to_f64().unwrap_or(f64::NEG_INFINITY))
}

/// Natural logarithm of a positive big integer, accurate to about 1e-15 relative.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "logarithm of a non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(q: &BigRational) -> f64 {
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

/// Rational `s ≥ √q` with `s − √q ≤ 2^{-bits}·max(1, √q)`.
pub fn sqrt_upper(q: &BigRational, bits: u32) -> BigRational {
    assert!(!q.is_negative());
    if q.is_zero() {
        return BigRational::zero();
    }
    let scale = BigInt::one() << (2 * bits as u64);
    let scaled = (q.numer() * &scale) / q.denom();
    let mut s = scaled.sqrt();
    if &s * &s != scaled || &scaled * q.denom() != q.numer() * &scale {
        s += 1;
    }
    BigRational::new(s, BigInt::one() << bits as u64)
}

/// Rational `s ≤ √q`.
pub fn sqrt_lower(q: &BigRational, bits: u32) -> BigRational {
    assert!(!q.is_negative());
    if q.is_zero() {
        return BigRational::zero();
    }
    let scale = BigInt::one() << (2 * bits as u64);
    let scaled = (q.numer() * &scale) / q.denom();
    BigRational::new(scaled.sqrt(), BigInt::one() << bits as u64)
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn exact(q: BigRational) -> Self {
        Self { lo: q.clone(), hi: q }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }
}

/// Closed `f64` interval around a computed real, widened by [`REL_SLACK`].
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Encloses a value computed with a handful of correctly rounded
    /// transcendental operations.
    pub fn around(x: f64) -> Self {
        Self { lo: slack_down(x), hi: slack_up(x) }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

pub fn floor_rational(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_rational(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// `⌊√q⌋` for a non-negative rational.
pub fn isqrt_floor(q: &BigRational) -> BigInt {
    if q.is_negative() {
        return BigInt::zero();
    }
    floor_rational(q).sqrt()
}

pub fn sign_of(x: &BigInt) -> Sign {
    x.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_bounds_bracket() {
        for (n, d) in [(2, 1), (26, 1), (1, 3), (4225, 1), (1, 1_000_000_007)] {
            let x = q(n, d);
            let hi = sqrt_upper(&x, 64);
            let lo = sqrt_lower(&x, 64);
            assert!(&hi * &hi >= x);
            assert!(&lo * &lo <= x);
            assert!(&hi - &lo <= q(1, 1 << 40));
        }
        assert_eq!(sqrt_upper(&q(25, 4), 8), q(5, 2));
    }

    #[test]
    fn ln_of_huge_integer() {
        let x = BigInt::from(3).pow(2000);
        let got = ln_bigint(&x);
        let want = 2000.0 * 3f64.ln();
        assert!((got - want).abs() / want < 1e-14);
    }

    #[test]
    fn directed_conversions() {
        let third = q(1, 3);
        assert!(rational_from_f64(f64_up(&third)) >= third);
        assert!(rational_from_f64(f64_down(&third)) <= third);
    }
}
