//! Small exact-integer helpers shared by the hot kernels.
//!
//! The kernels are generic over the integer type so one code path runs on
//! `i64`, `i128` or `BigInt`; callers pick the narrowest type whose a-priori
//! magnitude bound fits.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Integer types usable by the exact kernels.
pub trait Int:
    Integer + Signed + Clone + std::ops::AddAssign + FromPrimitive + ToPrimitive + Hash + Debug + Send + Sync + 'static
{
    fn lift(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every kernel integer type")
    }
    fn to_bigint(&self) -> BigInt;
}

impl Int for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Which integer width a kernel should run at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Width {
    I64,
    I128,
    Big,
}

impl Width {
    /// Narrowest width whose range covers `log2_bound` bits (plus sign and slack).
    pub fn for_bits(log2_bound: f64) -> Width {
        if log2_bound < 60.0 {
            Width::I64
        } else if log2_bound < 124.0 {
            Width::I128
        } else {
            Width::Big
        }
    }
}

#[inline]
pub fn floor_div<T: Int>(n: &T, d: &T) -> T {
    n.div_floor(d)
}

#[inline]
pub fn ceil_div<T: Int>(n: &T, d: &T) -> T {
    -((-n.clone()).div_floor(d))
}

/// Exact ceiling of a rational.
pub fn ceil_rational(r: &BigRational) -> BigInt {
    ceil_div(r.numer(), r.denom())
}

/// Exact floor of a rational.
pub fn floor_rational(r: &BigRational) -> BigInt {
    floor_div(r.numer(), r.denom())
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Lowest-terms `p/q` string with positive denominator; integers print bare.
pub fn fraction_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or `p`.
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn bits(v: &BigInt) -> f64 {
    v.bits() as f64
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn big_to<T: Int>(v: &BigInt) -> T {
    if let Some(x) = v.to_i64() {
        return T::lift(x);
    }
    // Only reached for the i128/BigInt widths; the caller's bound guarantees a fit.
    let mut acc = T::zero();
    let base = T::lift(1 << 32);
    let (sign, digits) = v.to_u32_digits();
    for d in digits.iter().rev() {
        acc = acc * base.clone() + T::lift(*d as i64);
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}
