use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational;

/// Integer vector (or lattice point) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntVector {
    pub x: i64,
    pub y: i64,
}

impl IntVector {
    pub const ZERO: IntVector = IntVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        IntVector { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Oriented area `self.x * other.y - other.x * self.y`.
    pub fn wedge(self, other: IntVector) -> i64 {
        self.x * other.y - other.x * self.y
    }

    pub fn dot(self, other: IntVector) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Number of lattice segments on the segment `0 -> self`.
    pub fn affine_length(self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.x.abs().gcd(&self.y.abs()))
    }

    /// `(self / |self|_aff, |self|_aff)`.
    pub fn primitive(self) -> Result<(IntVector, i64)> {
        let l = self.affine_length()?;
        Ok((IntVector::new(self.x / l, self.y / l), l))
    }

    /// Rotation by -pi/2: `(x, y) -> (y, -x)`.
    ///
    /// This is the orientation under which the closed-form Fourier
    /// coefficients agree with direct integration.
    pub fn perp(self) -> IntVector {
        IntVector::new(self.y, -self.x)
    }

    /// True when `self` and `other` point along the same line (either sense).
    pub fn is_parallel(self, other: IntVector) -> bool {
        self.wedge(other) == 0
    }

    pub fn to_point(self) -> RationalPoint {
        RationalPoint::from_int(self)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for IntVector {
    type Output = IntVector;
    fn add(self, o: IntVector) -> IntVector {
        IntVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for IntVector {
    type Output = IntVector;
    fn sub(self, o: IntVector) -> IntVector {
        IntVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector::new(-self.x, -self.y)
    }
}

impl Mul<i64> for IntVector {
    type Output = IntVector;
    fn mul(self, k: i64) -> IntVector {
        IntVector::new(self.x * k, self.y * k)
    }
}

/// Orders vectors by polar angle in `[0, 2pi)`, starting from the positive x axis.
pub fn angle_cmp(a: IntVector, b: IntVector) -> Ordering {
    fn half(v: IntVector) -> u8 {
        if v.y > 0 || (v.y == 0 && v.x > 0) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.wedge(b)))
}

pub fn affine_length(v: IntVector) -> Result<i64> {
    v.affine_length()
}

/// Exact wedge of a rational point with an integer vector.
pub fn wedge_point(a: &RationalPoint, b: IntVector) -> BigRational {
    &a.x * BigInt::from(b.y) - &a.y * BigInt::from(b.x)
}

/// Wedge of two integer vectors as an exact rational.
pub fn wedge(a: IntVector, b: IntVector) -> BigRational {
    BigRational::from_integer(BigInt::from(a.wedge(b)))
}

/// Point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        RationalPoint::new(rational(xn, xd), rational(yn, yd))
    }

    pub fn from_int(v: IntVector) -> Self {
        RationalPoint::new(
            BigRational::from_integer(v.x.into()),
            BigRational::from_integer(v.y.into()),
        )
    }

    pub fn origin() -> Self {
        RationalPoint::new(BigRational::zero(), BigRational::zero())
    }

    pub fn in_unit_square(&self) -> bool {
        let zero = BigRational::zero();
        let one = BigRational::from_integer(1.into());
        self.x >= zero && self.x <= one && self.y >= zero && self.y <= one
    }

    /// Cross product of two rational points.
    pub fn cross(&self, other: &RationalPoint) -> BigRational {
        &self.x * &other.y - &other.x * &self.y
    }

    pub fn add(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &BigRational) -> RationalPoint {
        RationalPoint::new(&self.x * k, &self.y * k)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// 2x2 integer matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, v: IntVector) -> IntVector {
        IntVector::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}
