//! Lattice counts of a polygon under an explicit shift.
//!
//! `count_shifted` is the direct definition: lattice points in the closed set
//! `P + x`. `count_via_sides` and `count_via_ceiling` are the side-sum and
//! ceiling shortcuts; at boundary-clean shifts all routes agree exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::Result;
use crate::exact::{bits, big_to, ceil_div, floor_div, Int, Width};
use crate::geom::{IntPolygon, IntVector, RationalPoint};

/// Shift expressed as `(x / d, y / d)` with `d > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomPoint<T> {
    pub x: T,
    pub y: T,
    pub d: T,
}

impl HomPoint<BigInt> {
    pub fn from_rational(p: &RationalPoint) -> Self {
        let d = p.x.denom().lcm(p.y.denom());
        let x = p.x.numer() * (&d / p.x.denom());
        let y = p.y.numer() * (&d / p.y.denom());
        HomPoint { x, y, d }
    }

    pub(crate) fn bits(&self) -> f64 {
        bits(&self.x).max(bits(&self.y)).max(bits(&self.d))
    }

    pub(crate) fn lower<T: Int>(&self) -> HomPoint<T> {
        HomPoint {
            x: big_to(&self.x),
            y: big_to(&self.y),
            d: big_to(&self.d),
        }
    }
}

/// A shift together with whether some lattice point sits on the shifted boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSample {
    pub point: RationalPoint,
    pub boundary_clean: bool,
}

/// Result of [`count_shifted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftCount {
    pub count: i64,
    pub boundary_clean: bool,
}

#[derive(Debug, Clone)]
struct Edge<T> {
    px: T,
    py: T,
    ux: T,
    uy: T,
}

/// Polygon prepared for repeated column-scan counting at a fixed integer width.
///
/// The polygon is translated so its bounding box starts at the origin; lattice
/// counts are invariant under integer translation.
#[derive(Debug, Clone)]
pub(crate) struct ColumnCounter<T> {
    xmax: T,
    lower: Vec<Edge<T>>,
    upper: Vec<Edge<T>>,
}

pub(crate) fn coord_bits(p: &IntPolygon) -> f64 {
    let (lo, hi) = p.bounding_box();
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1) as f64;
    let dir = p
        .sides()
        .iter()
        .map(|s| {
            let (u, _) = s.primitive().expect("nonzero side");
            u.x.abs().max(u.y.abs())
        })
        .max()
        .unwrap_or(1) as f64;
    extent.log2().ceil() + dir.log2().ceil()
}

impl<T: Int> ColumnCounter<T> {
    pub(crate) fn new(p: &IntPolygon) -> Self {
        let (lo, hi) = p.bounding_box();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for (&a, &s) in p.vertices().iter().zip(p.sides()) {
            let (u, _) = s.primitive().expect("nonzero side");
            let e = Edge {
                px: T::lift(a.x - lo.x),
                py: T::lift(a.y - lo.y),
                ux: T::lift(u.x),
                uy: T::lift(u.y),
            };
            if u.x > 0 {
                lower.push(e);
            } else if u.x < 0 {
                upper.push(e);
            }
        }
        ColumnCounter {
            xmax: T::lift(hi.x - lo.x),
            lower,
            upper,
        }
    }

    /// Lattice points in the closed shifted polygon and the boundary-clean flag.
    pub(crate) fn count(&self, r: &HomPoint<T>) -> (i64, bool) {
        let d = &r.d;
        let c_lo = ceil_div(&r.x, d);
        let c_hi = floor_div(&(self.xmax.clone() * d.clone() + r.x.clone()), d);
        let mut total = 0i64;
        let mut clean = true;
        let mut c = c_lo;
        while c <= c_hi {
            // column position relative to the polygon, times d
            let cx = c.clone() * d.clone() - r.x.clone();
            let mut lo: Option<(T, bool)> = None;
            for e in &self.lower {
                let n = e.ux.clone() * (e.py.clone() * d.clone() + r.y.clone())
                    + e.uy.clone() * (cx.clone() - e.px.clone() * d.clone());
                let den = e.ux.clone() * d.clone();
                let v = ceil_div(&n, &den);
                let exact = n.is_multiple_of(&den);
                lo = match lo {
                    Some((cur, ex)) if cur > v => Some((cur, ex)),
                    Some((cur, ex)) if cur == v => Some((cur, ex || exact)),
                    _ => Some((v, exact)),
                };
            }
            let mut hi: Option<(T, bool)> = None;
            for e in &self.upper {
                let n = e.ux.clone() * (e.py.clone() * d.clone() + r.y.clone())
                    + e.uy.clone() * (cx.clone() - e.px.clone() * d.clone());
                let den = e.ux.clone() * d.clone();
                let v = floor_div(&n, &den);
                let exact = n.is_multiple_of(&den);
                hi = match hi {
                    Some((cur, ex)) if cur < v => Some((cur, ex)),
                    Some((cur, ex)) if cur == v => Some((cur, ex || exact)),
                    _ => Some((v, exact)),
                };
            }
            if let (Some((lo, lo_exact)), Some((hi, hi_exact))) = (lo, hi) {
                if lo <= hi {
                    let n = (hi - lo + T::one()).to_i64().expect("count fits i64");
                    total += n;
                    let on_side = cx.is_zero() || cx == self.xmax.clone() * d.clone();
                    if lo_exact || hi_exact || on_side {
                        clean = false;
                    }
                }
            }
            c += T::one();
        }
        (total, clean)
    }
}

macro_rules! at_width {
    ($width:expr, $t:ident => $body:expr) => {
        match $width {
            Width::I64 => {
                type $t = i64;
                $body
            }
            Width::I128 => {
                type $t = i128;
                $body
            }
            Width::Big => {
                type $t = num_bigint::BigInt;
                $body
            }
        }
    };
}
pub(crate) use at_width;

/// Number of lattice points in the closed set `P + x`.
///
/// `boundary_clean` is false when some lattice point lies exactly on the
/// boundary of `P + x`.
pub fn count_shifted(p: &IntPolygon, x: &RationalPoint) -> ShiftCount {
    let h = HomPoint::from_rational(x);
    let width = Width::for_bits(coord_bits(p) + h.bits() + 4.0);
    let (count, boundary_clean) = at_width!(width, T => {
        ColumnCounter::<T>::new(p).count(&h.lower::<T>())
    });
    ShiftCount {
        count,
        boundary_clean,
    }
}

/// Counts lattice points of `x (+) v` under the orientation convention.
///
/// The parallelogram is `{s x + t v}` with `t` in `[0, 1)` and `s` in `(0, 1)`
/// when `x ^ v > 0`, `s` in `(0, 1]` when `x ^ v < 0`. With this convention the
/// result equals `|v|_aff * ceil(x ^ v / |v|_aff)` for every shift with
/// `x ^ v != 0`. A degenerate parallelogram (`x ^ v = 0`) counts no interior
/// points and returns `|v|_aff`.
pub fn count_parallelogram_oriented(v: IntVector, x: &RationalPoint) -> Result<i64> {
    let l = v.affine_length()?;
    let h = HomPoint::from_rational(x);
    let vb = (v.x.abs().max(v.y.abs()).max(1) as f64).log2().ceil();
    let width = Width::for_bits(h.bits() + 2.0 * vb + 4.0);
    let n = at_width!(width, T => parallelogram_points::<T>(v, &h.lower::<T>()));
    let w = h.x.clone() * BigInt::from(v.y) - BigInt::from(v.x) * h.y.clone();
    Ok(if w.is_negative() { -n } else { n + l })
}

fn parallelogram_points<T: Int>(v: IntVector, x: &HomPoint<T>) -> i64 {
    let d = &x.d;
    let vx = T::lift(v.x);
    let vy = T::lift(v.y);
    // x ^ v, scaled by d
    let w = x.x.clone() * vy.clone() - vx.clone() * x.y.clone();
    if w.is_zero() {
        return 0;
    }
    let xs = [T::zero(), x.x.clone(), vx.clone() * d.clone(), x.x.clone() + vx * d.clone()];
    let ys = [T::zero(), x.y.clone(), vy.clone() * d.clone(), x.y.clone() + vy * d.clone()];
    let min = |a: &[T; 4]| a.iter().min().cloned().unwrap();
    let max = |a: &[T; 4]| a.iter().max().cloned().unwrap();
    let (x0, x1) = (ceil_div(&min(&xs), d), floor_div(&max(&xs), d));
    let (y0, y1) = (ceil_div(&min(&ys), d), floor_div(&max(&ys), d));
    let mut count = 0;
    let mut my = y0;
    while my <= y1 {
        let mut mx = x0.clone();
        while mx <= x1 {
            // s * w = (m ^ v) * d, t * w = x ^ m
            let mv = (mx.clone() * T::lift(v.y) - T::lift(v.x) * my.clone()) * d.clone();
            let xm = x.x.clone() * my.clone() - mx.clone() * x.y.clone();
            let inside = if w.is_positive() {
                mv.is_positive() && mv < w && !xm.is_negative() && xm < w
            } else {
                mv.is_negative() && mv >= w && !xm.is_positive() && xm > w
            };
            if inside {
                count += 1;
            }
            mx += T::one();
        }
        my += T::one();
    }
    count
}

/// `|v|_aff * ceil(x ^ (v / |v|_aff))`, exactly.
pub fn count_via_ceiling(v: IntVector, x: &RationalPoint) -> Result<i64> {
    let (u, l) = v.primitive()?;
    let h = HomPoint::from_rational(x);
    let num = h.x * BigInt::from(u.y) - BigInt::from(u.x) * h.y;
    let c = ceil_div(&num, &h.d);
    Ok(l * c.to_i64().expect("ceiling of a bounded wedge fits i64"))
}

/// Side-sum route for the shifted count.
///
/// Each side contributes `l_i (ceil(x ^ u_i) - 1)`: the lattice points its
/// parallelogram sweeps into `P + x` minus those it sweeps out. The adjacent
/// parallelograms overlap in one corner cell overall, hence the `- 1`.
pub fn count_via_sides(p: &IntPolygon, x: &RationalPoint) -> i64 {
    let pc = p.pick_counts();
    let base = pc.interior + pc.boundary;
    let sides: i64 = p
        .sides()
        .iter()
        .map(|&s| {
            let (_, l) = s.primitive().expect("nonzero side");
            count_via_ceiling(s, x).expect("nonzero side") - l
        })
        .sum();
    base + sides - 1
}

/// True when no side line of `P + x` passes through a lattice point.
///
/// For a closed lattice polygon this is equivalent to the boundary-clean flag
/// of [`count_shifted`]: every side spans at least one lattice period along its
/// own line.
pub fn sides_clean(p: &IntPolygon, x: &RationalPoint) -> bool {
    let h = HomPoint::from_rational(x);
    p.sides().iter().all(|&s| {
        let (u, _) = s.primitive().expect("nonzero side");
        let num = h.x.clone() * BigInt::from(u.y) - BigInt::from(u.x) * h.y.clone();
        !num.is_multiple_of(&h.d)
    })
}

/// Dyadic fast path used by sampling: the shift is `(a, b) / 2^64`.
#[derive(Debug, Clone)]
pub(crate) struct DyadicSideCounter {
    base: i64,
    sides: Vec<(i128, i128, i64)>,
}

impl DyadicSideCounter {
    pub(crate) fn new(p: &IntPolygon) -> Self {
        let pc = p.pick_counts();
        let sides = p
            .sides()
            .iter()
            .map(|s| {
                let (u, l) = s.primitive().expect("nonzero side");
                (u.x as i128, u.y as i128, l)
            })
            .collect();
        DyadicSideCounter {
            base: pc.interior - 1,
            sides,
        }
    }

    /// `Some(count)` at clean shifts, `None` when a side line hits a lattice point.
    pub(crate) fn count(&self, a: u64, b: u64) -> Option<i64> {
        let mut total = self.base;
        for &(ux, uy, l) in &self.sides {
            let num = a as i128 * uy - ux * b as i128;
            if num & ((1i128 << 64) - 1) == 0 {
                return None;
            }
            // ceil(num / 2^64)
            let c = -((-num) >> 64);
            total += l * c as i64;
        }
        Some(total)
    }
}

pub(crate) fn dyadic_rational(a: u64, b: u64) -> RationalPoint {
    let d: BigInt = BigInt::one() << 64usize;
    RationalPoint::new(
        num_rational::BigRational::new(BigInt::from(a), d.clone()),
        num_rational::BigRational::new(BigInt::from(b), d),
    )
}
