//! Fourier coefficients of polygon indicators at integer frequencies and
//! the lattice-sum series they feed.
//!
//! For `m != 0` the coefficient `int_P exp(-2 pi i <m, t>) dt` is a rational
//! multiple of `1 / (2 pi i)`. Only frequencies orthogonal to a side of `P`
//! carry a nonzero coefficient, so the series run over finitely many rays.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::geom::{IntPolygon, IntVector};
use crate::moments::{covariance, side_dot};
use crate::par::{self, Execution};

/// `value / (2 pi i)` for `m != 0`; the plain area for `m = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierCoefficient {
    pub frequency: IntVector,
    pub value: BigRational,
}

impl FourierCoefficient {
    pub fn is_zero_frequency(&self) -> bool {
        self.frequency.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let v = to_f64(&self.value);
        if self.is_zero_frequency() {
            Complex64::new(v, 0.0)
        } else {
            Complex64::new(0.0, -v / (2.0 * PI))
        }
    }
}

/// Closed-form coefficient: `sum_j (m_perp o v_j) / |m|_aff^2` in units of `1 / (2 pi i)`.
pub fn fourier_coeff(p: &IntPolygon, m: IntVector) -> FourierCoefficient {
    if m.is_zero() {
        return FourierCoefficient {
            frequency: m,
            value: p.area(),
        };
    }
    let mp = m.perp();
    let g = m.x.abs().gcd(&m.y.abs());
    let total: i64 = p
        .sides()
        .iter()
        .filter(|&&v| mp.is_parallel(v))
        .map(|&v| side_dot(mp, v).expect("nonzero vectors"))
        .sum();
    FourierCoefficient {
        frequency: m,
        value: BigRational::new(BigInt::from(total), BigInt::from(g * g)),
    }
}

// Second divided difference of exp at z_j = -2 pi i s_j, with an error bound.
fn exp_divided_difference(s: [i64; 3]) -> (Complex64, f64) {
    let z = |v: i64| Complex64::new(0.0, -2.0 * PI * v as f64);
    let e = |v: i64| z(v).exp();
    let scale = s.iter().map(|v| v.abs()).max().unwrap_or(0) as f64 * 2.0 * PI + 1.0;
    let err = 16.0 * f64::EPSILON * scale;
    let [a, b, c] = s;
    let value = if a == b && b == c {
        e(a) / 2.0
    } else if a == b || b == c || a == c {
        let (twin, other) = if a == b {
            (a, c)
        } else if b == c {
            (b, a)
        } else {
            (a, b)
        };
        let h = z(other) - z(twin);
        ((e(other) - e(twin)) / h - e(twin)) / h
    } else {
        e(a) / ((z(a) - z(b)) * (z(a) - z(c)))
            + e(b) / ((z(b) - z(a)) * (z(b) - z(c)))
            + e(c) / ((z(c) - z(a)) * (z(c) - z(b)))
    };
    (value, err)
}

/// `int_P exp(-2 pi i <m, t>) dt` by fan triangulation and exact integration
/// of the exponential over each triangle.
pub fn fourier_quadrature(p: &IntPolygon, m: IntVector, tol: f64) -> Result<Complex64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let v = p.vertices();
    let s: Vec<i64> = v.iter().map(|&q| m.dot(q)).collect();
    let mut total = Complex64::zero();
    let mut estimate = 0.0;
    for i in 1..v.len() - 1 {
        let twice = (v[i] - v[0]).wedge(v[i + 1] - v[0]) as f64;
        let (dd, err) = exp_divided_difference([s[0], s[i], s[i + 1]]);
        total += dd * twice;
        estimate += err * twice.abs();
    }
    if estimate > tol {
        return Err(Error::ToleranceNotMet {
            estimate,
            tolerance: tol,
        });
    }
    Ok(total)
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order.max(1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((x + 1.0) / 2.0, w / 2.0));
    }
    out
}

/// Tensor Gauss-Legendre over each fan triangle (collapsed square map).
/// Accurate only when `order` resolves the oscillation across `P`.
pub fn fourier_gauss_legendre(p: &IntPolygon, m: IntVector, order: usize) -> Complex64 {
    let rule = gauss_legendre(order);
    let v = p.vertices();
    let (mx, my) = (m.x as f64, m.y as f64);
    let mut total = Complex64::zero();
    for i in 1..v.len() - 1 {
        let (a, b, c) = (v[0], v[i], v[i + 1]);
        let twice = (b - a).wedge(c - a) as f64;
        for &(u, wu) in &rule {
            for &(t, wt) in &rule {
                let x = a.x as f64 + u * (b.x - a.x) as f64 + u * t * (c.x - b.x) as f64;
                let y = a.y as f64 + u * (b.y - a.y) as f64 + u * t * (c.y - b.y) as f64;
                let phase = -2.0 * PI * (mx * x + my * y);
                total += Complex64::new(0.0, phase).exp() * (wu * wt * u * twice);
            }
        }
    }
    total
}

/// Primitive frequencies orthogonal to some side, both senses.
pub fn side_rays(p: &IntPolygon) -> Vec<IntVector> {
    let mut rays = BTreeSet::new();
    for &(u, _) in p.side_profile().entries() {
        rays.insert(u.perp());
        rays.insert(-u.perp());
    }
    rays.into_iter().collect()
}

/// Partial sum of `sum_{m != 0} f_P(m) f_Q(-m)` over multiples `k n`, `1 <= k <= R`,
/// of the side-orthogonal rays.
pub fn covariance_series(p: &IntPolygon, q: &IntPolygon, radius: u32) -> f64 {
    covariance_series_with(p, q, radius, Execution::default())
}

pub fn covariance_series_with(p: &IntPolygon, q: &IntPolygon, radius: u32, exec: Execution) -> f64 {
    let rq: BTreeSet<IntVector> = side_rays(q).into_iter().collect();
    let rays: Vec<IntVector> = side_rays(p).into_iter().filter(|n| rq.contains(n)).collect();
    let partial = par::map(exec, &rays, |&n| {
        let mut acc = BigRational::zero();
        for k in 1..=radius as i64 {
            let a = fourier_coeff(p, n * k).value;
            let b = fourier_coeff(q, n * -k).value;
            acc += a * b;
        }
        acc
    });
    let s: BigRational = partial.into_iter().sum();
    // (2 pi i)^2 = -4 pi^2
    -to_f64(&s) / (4.0 * PI * PI)
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesRow {
    pub radius: u32,
    pub partial_sum: f64,
    pub error: f64,
}

/// `covariance_series` at each radius against the exact covariance.
pub fn covariance_series_table(p: &IntPolygon, q: &IntPolygon, radii: &[u32]) -> Vec<SeriesRow> {
    let exact = to_f64(&covariance(p, q));
    radii
        .iter()
        .map(|&radius| {
            let partial_sum = covariance_series(p, q, radius);
            SeriesRow {
                radius,
                partial_sum,
                error: (partial_sum - exact).abs(),
            }
        })
        .collect()
}

type Layer = HashMap<IntVector, BigRational>;

fn step(layer: &Layer, base: &Layer) -> Layer {
    let mut next = Layer::new();
    for (s, a) in layer {
        for (m, b) in base {
            *next.entry(*s + *m).or_insert_with(BigRational::zero) += a * b;
        }
    }
    next
}

/// Truncated `E (X_P - E X_P)^k`: the sum over `k`-tuples of nonzero frequencies
/// (multiples up to `R` of side-orthogonal rays) adding to zero of the
/// product of their coefficients.
pub fn central_moment_series(p: &IntPolygon, k: u32, radius: u32) -> Result<Complex64> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("moment order must be >= 2, got {k}")));
    }
    if radius < 1 {
        return Err(Error::InvalidArgument("radius must be >= 1".into()));
    }
    let mut base = Layer::new();
    for n in side_rays(p) {
        for j in 1..=radius as i64 {
            let c = fourier_coeff(p, n * j).value;
            if !c.is_zero() {
                base.insert(n * j, c);
            }
        }
    }
    // tuples of length a and b = k - a meet at opposite partial sums
    let a = k / 2;
    let mut left = base.clone();
    for _ in 1..a {
        left = step(&left, &base);
    }
    let right = if k - a == a {
        left.clone()
    } else {
        step(&left, &base)
    };
    let mut s = BigRational::zero();
    for (v, x) in &left {
        if let Some(y) = right.get(&-*v) {
            s += x * y;
        }
    }
    let denom = Complex64::new(0.0, 2.0 * PI).powu(k);
    Ok(Complex64::new(to_f64(&s), 0.0) / denom)
}
