//! Closed-form expectation, variance and covariance from side profiles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::geom::{IntPolygon, IntVector, SideProfile};

/// Mean, variance, and the per-direction split of the variance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentReport {
    pub expectation: BigRational,
    pub variance: BigRational,
    /// Each entry is one line direction (represented by its first
    /// counterclockwise primitive vector) and its share `(l+ - l-)^2 / 12`.
    pub contributions: Vec<(IntVector, BigRational)>,
}

/// `E X_P`, which is the area.
pub fn expectation(p: &IntPolygon) -> BigRational {
    p.area()
}

/// `+|v||w|` for equal directions, `-|v||w|` for opposite ones, else 0 (affine lengths).
pub fn side_dot(v: IntVector, w: IntVector) -> Result<i64> {
    let (u1, l1) = v.primitive()?;
    let (u2, l2) = w.primitive()?;
    Ok(if u1 == u2 {
        l1 * l2
    } else if u1 == -u2 {
        -l1 * l2
    } else {
        0
    })
}

fn twelfth(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(12))
}

/// Covariance from two side profiles: `(1/12) sum_ij v_i o w_j`.
pub fn profile_covariance(a: &SideProfile, b: &SideProfile) -> BigRational {
    let mut total = 0i64;
    for &(u, l) in a.entries() {
        for &(w, m) in b.entries() {
            total += side_dot(u * l, w * m).expect("profile lengths are positive");
        }
    }
    twelfth(total)
}

/// `cov(X_P, X_Q)`, exact.
pub fn covariance(p: &IntPolygon, q: &IntPolygon) -> BigRational {
    let total: i64 = p
        .sides()
        .iter()
        .flat_map(|&v| q.sides().iter().map(move |&w| side_dot(v, w).expect("nonzero sides")))
        .sum();
    twelfth(total)
}

/// `Var X_P`, computed as the self-covariance so parallel sides cancel on their own.
pub fn variance(p: &IntPolygon) -> BigRational {
    covariance(p, p)
}

/// Sum of squared affine lengths over 12; equals the variance only for
/// polygons with no pair of parallel sides.
pub fn variance_no_parallel(p: &IntPolygon) -> BigRational {
    twelfth(p.affine_lengths().iter().map(|l| l * l).sum())
}

pub fn moment_report(p: &IntPolygon) -> MomentReport {
    let profile = p.side_profile();
    let mut contributions = Vec::new();
    let mut seen: Vec<IntVector> = Vec::new();
    for &(u, l) in profile.entries() {
        if seen.contains(&-u) {
            continue;
        }
        seen.push(u);
        let diff = l - profile.length_of(-u);
        contributions.push((u, twelfth(diff * diff)));
    }
    let variance = contributions
        .iter()
        .fold(BigRational::zero(), |acc, (_, c)| acc + c);
    debug_assert_eq!(variance, self::variance(p));
    MomentReport {
        expectation: expectation(p),
        variance,
        contributions,
    }
}
