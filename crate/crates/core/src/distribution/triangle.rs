use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::pmf::{shift, Pmf};
use crate::error::{Error, Result};
use crate::geom::IntPolygon;

/// Closed-form law of the count for an integer triangle.
///
/// With affine side lengths `a, b, c` and `g = gcd(a, b, c)` the count is
/// `g * (U_{a/g} + U_{b/g} + U_{c/g} + U_2)` plus the integer that makes its
/// mean equal the area, where the `U_n` are independent uniforms on
/// `{0, ..., n - 1}`.
pub fn triangle_pmf(t: &IntPolygon) -> Result<Pmf> {
    if !t.is_triangle() {
        return Err(Error::NotATriangle(t.len()));
    }
    let lens = t.affine_lengths();
    let g = lens[0].gcd(&lens[1]).gcd(&lens[2]);
    // multiplicities of the uniform sum, over a common denominator
    let mut mult: Vec<u64> = vec![1, 1];
    for l in &lens {
        let n = (l / g) as usize;
        let mut next = vec![0u64; mult.len() + n - 1];
        for (i, &m) in mult.iter().enumerate() {
            for slot in &mut next[i..i + n] {
                *slot += m;
            }
        }
        mult = next;
    }
    let total = BigInt::from(2 * lens.iter().map(|l| l / g).product::<i64>());
    let law = Pmf::from_weights(
        mult.iter()
            .enumerate()
            .map(|(k, &m)| (k as i64 * g, BigRational::new(m.into(), total.clone())))
            .collect(),
    );
    let offset: BigRational = t.area() - law.mean();
    if !offset.is_integer() {
        return Err(Error::ShiftNotInteger(offset.to_string()));
    }
    let offset = offset
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::ShiftNotInteger(offset.to_string()))?;
    Ok(shift(&law, offset))
}

/// At most `affine perimeter - 1` distinct values are taken.
pub fn support_bound(p: &IntPolygon) -> i64 {
    p.affine_perimeter() - 1
}
