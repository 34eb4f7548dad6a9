use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fraction_string, parse_fraction};

/// Probability mass function on the integers with exact rational weights.
///
/// Every stored probability is positive and they sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pmf {
    entries: BTreeMap<i64, BigRational>,
}

impl Pmf {
    /// Validates positivity and normalization.
    pub fn new(entries: BTreeMap<i64, BigRational>) -> Result<Pmf> {
        if entries.is_empty() {
            return Err(Error::InvalidPmf("empty support".into()));
        }
        if let Some((v, p)) = entries.iter().find(|(_, p)| !p.is_positive()) {
            return Err(Error::InvalidPmf(format!("P({v}) = {p} is not positive")));
        }
        let total: BigRational = entries.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidPmf(format!("total mass {total}")));
        }
        Ok(Pmf { entries })
    }

    /// Drops zero weights without re-checking the total.
    pub(crate) fn from_weights(weights: BTreeMap<i64, BigRational>) -> Pmf {
        let entries = weights.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Pmf { entries }
    }

    pub fn point(v: i64) -> Pmf {
        Pmf {
            entries: BTreeMap::from([(v, BigRational::one())]),
        }
    }

    pub fn entries(&self) -> &BTreeMap<i64, BigRational> {
        &self.entries
    }

    pub fn prob(&self, v: i64) -> BigRational {
        self.entries.get(&v).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<i64> {
        self.entries.keys().copied().collect()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn min_value(&self) -> i64 {
        *self.entries.keys().next().expect("nonempty")
    }

    pub fn max_value(&self) -> i64 {
        *self.entries.keys().next_back().expect("nonempty")
    }

    /// True when the support has no gaps.
    pub fn is_contiguous(&self) -> bool {
        (self.max_value() - self.min_value() + 1) as usize == self.entries.len()
    }

    pub fn total_mass(&self) -> BigRational {
        self.entries.values().sum()
    }

    pub fn mean(&self) -> BigRational {
        self.entries
            .iter()
            .map(|(&v, p)| p * BigInt::from(v))
            .sum()
    }

    pub fn central_moment(&self, k: u32) -> BigRational {
        let mean = self.mean();
        self.entries
            .iter()
            .map(|(&v, p)| {
                let d = BigRational::from_integer(v.into()) - &mean;
                p * num_traits::pow(d, k as usize)
            })
            .sum()
    }

    pub fn variance(&self) -> BigRational {
        self.central_moment(2)
    }

    pub fn convolve(&self, other: &Pmf) -> Pmf {
        convolve(self, other)
    }

    pub fn shift(&self, c: i64) -> Pmf {
        shift(self, c)
    }

    /// Coefficients of `sum p_k z^(k - min)`, lowest degree first.
    pub fn generating_polynomial(&self) -> Vec<BigRational> {
        let lo = self.min_value();
        let mut coeffs = vec![BigRational::zero(); (self.max_value() - lo + 1) as usize];
        for (&v, p) in &self.entries {
            coeffs[(v - lo) as usize] = p.clone();
        }
        coeffs
    }

    /// `{"support": [[v, "p/q"], ...], "mean": "p/q", "variance": "p/q"}`.
    pub fn to_json(&self) -> Value {
        json!({
            "support": self
                .entries
                .iter()
                .map(|(v, p)| json!([v, fraction_string(p)]))
                .collect::<Vec<_>>(),
            "mean": fraction_string(&self.mean()),
            "variance": fraction_string(&self.variance()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Pmf> {
        let bad = |m: &str| Error::InvalidPmf(m.to_string());
        let support = v
            .get("support")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing support array"))?;
        let mut entries = BTreeMap::new();
        for item in support {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("entry"))?;
            let value = pair[0].as_i64().ok_or_else(|| bad("value"))?;
            let p = pair[1]
                .as_str()
                .and_then(parse_fraction)
                .ok_or_else(|| bad("probability"))?;
            entries.insert(value, p);
        }
        Pmf::new(entries)
    }
}

/// Uniform law on `{0, ..., n - 1}`.
pub fn uniform_pmf(n: i64) -> Result<Pmf> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("uniform_pmf needs n >= 1, got {n}")));
    }
    let p = BigRational::new(BigInt::one(), BigInt::from(n));
    Ok(Pmf {
        entries: (0..n).map(|v| (v, p.clone())).collect(),
    })
}

/// Law of the sum of independent variables.
pub fn convolve(p: &Pmf, q: &Pmf) -> Pmf {
    let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (&a, pa) in &p.entries {
        for (&b, qb) in &q.entries {
            *out.entry(a + b).or_insert_with(BigRational::zero) += pa * qb;
        }
    }
    Pmf::from_weights(out)
}

pub fn shift(p: &Pmf, c: i64) -> Pmf {
    Pmf {
        entries: p.entries.iter().map(|(&v, w)| (v + c, w.clone())).collect(),
    }
}

/// Law of `n * X`.
pub fn scale_support(p: &Pmf, n: i64) -> Result<Pmf> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("scale factor must be >= 1, got {n}")));
    }
    Ok(Pmf {
        entries: p.entries.iter().map(|(&v, w)| (v * n, w.clone())).collect(),
    })
}

/// Support translated by minus the mean.
pub fn centered_pmf(p: &Pmf) -> BTreeMap<BigRational, BigRational> {
    let mean = p.mean();
    p.entries
        .iter()
        .map(|(&v, w)| (BigRational::from_integer(v.into()) - &mean, w.clone()))
        .collect()
}

/// Law of `X mod n` on `{0, ..., n - 1}`.
pub fn reduce_mod(p: &Pmf, n: i64) -> Result<Pmf> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("modulus must be >= 1, got {n}")));
    }
    let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (&v, w) in &p.entries {
        *out.entry(v.rem_euclid(n)).or_insert_with(BigRational::zero) += w;
    }
    Ok(Pmf::from_weights(out))
}

/// `P(X - EX = t) == P(X - EX = -t)` for every offset `t`.
pub fn is_symmetric(p: &Pmf) -> bool {
    let c = centered_pmf(p);
    c.iter().all(|(t, w)| c.get(&-t) == Some(w))
}

impl Pmf {
    pub fn is_symmetric(&self) -> bool {
        is_symmetric(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn pmf(pairs: &[(i64, i64, i64)]) -> Pmf {
        Pmf::new(pairs.iter().map(|&(v, n, d)| (v, rational(n, d))).collect()).unwrap()
    }

    #[test]
    fn uniform_and_convolution_examples() {
        assert_eq!(uniform_pmf(1).unwrap(), Pmf::point(0));
        let u2 = uniform_pmf(2).unwrap();
        let u3 = uniform_pmf(3).unwrap();
        assert_eq!(convolve(&u2, &u2), pmf(&[(0, 1, 4), (1, 1, 2), (2, 1, 4)]));
        assert_eq!(convolve(&u2, &u3), pmf(&[(0, 1, 6), (1, 1, 3), (2, 1, 3), (3, 1, 6)]));
        assert!(uniform_pmf(0).is_err());
    }

    #[test]
    fn validation_rejects_bad_mass() {
        assert!(Pmf::new(BTreeMap::from([(0, rational(1, 3))])).is_err());
        assert!(Pmf::new(BTreeMap::from([(0, rational(3, 2)), (1, rational(-1, 2))])).is_err());
        assert!(Pmf::new(BTreeMap::new()).is_err());
    }

    #[test]
    fn centered_examples() {
        let c = centered_pmf(&pmf(&[(0, 1, 2), (1, 1, 2)]));
        assert_eq!(c, BTreeMap::from([(rational(-1, 2), rational(1, 2)), (rational(1, 2), rational(1, 2))]));
        assert_eq!(centered_pmf(&Pmf::point(1)), BTreeMap::from([(rational(0, 1), rational(1, 1))]));
        let c = centered_pmf(&pmf(&[(0, 1, 4), (1, 1, 2), (2, 1, 4)]));
        assert_eq!(c.len(), 3);
        assert_eq!(c[&rational(-1, 1)], rational(1, 4));
        assert!(pmf(&[(0, 1, 4), (1, 1, 2), (2, 1, 4)]).is_symmetric());
        assert!(!pmf(&[(0, 1, 4), (1, 3, 4)]).is_symmetric());
    }

    #[test]
    fn reduce_mod_examples() {
        let p = pmf(&[(0, 1, 4), (1, 1, 2), (2, 1, 4)]);
        assert_eq!(reduce_mod(&p, 2).unwrap(), uniform_pmf(2).unwrap());
        assert_eq!(reduce_mod(&p, 1).unwrap(), Pmf::point(0));
        assert_eq!(reduce_mod(&pmf(&[(3, 1, 2), (6, 1, 2)]), 3).unwrap(), Pmf::point(0));
        assert_eq!(reduce_mod(&pmf(&[(-1, 1, 2), (5, 1, 2)]), 7).unwrap(), pmf(&[(5, 1, 2), (6, 1, 2)]));
    }

    #[test]
    fn moments_and_shape() {
        let p = pmf(&[(0, 1, 4), (1, 1, 2), (2, 1, 4)]);
        assert_eq!(p.mean(), rational(1, 1));
        assert_eq!(p.variance(), rational(1, 2));
        assert_eq!(shift(&p, 3).mean(), rational(4, 1));
        assert_eq!(scale_support(&p, 3).unwrap().support(), vec![0, 3, 6]);
        assert!(p.is_contiguous());
        assert!(!scale_support(&p, 3).unwrap().is_contiguous());
        let bern = pmf(&[(0, 1, 2), (1, 1, 2)]);
        assert_eq!(bern.central_moment(4), rational(1, 16));
        assert_eq!(bern.central_moment(3), rational(0, 1));
    }

    #[test]
    fn json_round_trip() {
        let p = pmf(&[(0, 1, 4), (1, 1, 2), (2, 1, 4)]);
        let j = p.to_json();
        assert_eq!(j["support"][0], json!([0, "1/4"]));
        assert_eq!(j["mean"], json!("1"));
        assert_eq!(j["variance"], json!("1/2"));
        assert_eq!(Pmf::from_json(&j).unwrap(), p);
    }
}
