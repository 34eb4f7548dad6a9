use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use latshift::corpus::{corpus, random_unimodular};
use latshift::counting::{count_shifted, count_via_sides, sides_clean};
use latshift::covariogram::lattice_sum;
use latshift::distribution::{exact_pmf, support_bound, triangle_pmf, Pmf};
use latshift::geom::{polygon_to_json, IntPolygon, IntVector, RationalPoint};
use latshift::moments;
use latshift::spectral::{fourier_coeff, fourier_quadrature};

use crate::Output;

const CHECKS: [&str; 10] = [
    "mean=area",
    "variance=theorem",
    "support<=bound",
    "symmetric",
    "covariogram=theorem",
    "fourier=quadrature",
    "negation",
    "unimodular",
    "sides=direct",
    "triangle=closed",
];

// Moves half the mass of the smallest value onto the largest.
fn sabotage(p: &Pmf) -> Pmf {
    let mut entries = p.entries().clone();
    let lo = p.min_value();
    let half = entries[&lo].clone() / BigRational::from_integer(2.into());
    let hi = if p.support_size() == 1 { lo + 1 } else { p.max_value() };
    *entries.get_mut(&lo).expect("present") -= &half;
    *entries.entry(hi).or_insert_with(|| BigRational::from_integer(0.into())) += half;
    Pmf::new(entries).expect("mass is conserved")
}

fn check_polygon(p: &IntPolygon, rng: &mut ChaCha8Rng, spoil: bool) -> BTreeMap<&'static str, Option<bool>> {
    let mut law = exact_pmf(p);
    if spoil {
        law = sabotage(&law);
    }
    let mut r = BTreeMap::new();
    r.insert("mean=area", Some(law.mean() == p.area()));
    r.insert("variance=theorem", Some(law.variance() == moments::variance(p)));
    r.insert("support<=bound", Some(law.support_size() as i64 <= support_bound(p)));
    r.insert("symmetric", Some(law.is_symmetric()));
    r.insert("covariogram=theorem", Some(lattice_sum(p, p).covariance == moments::variance(p)));
    let mut fourier = true;
    for x in -2..=2 {
        for y in -2..=2 {
            let m = IntVector::new(x, y);
            fourier &= fourier_quadrature(p, m, 1e-8)
                .map(|q| (q - fourier_coeff(p, m).to_complex()).norm() <= 1e-8)
                .unwrap_or(false);
        }
    }
    r.insert("fourier=quadrature", Some(fourier));
    r.insert("negation", Some(exact_pmf(&p.negate()) == law));
    let unimodular = (0..2).all(|_| {
        let a = random_unimodular(rng, 5);
        p.apply_unimodular(&a).map(|ap| exact_pmf(&ap) == law).unwrap_or(false)
    });
    r.insert("unimodular", Some(unimodular));
    let mut pointwise = true;
    let mut done = 0;
    while done < 20 {
        let (xd, yd) = (rng.gen_range(2..=1000), rng.gen_range(2..=1000));
        let x = RationalPoint::from_ratios(rng.gen_range(0..xd), xd, rng.gen_range(0..yd), yd);
        if !sides_clean(p, &x) {
            continue;
        }
        done += 1;
        pointwise &= count_shifted(p, &x).count == count_via_sides(p, &x);
    }
    r.insert("sides=direct", Some(pointwise));
    r.insert(
        "triangle=closed",
        p.is_triangle().then(|| triangle_pmf(p).map(|t| t == law).unwrap_or(false)),
    );
    r
}

pub fn run(size: usize, seed: u64, spoil: bool) -> Output {
    let polys = corpus(size, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut csv = format!("polygon,{}\n", CHECKS.join(","));
    let mut failures = 0;
    for (i, p) in polys.iter().enumerate() {
        let results = check_polygon(p, &mut rng, spoil && i == 0);
        failures += results.values().filter(|r| **r == Some(false)).count();
        let cells: Vec<&str> = CHECKS
            .iter()
            .map(|c| match results[c] {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "n/a",
            })
            .collect();
        csv.push_str(&format!("{i},{}\n", cells.join(",")));
        let checks: BTreeMap<&str, Value> = results.iter().map(|(k, v)| (*k, json!(v))).collect();
        rows.push(json!({
            "polygon": i,
            "vertices": polygon_to_json(p)["vertices"],
            "checks": checks,
        }));
    }
    let mut warnings = Vec::new();
    if polys.is_empty() {
        warnings.push("empty corpus: nothing was checked");
    }
    let pass = failures == 0;
    Output {
        json: json!({
            "corpus_size": size,
            "seed": seed,
            "sabotage": spoil,
            "pass": pass,
            "failures": failures,
            "checks": CHECKS,
            "matrix": rows,
            "warnings": warnings,
        }),
        csv,
        ok: pass,
    }
}
