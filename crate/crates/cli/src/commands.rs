use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use latshift::covariogram::{covariogram_table, lattice_sum, CovariogramSum};
use latshift::distribution::{exact_pmf, support_bound, triangle_pmf, Pmf};
use latshift::exact::{fraction_string, to_f64};
use latshift::geom::{parse_polygon, polygon_to_json, IntPolygon, IntVector};
use latshift::montecarlo::{compare_to_exact, simulate as run_simulation, SimConfig};
use latshift::moments;
use latshift::par::Execution;
use latshift::spectral::{covariance_series, covariance_series_table, fourier_coeff, fourier_quadrature};

use crate::{CliError, CovMethod, DistMethod, Output};

pub fn load(path: &Path) -> Result<IntPolygon, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError {
        kind: "Io".into(),
        message: format!("{}: {e}", path.display()),
        line: None,
    })?;
    Ok(parse_polygon(&src)?)
}

fn ok(json: Value, csv: String) -> Result<Output, CliError> {
    Ok(Output { json, csv, ok: true })
}

fn pmf_csv(p: &Pmf) -> String {
    let mut out = String::from("value,probability\n");
    for (v, w) in p.entries() {
        out.push_str(&format!("{v},{}\n", fraction_string(w)));
    }
    out
}

pub fn analyze(path: &Path) -> Result<Output, CliError> {
    let p = load(path)?;
    let pc = p.pick_counts();
    let json = json!({
        "vertices": polygon_to_json(&p)["vertices"],
        "area": fraction_string(&pc.area),
        "interior": pc.interior,
        "boundary": pc.boundary,
        "affine_lengths": p.affine_lengths(),
        "affine_perimeter": p.affine_perimeter(),
        "expectation": fraction_string(&moments::expectation(&p)),
        "variance": fraction_string(&moments::variance(&p)),
        "support_bound": support_bound(&p),
        "centrally_symmetric": p.is_centrally_symmetric(),
    });
    let csv = json
        .as_object()
        .expect("object")
        .iter()
        .filter(|(k, _)| *k != "vertices" && *k != "affine_lengths")
        .map(|(k, v)| format!("{k},{}\n", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
        .fold(String::from("field,value\n"), |acc, row| acc + &row);
    ok(json, csv)
}

pub fn distribution(path: &Path, method: DistMethod, samples: u64, seed: u64, shards: u32) -> Result<Output, CliError> {
    let p = load(path)?;
    match method {
        DistMethod::Exact => {
            let law = exact_pmf(&p);
            ok(law.to_json(), pmf_csv(&law))
        }
        DistMethod::Triangle => {
            if !p.is_triangle() {
                return Err(CliError {
                    kind: "MethodMismatch".into(),
                    message: format!("method triangle needs a triangle, got {} sides", p.len()),
                    line: None,
                });
            }
            let law = triangle_pmf(&p)?;
            ok(law.to_json(), pmf_csv(&law))
        }
        DistMethod::Montecarlo => {
            let report = run_simulation(&p, SimConfig { samples, seed, shards })?;
            let n = BigInt::from(report.samples());
            let weights: BTreeMap<i64, BigRational> = report
                .tallies
                .iter()
                .map(|(&v, &c)| (v, BigRational::new(c.into(), n.clone())))
                .collect();
            let empirical = Pmf::new(weights)?;
            let mut json = empirical.to_json();
            json["samples"] = json!(samples);
            json["seed"] = json!(seed);
            json["comparison"] = compare_to_exact(&report, &exact_pmf(&p)).to_json();
            ok(json, pmf_csv(&empirical))
        }
    }
}

pub fn covariance(p: &Path, q: &Path, method: CovMethod, radius: u32) -> Result<Output, CliError> {
    let (p, q) = (load(p)?, load(q)?);
    let exact = moments::covariance(&p, &q);
    match method {
        CovMethod::Theorem => {
            let v = fraction_string(&exact);
            ok(json!({ "method": "theorem", "value": v }), format!("method,value\ntheorem,{v}\n"))
        }
        CovMethod::Covariogram => {
            let s = lattice_sum(&p, &q);
            let mut json = s.to_json();
            json["method"] = json!("covariogram");
            json["value"] = json["covariance"].clone();
            let v = fraction_string(&s.covariance);
            ok(json, format!("method,value\ncovariogram,{v}\n"))
        }
        CovMethod::Series => {
            if radius == 0 {
                return Err(latshift::Error::InvalidArgument("radius must be >= 1".into()).into());
            }
            let value = covariance_series(&p, &q, radius);
            let error = (value - to_f64(&exact)).abs();
            let json = json!({
                "method": "series",
                "radius": radius,
                "value": value,
                "exact": fraction_string(&exact),
                "error": error,
            });
            ok(json, format!("method,radius,value,error\nseries,{radius},{value},{error}\n"))
        }
    }
}

pub fn simulate(path: &Path, samples: u64, seed: u64, shards: u32) -> Result<Output, CliError> {
    let p = load(path)?;
    let report = run_simulation(&p, SimConfig { samples, seed, shards })?;
    let cmp = compare_to_exact(&report, &exact_pmf(&p));
    let mut json = report.to_json();
    json["comparison"] = cmp.to_json();
    Ok(Output {
        json,
        csv: report.to_csv(),
        ok: true,
    })
}

pub fn spectral(path: &Path, with: Option<&Path>, max_freq: i64, radii: &[u32]) -> Result<Output, CliError> {
    let p = load(path)?;
    let q = match with {
        Some(w) => load(w)?,
        None => p.clone(),
    };
    let mut coefficients = Vec::new();
    for x in -max_freq..=max_freq {
        for y in -max_freq..=max_freq {
            let m = IntVector::new(x, y);
            let c = fourier_coeff(&p, m);
            if num_traits::Zero::is_zero(&c.value) {
                continue;
            }
            let quad = fourier_quadrature(&p, m, 1e-8)?;
            coefficients.push(json!({
                "m": [x, y],
                "value": fraction_string(&c.value),
                "unit": if m.is_zero() { "1" } else { "1/(2 pi i)" },
                "quadrature": [quad.re, quad.im],
            }));
        }
    }
    if radii.contains(&0) {
        return Err(latshift::Error::InvalidArgument("radii must be >= 1".into()).into());
    }
    let table = covariance_series_table(&p, &q, radii);
    let mut csv = String::from("R,partial_sum,error\n");
    for row in &table {
        csv.push_str(&format!("{},{},{}\n", row.radius, row.partial_sum, row.error));
    }
    let json = json!({
        "coefficients": coefficients,
        "exact_covariance": fraction_string(&moments::covariance(&p, &q)),
        "series": table,
    });
    ok(json, csv)
}

pub fn covariogram(a: &Path, b: &Path) -> Result<Output, CliError> {
    let (a, b) = (load(a)?, load(b)?);
    let table = covariogram_table(&a, &b, Execution::default());
    let lattice: BigRational = table.iter().map(|(_, g)| g.clone()).sum();
    let integral = a.area() * b.area();
    let sum = CovariogramSum {
        covariance: &lattice - &integral,
        lattice_sum: lattice,
        integral,
    };
    let mut csv = String::from("n_x,n_y,g\n");
    for (n, g) in &table {
        csv.push_str(&format!("{},{},{}\n", n.x, n.y, fraction_string(g)));
    }
    let mut json = sum.to_json();
    json["translates"] = table
        .iter()
        .map(|(n, g)| json!([n.x, n.y, fraction_string(g)]))
        .collect();
    ok(json, csv)
}
