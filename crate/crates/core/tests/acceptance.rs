//! Acceptance gate: eight criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary lines are always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use latshift::corpus::{corpus, curated, random_unimodular, triangles};
use latshift::counting::{
    count_parallelogram_oriented, count_shifted, count_via_ceiling, count_via_sides, sides_clean,
};
use latshift::covariogram::lattice_sum;
use latshift::distribution::{
    centered_pmf, exact_pmf, exact_pmf_with, reduce_mod, support_bound, triangle_pmf, uniform_pmf, Pmf,
};
use latshift::geom::{minkowski_sum, wedge_point, IntPolygon, IntVector, RationalPoint};
use latshift::montecarlo::{compare_to_exact, simulate, SimConfig};
use latshift::moments::{covariance, variance};
use latshift::par::{self, Execution};
use latshift::spectral::{central_moment_series, covariance_series, fourier_coeff, fourier_quadrature};

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 50;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn polygons() -> Vec<IntPolygon> {
    corpus(CORPUS_SIZE, CORPUS_SEED)
}

fn random_shift(rng: &mut ChaCha8Rng) -> RationalPoint {
    let (xd, yd) = (rng.gen_range(2..=10_000), rng.gen_range(2..=10_000));
    RationalPoint::from_ratios(rng.gen_range(0..xd), xd, rng.gen_range(0..yd), yd)
}

fn clean_shift(rng: &mut ChaCha8Rng, polys: &[&IntPolygon]) -> RationalPoint {
    loop {
        let x = random_shift(rng);
        if polys.iter().all(|p| sides_clean(p, &x)) {
            return x;
        }
    }
}

fn triangle_theorem() -> Outcome {
    let ts = triangles(20, 20);
    let bad: usize = par::map(Execution::Parallel, &ts, |t| {
        let exact = exact_pmf_with(t, Execution::Sequential);
        usize::from(triangle_pmf(t).map_or(true, |closed| closed != exact))
    })
    .into_iter()
    .sum();
    outcome(
        bad == 0 && ts.len() >= 200,
        format!("{} triangles up to translation, {bad} mismatches", ts.len()),
    )
}

fn variance_formula(polys: &[IntPolygon]) -> Outcome {
    let bad = polys.iter().filter(|p| exact_pmf(p).variance() != variance(p)).count();
    outcome(bad == 0, format!("{} polygons, {bad} mismatches", polys.len()))
}

fn covariogram_identity(polys: &[IntPolygon]) -> Outcome {
    let mut bad = 0;
    for pair in polys.chunks(2).take(25) {
        if lattice_sum(&pair[0], &pair[1]).covariance != covariance(&pair[0], &pair[1]) {
            bad += 1;
        }
    }
    let below = polys
        .iter()
        .filter(|a| {
            let s = lattice_sum(a, a);
            s.lattice_sum < s.integral
        })
        .count();
    outcome(
        bad == 0 && below == 0,
        format!("25 pairs, {bad} covariance mismatches; {below} self-sums below area^2"),
    )
}

fn fourier_closed_form(polys: &[IntPolygon]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 4);
    let all: Vec<IntPolygon> = polys.iter().cloned().chain(curated().into_iter().map(|c| c.1)).collect();
    let (mut worst, mut worst_sparse, mut failures) = (0.0f64, 0.0f64, 0);
    for p in &all {
        for x in -5..=5 {
            for y in -5..=5 {
                let m = IntVector::new(x, y);
                match fourier_quadrature(p, m, 1e-8) {
                    Ok(q) => worst = worst.max((fourier_coeff(p, m).to_complex() - q).norm()),
                    Err(_) => failures += 1,
                }
            }
        }
        let mut checked = 0;
        while checked < 100 {
            let m = IntVector::new(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            if m.is_zero() || p.sides().iter().any(|&s| s.dot(m) == 0) {
                continue;
            }
            checked += 1;
            match fourier_quadrature(p, m, 1e-8) {
                Ok(q) => worst_sparse = worst_sparse.max(q.norm()),
                Err(_) => failures += 1,
            }
        }
    }
    outcome(
        worst <= 1e-8 && worst_sparse <= 1e-8 && failures == 0,
        format!(
            "{} polygons, max |closed - quadrature| = {worst:.2e}, max sparse |quadrature| = {worst_sparse:.2e}, {failures} tolerance failures",
            all.len()
        ),
    )
}

fn series_convergence() -> Outcome {
    let delta = IntPolygon::unit_triangle();
    let mut pass = true;
    let mut parts = Vec::new();
    for r in [10u32, 50, 100, 200] {
        let err = (covariance_series(&delta, &delta, r) - 0.25).abs();
        pass &= err <= 0.16 / r as f64;
        parts.push(format!("R={r}: {err:.2e}"));
    }
    let fourth = latshift::exact::to_f64(&exact_pmf(&delta).central_moment(4));
    let m4 = central_moment_series(&delta, 4, 50).expect("valid order");
    let m3 = central_moment_series(&delta, 3, 50).expect("valid order");
    let m5 = central_moment_series(&delta, 5, 10).expect("valid order");
    let e4 = (m4.re - fourth).abs();
    pass &= e4 <= 0.01 && m4.im.abs() <= 1e-9 && m3.norm() <= 0.01 && m5.norm() <= 0.01;
    parts.push(format!("k=4: {e4:.2e}, |k=3| = {:.2e}, |k=5| = {:.2e}", m3.norm(), m5.norm()));
    outcome(pass, parts.join(", "))
}

fn symmetric(p: &Pmf) -> bool {
    let c = centered_pmf(p);
    c.iter().all(|(t, w)| c.get(&-t) == Some(w))
}

fn structural(polys: &[IntPolygon]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 6);
    let mut problems: Vec<String> = Vec::new();
    let mut gaps = 0;
    for (i, p) in polys.iter().enumerate() {
        let law = exact_pmf(p);
        if law.support_size() as i64 > support_bound(p) {
            problems.push(format!("#{i} support too large"));
        }
        if !symmetric(&law) {
            problems.push(format!("#{i} not symmetric"));
        }
        // side lengths sharing a factor g confine the count to one class mod g
        let g = p.affine_lengths().into_iter().fold(0, |a, l| a.gcd(&l));
        let (lo, hi) = (law.min_value(), law.max_value());
        if law.support().iter().any(|v| (v - lo) % g != 0) || ((hi - lo) / g + 1) as usize != law.support_size() {
            gaps += 1;
        }
        if exact_pmf(&p.negate()) != law {
            problems.push(format!("#{i} negation"));
        }
        for _ in 0..20 {
            let a = random_unimodular(&mut rng, 5);
            let ap = p.apply_unimodular(&a).expect("determinant one");
            if exact_pmf(&ap) != law {
                problems.push(format!("#{i} unimodular {a:?}"));
            }
        }
        let sym = minkowski_sum(p, &p.negate());
        let area = sym.area();
        if !area.is_integer() || exact_pmf(&sym) != Pmf::point(area.to_integer().try_into().unwrap_or(i64::MIN)) {
            problems.push(format!("#{i} symmetric hull not constant"));
        }
    }
    let coprime: Vec<IntPolygon> = triangles(20, 20)
        .into_iter()
        .filter(|t| {
            let l = t.affine_lengths();
            l[0].gcd(&l[1]).gcd(&l[2]) == 1
        })
        .step_by(50)
        .collect();
    for t in &coprime {
        let law = exact_pmf(t);
        for l in t.affine_lengths() {
            if reduce_mod(&law, l).ok() != uniform_pmf(l).ok() {
                problems.push(format!("mod {l} of {:?}", t.vertices()));
            }
        }
    }
    let pass = problems.is_empty();
    let mut detail = format!(
        "{} polygons x 20 unimodular maps, {} coprime triangles, {} violations; {gaps} supports with gaps beyond the side-length gcd",
        polys.len(),
        coprime.len(),
        problems.len()
    );
    if !pass {
        detail.push_str(&format!(" (first: {})", problems[0]));
    }
    outcome(pass, detail)
}

fn pointwise(polys: &[IntPolygon]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 7);
    let mut bad = [0usize; 3];
    for _ in 0..20 {
        let v = loop {
            let v = IntVector::new(rng.gen_range(-12..=12), rng.gen_range(-12..=12));
            if !v.is_zero() {
                break v;
            }
        };
        let (u, _) = v.primitive().expect("nonzero");
        let mut done = 0;
        while done < 10_000 {
            let x = random_shift(&mut rng);
            if wedge_point(&x, u).is_integer() {
                continue;
            }
            done += 1;
            if count_via_ceiling(v, &x).ok() != count_parallelogram_oriented(v, &x).ok() {
                bad[0] += 1;
            }
        }
    }
    for p in polys {
        for _ in 0..1_000 {
            let x = clean_shift(&mut rng, &[p]);
            let direct = count_shifted(p, &x);
            if !direct.boundary_clean || direct.count != count_via_sides(p, &x) {
                bad[1] += 1;
            }
        }
    }
    for pair in polys.chunks(2).take(10) {
        let (p, q) = (&pair[0], &pair[1]);
        let s = minkowski_sum(p, q);
        let mut seen = BTreeSet::new();
        for _ in 0..1_000 {
            let x = clean_shift(&mut rng, &[p, q, &s]);
            seen.insert(count_shifted(&s, &x).count - count_shifted(p, &x).count - count_shifted(q, &x).count);
        }
        if seen.len() != 1 {
            bad[2] += 1;
        }
    }
    outcome(
        bad == [0, 0, 0],
        format!(
            "ceiling vs parallelogram {} bad of 200000, sides vs direct {} bad of {}, Minkowski pairs non-constant {} of 10",
            bad[0],
            bad[1],
            polys.len() * 1_000,
            bad[2]
        ),
    )
}

fn monte_carlo(polys: &[IntPolygon]) -> Outcome {
    let cfg = SimConfig {
        samples: 1_000_000,
        seed: 42,
        shards: 8,
    };
    let mut problems = Vec::new();
    let mut worst_mean_z = 0.0f64;
    for (i, p) in polys.iter().take(10).enumerate() {
        let law = exact_pmf(p);
        let report = simulate(p, cfg).expect("valid config");
        let again = simulate(p, cfg).expect("valid config");
        let cmp = compare_to_exact(&report, &law);
        worst_mean_z = worst_mean_z.max(cmp.mean_z.abs());
        if report != again {
            problems.push(format!("#{i} rerun differs"));
        }
        if !cmp.pass || cmp.mean_z.abs() > 5.0 {
            problems.push(format!("#{i} {:?}", cmp.diagnostics));
        }
        if report.spot_check_failures > 0 {
            problems.push(format!("#{i} spot checks"));
        }
    }
    let detail = format!(
        "10 polygons at N = 10^6, max |mean z| = {worst_mean_z:.2}, {} problems{}",
        problems.len(),
        problems.first().map(|s| format!(" (first: {s})")).unwrap_or_default()
    );
    outcome(problems.is_empty(), detail)
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    // convention check before anything else
    let delta = IntPolygon::unit_triangle();
    assert_eq!(fourier_coeff(&delta, IntVector::new(1, 1)).value, -BigRational::one());
    assert!(fourier_coeff(&delta, IntVector::new(1, 0)).value.is_positive());

    let polys = polygons();
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("triangle theorem, exact", Box::new(triangle_theorem)),
        ("variance formula, exact", Box::new(|| variance_formula(&polys))),
        ("covariogram identity, exact", Box::new(|| covariogram_identity(&polys))),
        ("Fourier closed form", Box::new(|| fourier_closed_form(&polys))),
        ("series convergence", Box::new(series_convergence)),
        ("structural invariants", Box::new(|| structural(&polys))),
        ("pointwise identities", Box::new(|| pointwise(&polys))),
        ("Monte Carlo", Box::new(|| monte_carlo(&polys))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {} {}: {name}: {} [{secs:.1} s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
