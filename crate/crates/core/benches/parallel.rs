//! Sequential versus rayon execution of the data-parallel kernels.
//!
//! Build with `--no-default-features` to see the sequential fallback under
//! both labels.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use latshift::corpus::{corpus, triangles};
use latshift::covariogram::lattice_sum_with;
use latshift::distribution::exact_pmf_with;
use latshift::geom::IntPolygon;
use latshift::montecarlo::{simulate_with, SimConfig};
use latshift::par::{self, Execution};
use latshift::spectral::covariance_series_with;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_simulate(c: &mut Criterion) {
    let p = IntPolygon::from_coords(&[(0, 0), (5, 1), (6, 4), (2, 7), (-1, 3)]).unwrap();
    let cfg = SimConfig {
        samples: 200_000,
        seed: 1,
        shards: 16,
    };
    let mut g = c.benchmark_group("simulate");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| simulate_with(black_box(&p), cfg, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_triangle_batch(c: &mut Criterion) {
    let ts: Vec<IntPolygon> = triangles(12, 12).into_iter().step_by(20).collect();
    let mut g = c.benchmark_group("exact_pmf_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::map(exec, &ts, |t| exact_pmf_with(t, Execution::Sequential)))
        });
    }
    g.finish();
}

fn bench_single_arrangement(c: &mut Criterion) {
    let p = IntPolygon::from_coords(&[(0, 0), (9, 2), (11, 7), (4, 12), (-3, 6)]).unwrap();
    let mut g = c.benchmark_group("exact_pmf_single");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exact_pmf_with(black_box(&p), exec))
        });
    }
    g.finish();
}

fn bench_covariogram(c: &mut Criterion) {
    let polys = corpus(2, 5);
    let mut g = c.benchmark_group("covariogram");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| lattice_sum_with(&polys[0], &polys[1], exec))
        });
    }
    g.finish();
}

fn bench_series(c: &mut Criterion) {
    let p = IntPolygon::from_coords(&[(0, 0), (3, 1), (4, 3), (1, 4), (-1, 2)]).unwrap();
    let mut g = c.benchmark_group("covariance_series");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| covariance_series_with(&p, &p, 200, exec))
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    bench_simulate,
    bench_triangle_batch,
    bench_single_arrangement,
    bench_covariogram,
    bench_series
);
criterion_main!(benches);
