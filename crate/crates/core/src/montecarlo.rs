//! Seeded sampling of uniform shifts and comparison with the exact law.
//!
//! Shifts are dyadic, `(a, b) / 2^64`, drawn from a ChaCha8 stream addressed
//! by sample index. Shards only partition the index range, so the sample set
//! does not depend on how many shards run.

use std::collections::{BTreeMap, BTreeSet};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting::{count_shifted, dyadic_rational, DyadicSideCounter};
use crate::distribution::Pmf;
use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::geom::IntPolygon;
use crate::par::{self, Execution};

/// Every `SPOT_CHECK`-th sample is recounted on the exact column-scan route.
const SPOT_CHECK: u64 = 100;
const MAX_RESAMPLE: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub samples: u64,
    pub seed: u64,
    pub shards: u32,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            samples: 1_000_000,
            seed: 42,
            shards: 8,
        }
    }
}

/// Tallies of the simulated count and their summary statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub config: SimConfig,
    pub tallies: BTreeMap<i64, u64>,
    pub mean: f64,
    pub variance: f64,
    /// Draws that hit a boundary and were replaced.
    pub resampled: u64,
    pub spot_checks: u64,
    pub spot_check_failures: u64,
}

#[derive(Debug, Default)]
struct ShardTally {
    tallies: BTreeMap<i64, u64>,
    resampled: u64,
    spot_checks: u64,
    spot_check_failures: u64,
}

impl ShardTally {
    fn merge(mut self, other: ShardTally) -> ShardTally {
        for (v, c) in other.tallies {
            *self.tallies.entry(v).or_default() += c;
        }
        self.resampled += other.resampled;
        self.spot_checks += other.spot_checks;
        self.spot_check_failures += other.spot_check_failures;
        self
    }
}

fn stream(seed: u64, id: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng.set_word_pos(4 * index as u128);
    rng
}

fn run_shard(p: &IntPolygon, fast: &DyadicSideCounter, seed: u64, range: (u64, u64)) -> ShardTally {
    let mut out = ShardTally::default();
    let mut rng = stream(seed, 0, range.0);
    for i in range.0..range.1 {
        let (mut a, mut b) = (rng.next_u64(), rng.next_u64());
        let mut value = fast.count(a, b);
        let mut attempt = 0;
        while value.is_none() && attempt < MAX_RESAMPLE {
            out.resampled += 1;
            attempt += 1;
            let mut alt = stream(seed, attempt, i);
            a = alt.next_u64();
            b = alt.next_u64();
            value = fast.count(a, b);
        }
        let value = value.expect("a clean shift within the resample budget");
        if i % SPOT_CHECK == 0 {
            out.spot_checks += 1;
            let exact = count_shifted(p, &dyadic_rational(a, b));
            if !exact.boundary_clean || exact.count != value {
                out.spot_check_failures += 1;
            }
        }
        *out.tallies.entry(value).or_default() += 1;
    }
    out
}

pub fn simulate(p: &IntPolygon, cfg: SimConfig) -> Result<EmpiricalReport> {
    simulate_with(p, cfg, Execution::default())
}

/// Tallies `|(P + x) ^ Z^2|` over `cfg.samples` seeded uniform shifts.
pub fn simulate_with(p: &IntPolygon, cfg: SimConfig, exec: Execution) -> Result<EmpiricalReport> {
    if cfg.samples == 0 || cfg.shards == 0 {
        return Err(Error::InvalidArgument("samples and shards must be positive".into()));
    }
    let fast = DyadicSideCounter::new(p);
    let shards = cfg.shards as u64;
    let parts = par::map_range(exec, cfg.shards as usize, |s| {
        let s = s as u64;
        let lo = (cfg.samples as u128 * s as u128 / shards as u128) as u64;
        let hi = (cfg.samples as u128 * (s + 1) as u128 / shards as u128) as u64;
        run_shard(p, &fast, cfg.seed, (lo, hi))
    });
    let total = parts.into_iter().fold(ShardTally::default(), ShardTally::merge);
    let n = cfg.samples as f64;
    let sum: i128 = total.tallies.iter().map(|(&v, &c)| v as i128 * c as i128).sum();
    let mean = sum as f64 / n;
    let variance = total
        .tallies
        .iter()
        .map(|(&v, &c)| c as f64 * (v as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    Ok(EmpiricalReport {
        config: cfg,
        tallies: total.tallies,
        mean,
        variance,
        resampled: total.resampled,
        spot_checks: total.spot_checks,
        spot_check_failures: total.spot_check_failures,
    })
}

impl EmpiricalReport {
    pub fn samples(&self) -> u64 {
        self.tallies.values().sum()
    }

    pub fn frequency(&self, v: i64) -> f64 {
        self.tallies.get(&v).copied().unwrap_or(0) as f64 / self.samples() as f64
    }

    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.config.samples,
            "seed": self.config.seed,
            "shards": self.config.shards,
            "tallies": self.tallies.iter().map(|(v, c)| json!([v, c])).collect::<Vec<_>>(),
            "mean": self.mean,
            "variance": self.variance,
            "resampled": self.resampled,
            "spot_checks": self.spot_checks,
            "spot_check_failures": self.spot_check_failures,
        })
    }

    /// `value,count,frequency` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count,frequency\n");
        for (v, c) in &self.tallies {
            out.push_str(&format!("{v},{c},{}\n", self.frequency(*v)));
        }
        out
    }
}

/// Outcome of checking tallies against an exact pmf.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub pass: bool,
    pub z_scores: Vec<(i64, f64)>,
    pub max_abs_z: f64,
    pub tv_distance: f64,
    pub tv_threshold: f64,
    /// `(empirical mean - exact mean) / (sigma / sqrt(N))`, 0 when both agree exactly.
    pub mean_z: f64,
    pub outside_support: Vec<i64>,
    pub diagnostics: Vec<String>,
}

impl Comparison {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

fn z_score(phat: f64, p: f64, n: f64) -> f64 {
    if p >= 1.0 || p <= 0.0 {
        return if phat == p { 0.0 } else { f64::INFINITY };
    }
    (phat - p).abs() / (p * (1.0 - p) / n).sqrt()
}

/// Passes iff max |z| <= 5, TV <= 5 sqrt(|support| / N), and nothing was
/// observed outside the exact support.
pub fn compare_to_exact(report: &EmpiricalReport, pmf: &Pmf) -> Comparison {
    let n = report.samples() as f64;
    let values: BTreeSet<i64> = pmf.support().into_iter().chain(report.tallies.keys().copied()).collect();
    let mut z_scores = Vec::new();
    let mut outside_support = Vec::new();
    let mut tv = 0.0;
    let mut diagnostics = Vec::new();
    for v in values {
        let p = to_f64(&pmf.prob(v));
        let phat = report.frequency(v);
        tv += (phat - p).abs();
        if p == 0.0 {
            outside_support.push(v);
            diagnostics.push(format!("value {v} observed {} times but has probability 0", report.tallies[&v]));
            continue;
        }
        z_scores.push((v, z_score(phat, p, n)));
    }
    let tv_distance = tv / 2.0;
    let tv_threshold = 5.0 * (pmf.support_size() as f64 / n).sqrt();
    let max_abs_z = z_scores.iter().map(|z| z.1).fold(0.0, f64::max);
    if max_abs_z > 5.0 {
        diagnostics.push(format!("max |z| = {max_abs_z:.3} exceeds 5"));
    }
    if tv_distance > tv_threshold {
        diagnostics.push(format!("TV distance {tv_distance:.3e} exceeds {tv_threshold:.3e}"));
    }
    let (mean, var) = (to_f64(&pmf.mean()), to_f64(&pmf.variance()));
    let mean_z = if var == 0.0 {
        if report.mean == mean {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (report.mean - mean) / (var / n).sqrt()
    };
    Comparison {
        pass: outside_support.is_empty() && max_abs_z <= 5.0 && tv_distance <= tv_threshold,
        z_scores,
        max_abs_z,
        tv_distance,
        tv_threshold,
        mean_z,
        outside_support,
        diagnostics,
    }
}
