use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::pmf::Pmf;
use crate::counting::{at_width, HomPoint};
use crate::exact::{ceil_div, floor_div, Int, Width};
use crate::geom::{IntPolygon, IntVector, RationalPoint, RationalPolygon};
use crate::par::{self, Execution};

/// Region of the unit square of shifts on which the count is constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    #[serde(skip)]
    pub polygon: RationalPolygon,
    pub value: i64,
    #[serde(skip)]
    pub area: BigRational,
}

/// Level lines `x ^ u = k` of direction `u` meeting the closed unit square.
pub fn level_range(u: IntVector) -> (i64, i64) {
    let corners = [0, u.y, -u.x, u.y - u.x];
    (
        *corners.iter().min().expect("four corners"),
        *corners.iter().max().expect("four corners"),
    )
}

/// One family of parallel level lines `a x + b y = k`, `lo <= k <= hi`.
#[derive(Debug, Clone)]
struct Family {
    a: i64,
    b: i64,
    // change in the count per unit step of the level
    weight: i64,
    lo: i64,
    hi: i64,
    first_line: usize,
}

#[derive(Debug)]
struct Plan {
    families: Vec<Family>,
    base_value: i64,
    width: Width,
}

// Canonical representative of {u, -u}.
fn upper_half(u: IntVector) -> bool {
    u.y > 0 || (u.y == 0 && u.x > 0)
}

// For a boundary-clean shift x the count is |P ^ Z^2| - 1 + sum l_i (ceil(x ^ u_i) - 1).
// Grouping opposite directions u, -u with lengths lp, lm and c = ceil(x ^ u) gives
// (lp - lm) c - lp per family, so families with lp == lm only shift the constant.
fn plan(p: &IntPolygon) -> Plan {
    let mut lengths: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    for &(u, l) in p.side_profile().entries() {
        if upper_half(u) {
            lengths.entry((u.x, u.y)).or_default().0 += l;
        } else {
            lengths.entry((-u.x, -u.y)).or_default().1 += l;
        }
    }
    let pc = p.pick_counts();
    let mut base_value = pc.interior + pc.boundary - 1;
    let mut families = Vec::new();
    let mut first_line = 4;
    let mut max_coeff = 1i64;
    for (&(ux, uy), &(lp, lm)) in &lengths {
        base_value -= lp;
        if lp == lm {
            continue;
        }
        let (lo, hi) = level_range(IntVector::new(ux, uy));
        families.push(Family {
            a: uy,
            b: -ux,
            weight: lp - lm,
            lo,
            hi,
            first_line,
        });
        first_line += (hi - lo + 1) as usize;
        max_coeff = max_coeff.max(ux.abs()).max(uy.abs());
    }
    // vertices: |D| <= 2U^2, |X|, |Y| <= 4U^2; side tests stay below 12U^3,
    // doubled-area numerators below 32U^4 summed over at most (L + 2)^2 cells
    let u = (max_coeff as f64).log2();
    let lines = ((first_line - 2) as f64).log2();
    let bits = (3.0 * u + 4.0).max(4.0 * u + 5.0 + 2.0 * lines) + 1.0;
    Plan {
        families,
        base_value,
        width: Width::for_bits(bits),
    }
}

#[derive(Debug, Clone)]
struct Line<T> {
    a: T,
    b: T,
    k: T,
}

#[derive(Debug, Clone)]
struct KCell<T> {
    pts: Vec<HomPoint<T>>,
    // labels[j] is the line through pts[j] and pts[j + 1]
    labels: Vec<u32>,
    value: i64,
}

fn build_lines<T: Int>(plan: &Plan) -> Vec<Line<T>> {
    let line = |a: i64, b: i64, k: i64| Line {
        a: T::lift(a),
        b: T::lift(b),
        k: T::lift(k),
    };
    let mut lines = vec![line(0, 1, 0), line(1, 0, 1), line(0, 1, 1), line(1, 0, 0)];
    for f in &plan.families {
        lines.extend((f.lo..=f.hi).map(|k| line(f.a, f.b, k)));
    }
    lines
}

fn unit_square<T: Int>(value: i64) -> KCell<T> {
    let pt = |x: i64, y: i64| HomPoint {
        x: T::lift(x),
        y: T::lift(y),
        d: T::one(),
    };
    KCell {
        pts: vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)],
        labels: vec![0, 1, 2, 3],
        value,
    }
}

fn meet<T: Int>(l: &Line<T>, m: &Line<T>) -> HomPoint<T> {
    let d = l.a.clone() * m.b.clone() - m.a.clone() * l.b.clone();
    let x = l.k.clone() * m.b.clone() - m.k.clone() * l.b.clone();
    let y = l.a.clone() * m.k.clone() - m.a.clone() * l.k.clone();
    if d.is_negative() {
        HomPoint { x: -x, y: -y, d: -d }
    } else {
        HomPoint { x, y, d }
    }
}

fn side<T: Int>(l: &Line<T>, p: &HomPoint<T>) -> i8 {
    let s = l.a.clone() * p.x.clone() + l.b.clone() * p.y.clone() - l.k.clone() * p.d.clone();
    if s.is_positive() {
        1
    } else if s.is_negative() {
        -1
    } else {
        0
    }
}

// Splits a cell by a line that crosses its interior into the parts with
// a x + b y <= k and a x + b y >= k.
fn cut<T: Int>(cell: &KCell<T>, li: u32, lines: &[Line<T>]) -> (KCell<T>, KCell<T>) {
    let line = &lines[li as usize];
    let n = cell.pts.len();
    let sig: Vec<i8> = cell.pts.iter().map(|p| side(line, p)).collect();
    let empty = || KCell {
        pts: Vec::with_capacity(n + 1),
        labels: Vec::with_capacity(n + 1),
        value: cell.value,
    };
    let (mut below, mut above) = (empty(), empty());
    for j in 0..n {
        let (sj, sn) = (sig[j], sig[(j + 1) % n]);
        let lj = cell.labels[j];
        if sj <= 0 {
            below.pts.push(cell.pts[j].clone());
            below.labels.push(if sj < 0 || sn <= 0 { lj } else { li });
        }
        if sj >= 0 {
            above.pts.push(cell.pts[j].clone());
            above.labels.push(if sj > 0 || sn >= 0 { lj } else { li });
        }
        if sj * sn < 0 {
            let q = meet(&lines[lj as usize], line);
            let (lb, la) = if sj < 0 { (li, lj) } else { (lj, li) };
            below.pts.push(q.clone());
            below.labels.push(lb);
            above.pts.push(q);
            above.labels.push(la);
        }
    }
    (below, above)
}

// Cuts a cell along every line of the family crossing its interior and adds
// the family's contribution to the value of each piece.
fn split_family<T: Int>(cell: KCell<T>, f: &Family, lines: &[Line<T>], out: &mut Vec<KCell<T>>) {
    let (a, b) = (T::lift(f.a), T::lift(f.b));
    let mut lo: Option<T> = None;
    let mut hi: Option<T> = None;
    for p in &cell.pts {
        let s = a.clone() * p.x.clone() + b.clone() * p.y.clone();
        let fl = floor_div(&s, &p.d);
        let cl = ceil_div(&s, &p.d);
        lo = Some(match lo {
            Some(v) if v <= fl => v,
            _ => fl,
        });
        hi = Some(match hi {
            Some(v) if v >= cl => v,
            _ => cl,
        });
    }
    // ceil of the level is constant on each piece: k below line k, hi + 1 on top
    let lo = lo.expect("nonempty cell").to_i64().expect("level fits i64") + 1;
    let hi = hi.expect("nonempty cell").to_i64().expect("level fits i64") - 1;
    let mut rest = cell;
    for k in lo..=hi {
        let li = (f.first_line + (k - f.lo) as usize) as u32;
        let (mut below, above) = cut(&rest, li, lines);
        below.value += f.weight * k;
        out.push(below);
        rest = above;
    }
    rest.value += f.weight * (hi + 1);
    out.push(rest);
}

fn decompose<T: Int>(plan: &Plan, exec: Execution) -> Vec<KCell<T>> {
    let lines = build_lines::<T>(plan);
    let mut cells = vec![unit_square::<T>(plan.base_value)];
    for f in &plan.families {
        cells = if exec.is_parallel() && cells.len() >= 64 {
            par::map(exec, &cells, |c| {
                let mut out = Vec::new();
                split_family(c.clone(), f, &lines, &mut out);
                out
            })
            .into_iter()
            .flatten()
            .collect()
        } else {
            let mut out = Vec::with_capacity(cells.len() * 2);
            for c in cells {
                split_family(c, f, &lines, &mut out);
            }
            out
        };
    }
    cells
}

// Doubled-area terms summed per (value, denominator), sorted by key.
fn area_terms<T: Int>(cells: &[KCell<T>]) -> Vec<(i64, T, T)> {
    let mut terms = Vec::with_capacity(cells.len() * 6);
    for c in cells {
        let n = c.pts.len();
        for j in 0..n {
            let (p, q) = (&c.pts[j], &c.pts[if j + 1 == n { 0 } else { j + 1 }]);
            let num = p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone();
            if !num.is_zero() {
                terms.push((c.value, p.d.clone() * q.d.clone(), num));
            }
        }
    }
    merge_terms(terms)
}

fn merge_terms<T: Int>(mut terms: Vec<(i64, T, T)>) -> Vec<(i64, T, T)> {
    terms.sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut out: Vec<(i64, T, T)> = Vec::new();
    for (v, d, n) in terms {
        match out.last_mut() {
            Some(last) if last.0 == v && last.1 == d => last.2 += n,
            _ => out.push((v, d, n)),
        }
    }
    out
}

// Small-denominator fraction sum that falls back to big rationals on overflow.
enum Mass {
    Small(i128, i128),
    Big(BigRational),
}

impl Mass {
    fn add(self, num: BigInt, den: BigInt) -> Mass {
        if let (Mass::Small(n, d), Some(n2), Some(d2)) = (&self, num.to_i128(), den.to_i128()) {
            let g = num_integer::gcd(*d, d2);
            let sum = (d2 / g)
                .checked_mul(*n)
                .zip((d / g).checked_mul(n2))
                .and_then(|(a, b)| a.checked_add(b));
            let lcm = (d / g).checked_mul(d2);
            if let (Some(s), Some(l)) = (sum, lcm) {
                let h = num_integer::gcd(s, l).max(1);
                return Mass::Small(s / h, l / h);
            }
        }
        Mass::Big(self.into_big() + BigRational::new(num, den))
    }

    fn into_big(self) -> BigRational {
        match self {
            Mass::Small(n, d) => BigRational::new(n.into(), d.into()),
            Mass::Big(r) => r,
        }
    }
}

fn pmf_at<T: Int>(plan: &Plan, exec: Execution) -> Pmf {
    let cells = decompose::<T>(plan, exec);
    let chunk = 4096.max(cells.len() / 64);
    let chunks: Vec<&[KCell<T>]> = cells.chunks(chunk).collect();
    let partial = par::map(exec, &chunks, |c| area_terms(c));
    let groups = merge_terms(partial.into_iter().flatten().collect());
    let mut by_value: BTreeMap<i64, Mass> = BTreeMap::new();
    for (value, den, num) in groups {
        let m = by_value.remove(&value).unwrap_or(Mass::Small(0, 1));
        by_value.insert(value, m.add(num.to_bigint(), den.to_bigint() * 2));
    }
    let weights = by_value.into_iter().map(|(v, m)| (v, m.into_big())).collect();
    let pmf = Pmf::from_weights(weights);
    debug_assert_eq!(pmf.total_mass(), BigRational::from_integer(1.into()));
    pmf
}

/// Exact law of the count of `P + x` for `x` uniform on the unit square.
pub fn exact_pmf(p: &IntPolygon) -> Pmf {
    exact_pmf_with(p, Execution::default())
}

pub fn exact_pmf_with(p: &IntPolygon, exec: Execution) -> Pmf {
    let plan = plan(p);
    at_width!(plan.width, T => pmf_at::<T>(&plan, exec))
}

fn to_cells<T: Int>(plan: &Plan) -> Vec<Cell> {
    decompose::<T>(plan, Execution::Sequential)
        .into_iter()
        .map(|c| {
            let vertices = c
                .pts
                .iter()
                .map(|p| {
                    let d = p.d.to_bigint();
                    RationalPoint::new(
                        BigRational::new(p.x.to_bigint(), d.clone()),
                        BigRational::new(p.y.to_bigint(), d),
                    )
                })
                .collect();
            let polygon = RationalPolygon::new(vertices);
            Cell {
                area: polygon.area(),
                polygon,
                value: c.value,
            }
        })
        .collect()
}

/// Regions of constant count tiling the unit square.
///
/// Lines along which the count does not jump are not drawn, so adjacent
/// regions always carry different values.
pub fn exact_cells(p: &IntPolygon) -> Vec<Cell> {
    let plan = plan(p);
    at_width!(plan.width, T => to_cells::<T>(&plan))
}
