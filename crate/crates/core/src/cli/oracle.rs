use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::{int, BigRat};
use crate::formula::{satisfied_cells, Bound, Constraint, CylFormula, SystemFormula};
use crate::realalg::SamplePoint;

/// Outcome of comparing a system with a cylindrical formula on sampled points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub samples: usize,
    /// First point where the two disagree, rendered as rationals.
    pub disagreement: Option<Vec<String>>,
    /// First point lying in two atomic cells at once.
    pub overlap: Option<Vec<String>>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.disagreement.is_none() && self.overlap.is_none()
    }
}

const GRID_RADIUS: i64 = 3;

fn grid_points(n: usize, budget: usize) -> Vec<Vec<BigRat>> {
    if n == 0 || budget == 0 {
        return Vec::new();
    }
    let mut per_axis = 2usize;
    while (per_axis + 1).checked_pow(n as u32).is_some_and(|c| c <= budget) {
        per_axis += 1;
    }
    let axis: Vec<BigRat> = (0..per_axis)
        .map(|i| BigRat::new(BigInt::from(2 * GRID_RADIUS * i as i64), BigInt::from(per_axis as i64 - 1)) - int(GRID_RADIUS))
        .collect();
    let total = per_axis.pow(n as u32).min(budget);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let c = axis[idx % per_axis].clone();
                    idx /= per_axis;
                    c
                })
                .collect()
        })
        .collect()
}

fn random_coord(rng: &mut ChaCha8Rng) -> BigRat {
    if rng.gen_bool(0.25) {
        int(rng.gen_range(-GRID_RADIUS..=GRID_RADIUS))
    } else {
        BigRat::new(BigInt::from(rng.gen_range(-4000i64..=4000)), BigInt::from(1000))
    }
}

// Rational stand-ins for the values of the first-level bounds.
fn level_one_bounds(f: &CylFormula) -> Vec<BigRat> {
    let base = SamplePoint::empty();
    let mut out = Vec::new();
    if let CylFormula::Node { var: 0, branches } = f {
        for (c, _) in branches {
            let bounds: Vec<&Bound> = match c {
                Constraint::Eq(b) => vec![b],
                Constraint::Between { lower, upper, .. } => vec![lower, upper],
            };
            for b in bounds {
                let v = match b {
                    Bound::Number(x) => Some(x.clone()),
                    Bound::Root(r) => r.value_at(&base).ok(),
                    _ => None,
                };
                if let Some(v) = v {
                    out.push(v.approx(64));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Compares `s` and `f` on `n` points: a grid, random points, and points
/// within `2^-20` of every first-level bound. Deterministic per seed.
pub fn oracle_check(s: &SystemFormula, f: &CylFormula, nvars: usize, n: usize, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = grid_points(nvars, n / 3);
    let eps = BigRat::new(BigInt::from(1), BigInt::from(1u64 << 20));
    let bounds = level_one_bounds(f);
    'near: for _ in 0..4 {
        for b in &bounds {
            for x in [b - &eps, b.clone(), b + &eps] {
                if points.len() >= n {
                    break 'near;
                }
                let mut p = vec![x];
                p.extend((1..nvars).map(|_| random_coord(&mut rng)));
                points.push(p);
            }
        }
    }
    while points.len() < n {
        points.push((0..nvars).map(|_| random_coord(&mut rng)).collect());
    }
    let render = |p: &[BigRat]| p.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let mut report = OracleReport { samples: points.len(), disagreement: None, overlap: None };
    for p in &points {
        let hits = satisfied_cells(f, p);
        if hits > 1 && report.overlap.is_none() {
            report.overlap = Some(render(p));
        }
        if (hits > 0) != s.eval(p) && report.disagreement.is_none() {
            report.disagreement = Some(render(p));
        }
        if !report.passed() {
            break;
        }
    }
    report
}
