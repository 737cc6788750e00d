//! Point-set quality measures: unanchored L2 discrepancy (closed form and
//! expectation under uniform sampling), covering-radius bounds, and
//! separation distance.
//!
//! The exact covering radius of a point set is expensive in general; this
//! module brackets it instead. The upper bound takes the maximum over strata
//! of the distance from each stratum's point to its furthest corner, which is
//! valid whenever the strata cover the domain and hold one point each
//! (disjointness is not required). The lower bounds are a Monte Carlo probe
//! and a closed-form bound depending only on the point count and dimension.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{PointSet, Stratification};
use crate::rng::RngStream;
use crate::stratify::mean_split_partition;
use rand::Rng;

/// Tolerance below which a negative squared discrepancy is treated as
/// rounding; anything more negative is a numeric failure.
const DISCREPANCY_CLAMP: f64 = 1e-12;

fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn require_unit_cube(points: &PointSet) -> Result<()> {
    let d = points.domain();
    if d.lower().iter().all(|&l| l == 0.0) && d.upper().iter().all(|&u| u == 1.0) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "measure requires points in the unit hypercube".into(),
        ))
    }
}

/// Unanchored L2 discrepancy `T_N` of a point set in the unit hypercube,
/// from the closed form
///
/// ```text
/// T^2 = 1/N^2 sum_i sum_j prod_k (1 - max(x_ik, x_jk)) min(x_ik, x_jk)
///     - 2^(1-n)/N sum_i prod_k x_ik (1 - x_ik) + 12^(-n)
/// ```
///
/// evaluated in `O(N^2 n)`. Row sums are fixed-order compensated, so results
/// are stable regardless of internal parallelism.
pub fn discrepancy_t(points: &PointSet) -> Result<f64> {
    require_unit_cube(points)?;
    let n_points = points.num_points();
    let dim = points.dim();
    let rows: Vec<f64> = (0..n_points)
        .into_par_iter()
        .map(|i| {
            let xi = points.point(i);
            let mut row = 0.0;
            for j in 0..n_points {
                let xj = points.point(j);
                let mut prod = 1.0;
                for k in 0..dim {
                    let (a, b) = (xi[k], xj[k]);
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    prod *= (1.0 - hi) * lo;
                }
                row += prod;
            }
            row
        })
        .collect();
    let pair_term = kahan_sum(rows.into_iter()) / (n_points as f64 * n_points as f64);
    let single_term = kahan_sum(points.iter_points().map(|p| {
        let mut prod = 1.0;
        for &x in p {
            prod *= x * (1.0 - x);
        }
        prod
    })) * 2f64.powi(1 - dim as i32)
        / n_points as f64;
    let t_sq = pair_term - single_term + 12f64.powi(-(dim as i32));
    if t_sq < -DISCREPANCY_CLAMP {
        return Err(Error::Numeric(format!(
            "squared discrepancy {t_sq} below the rounding clamp"
        )));
    }
    Ok(t_sq.max(0.0).sqrt())
}

/// Expected squared unanchored discrepancy of `n_points` uniform random
/// points in `dim` dimensions: `6^(-n) (1 - 2^(-n)) / N`.
pub fn expected_discrepancy_sq(n_points: usize, dim: usize) -> f64 {
    debug_assert!(n_points >= 1 && dim >= 1);
    6f64.powi(-(dim as i32)) * (1.0 - 2f64.powi(-(dim as i32))) / n_points as f64
}

/// Upper bound for the covering radius: the maximum over strata of the
/// distance from point `i` to the furthest corner of stratum `i`. Requires
/// point `i` inside stratum `i`; the strata must cover the domain but need
/// not be disjoint.
pub fn covering_radius_upper(points: &PointSet, strat: &Stratification) -> Result<f64> {
    if strat.len() != points.num_points() || strat.domain().dim() != points.dim() {
        return Err(Error::InvalidArgument(format!(
            "{} points do not match {} strata",
            points.num_points(),
            strat.len()
        )));
    }
    let mut max = 0.0f64;
    for (i, s) in strat.strata().iter().enumerate() {
        let d = s
            .bounds
            .furthest_corner_distance(points.point(i))
            .map_err(|e| match e {
                Error::PointOutsideBox { dim, .. } => Error::PointOutsideBox { index: i, dim },
                other => other,
            })?;
        max = max.max(d);
    }
    Ok(max)
}

/// Monte Carlo lower bound for the covering radius: the maximum over `m`
/// uniform test points of the distance to the nearest sample point.
pub fn covering_radius_mc_lower(
    points: &PointSet,
    m: usize,
    rng: &mut RngStream,
) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "need at least one test point".into(),
        ));
    }
    let dim = points.dim();
    let domain = points.domain();
    let mut tests = Vec::with_capacity(m * dim);
    for _ in 0..m {
        for d in 0..dim {
            tests.push(rng.gen_range(domain.lower()[d]..domain.upper()[d]));
        }
    }
    let best = tests
        .par_chunks_exact(dim)
        .map(|t| {
            let mut nearest = f64::INFINITY;
            for p in points.iter_points() {
                let mut sq = 0.0;
                for d in 0..dim {
                    let diff = t[d] - p[d];
                    sq += diff * diff;
                }
                nearest = nearest.min(sq);
            }
            nearest
        })
        .reduce(|| 0.0, f64::max);
    Ok(best.sqrt())
}

/// Largest integer `r` with `r^k <= n`.
pub(crate) fn integer_root(n: usize, k: u32) -> usize {
    debug_assert!(n >= 1 && k >= 1);
    let pow_le = |r: usize| -> bool {
        let mut acc: u128 = 1;
        for _ in 0..k {
            acc = acc.saturating_mul(r as u128);
            if acc > n as u128 {
                return false;
            }
        }
        true
    };
    let mut r = (n as f64).powf(1.0 / f64::from(k)).round() as usize;
    r = r.max(1);
    while !pow_le(r) {
        r -= 1;
    }
    while pow_le(r + 1) {
        r += 1;
    }
    r
}

/// Closed-form lower bound for the covering radius of any `n_points`-point
/// set in the unit hypercube: `1 / (2 floor(N^(1/n)))`. The integer root is
/// computed exactly, so the bound steps exactly at perfect powers.
pub fn covering_radius_general_lower(n_points: usize, dim: usize) -> f64 {
    let root = integer_root(n_points, dim as u32);
    1.0 / (2.0 * root as f64)
}

/// Minimum pairwise Euclidean distance.
pub fn separation_distance(points: &PointSet) -> Result<f64> {
    let n_points = points.num_points();
    if n_points < 2 {
        return Err(Error::InvalidArgument(
            "separation distance needs at least two points".into(),
        ));
    }
    let dim = points.dim();
    let min_sq = (0..n_points - 1)
        .into_par_iter()
        .map(|i| {
            let xi = points.point(i);
            let mut best = f64::INFINITY;
            for j in i + 1..n_points {
                let xj = points.point(j);
                let mut sq = 0.0;
                for d in 0..dim {
                    let diff = xi[d] - xj[d];
                    sq += diff * diff;
                }
                best = best.min(sq);
            }
            best
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(min_sq.sqrt())
}

/// Upper bound for the covering radius of an arbitrary point set: partitions
/// the domain around the points several times (the partitioning is
/// stochastic) and keeps the best bound found.
pub fn covering_radius_upper_retro(
    points: &PointSet,
    restarts: usize,
    rng: &mut RngStream,
) -> Result<f64> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("need at least one restart".into()));
    }
    let base = rng.fork();
    let mut best = f64::INFINITY;
    for r in 0..restarts {
        let mut stream = base.child("retro", r as u64);
        let strat = mean_split_partition(points, &mut stream)?;
        best = best.min(covering_radius_upper(points, &strat)?);
    }
    Ok(best)
}

/// Covering-radius bracket as reported by the measurement front end.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringRadiusBounds {
    pub upper: f64,
    pub mc_lower: f64,
    pub general_lower: f64,
    pub mc_samples: usize,
}

/// Computes the full bracket. The upper bound uses `strat` when given and
/// otherwise falls back to retroactive partitioning with `restarts` runs.
pub fn covering_radius_bounds(
    points: &PointSet,
    strat: Option<&Stratification>,
    mc_samples: usize,
    restarts: usize,
    rng: &mut RngStream,
) -> Result<CoveringRadiusBounds> {
    let upper = match strat {
        Some(s) => covering_radius_upper(points, s)?,
        None => covering_radius_upper_retro(points, restarts, &mut rng.child("retro", 0))?,
    };
    let mc_lower = covering_radius_mc_lower(points, mc_samples, &mut rng.child("mc", 0))?;
    Ok(CoveringRadiusBounds {
        upper,
        mc_lower,
        general_lower: covering_radius_general_lower(points.num_points(), points.dim()),
        mc_samples,
    })
}
