//! Stratification builders.
//!
//! [`gss_partition`] recursively bisects a box at its longest side until each
//! stratum carries exactly one point, allowing an arbitrary total point count
//! while keeping every stratum's relative volume equal to its relative count.
//! [`grid_partition`] is the conventional per-dimension binning, and
//! [`mean_split_partition`] builds a partition retroactively around an
//! existing point set.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Hyperbox, PointSet, Stratification, Stratum};
use crate::rng::RngStream;

/// Options for [`gss_partition`].
#[derive(Debug, Clone)]
pub struct GssOptions {
    /// Avoid splits that assign an odd count to both children when the parent
    /// count is even and at least six (six points split into four and two,
    /// never three and three). Keeps final strata closer to cubic.
    pub avoid_odd_splits: bool,
}

impl Default for GssOptions {
    fn default() -> Self {
        Self {
            avoid_odd_splits: true,
        }
    }
}

/// Child counts for splitting a stratum that carries `count > 1` points.
/// Division is as even as possible, except that with `avoid_odd_splits` an
/// even parent of at least six never produces two odd children.
pub(crate) fn split_counts(count: usize, avoid_odd_splits: bool) -> (usize, usize) {
    let mut n_a = count / 2;
    if avoid_odd_splits && count >= 6 && n_a % 2 == 1 && count.is_multiple_of(2) {
        n_a -= 1;
    }
    (n_a, count - n_a)
}

/// Partitions `domain` into `n_points` strata of equal volume, one point
/// each, by recursive binary splitting at the longest side.
///
/// Each split divides a stratum's count as evenly as possible (subject to
/// [`GssOptions::avoid_odd_splits`]), randomly swaps the two child counts,
/// and places the split plane so that child volumes stay proportional to
/// child counts. Finished strata and unfinished ones are kept in separate
/// collections, so the total work is linear in `n_points`.
pub fn gss_partition(
    n_points: usize,
    domain: &Hyperbox,
    options: &GssOptions,
    rng: &mut RngStream,
) -> Result<Stratification> {
    if n_points == 0 {
        return Err(Error::InvalidArgument(
            "cannot stratify for zero points".into(),
        ));
    }
    let mut finished: Vec<Stratum> = Vec::with_capacity(n_points);
    // LIFO work list of strata that still carry more than one point.
    let mut work: Vec<(Hyperbox, usize)> = Vec::new();
    if n_points == 1 {
        finished.push(Stratum::new(domain.clone(), 1)?);
    } else {
        work.push((domain.clone(), n_points));
    }
    while let Some((bounds, count)) = work.pop() {
        let (mut n_a, mut n_b) = split_counts(count, options.avoid_odd_splits);
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut n_a, &mut n_b);
        }
        let dim = bounds.longest_side(rng);
        let pos = bounds.lower()[dim] + bounds.side(dim) * n_a as f64 / count as f64;
        let (child_a, child_b) = bounds.split_at(dim, pos);
        for (child, child_count) in [(child_a, n_a), (child_b, n_b)] {
            if child_count == 1 {
                finished.push(Stratum::new(child, 1)?);
            } else {
                work.push((child, child_count));
            }
        }
    }
    Stratification::new(domain.clone(), finished)
}

/// Conventional grid stratification with `k_per_dim[i]` equal-width bins in
/// dimension `i`; produces the product count of strata, one point each.
pub fn grid_partition(k_per_dim: &[usize], domain: &Hyperbox) -> Result<Stratification> {
    if k_per_dim.is_empty() {
        return Err(Error::InvalidArgument("empty bin-count vector".into()));
    }
    if k_per_dim.len() != domain.dim() {
        return Err(Error::InvalidArgument(format!(
            "{} bin counts for a {}-dimensional domain",
            k_per_dim.len(),
            domain.dim()
        )));
    }
    if k_per_dim.contains(&0) {
        return Err(Error::InvalidArgument("bin count of zero".into()));
    }
    let n = domain.dim();
    let total: usize = k_per_dim.iter().product();
    let mut strata = Vec::with_capacity(total);
    let mut index = vec![0usize; n];
    // Odometer over the grid cells, last dimension fastest. Bin endpoints are
    // computed from the domain bounds so shared faces are bitwise identical.
    loop {
        let mut lower = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        for d in 0..n {
            let k = k_per_dim[d];
            let w = domain.side(d) / k as f64;
            let lo = if index[d] == 0 {
                domain.lower()[d]
            } else {
                domain.lower()[d] + index[d] as f64 * w
            };
            let hi = if index[d] + 1 == k {
                domain.upper()[d]
            } else {
                domain.lower()[d] + (index[d] + 1) as f64 * w
            };
            lower.push(lo);
            upper.push(hi);
        }
        strata.push(Stratum::new(Hyperbox::new(lower, upper)?, 1)?);
        let mut d = n;
        loop {
            if d == 0 {
                return Stratification::new(domain.clone(), strata);
            }
            d -= 1;
            index[d] += 1;
            if index[d] < k_per_dim[d] {
                break;
            }
            index[d] = 0;
        }
    }
}

/// Builds a partition of the point set's domain with exactly one input point
/// per stratum, splitting recursively at the longest side near the coordinate
/// mean of the contained points.
///
/// The preliminary split position is the mean of the contained points'
/// coordinates in the chosen dimension; the actual position is the midpoint
/// between the two points straddling it. Stratum `i` of the result contains
/// point `i` of the input.
pub fn mean_split_partition(points: &PointSet, rng: &mut RngStream) -> Result<Stratification> {
    let n_points = points.num_points();
    let mut out: Vec<Option<Stratum>> = vec![None; n_points];
    let mut work: Vec<(Hyperbox, Vec<usize>)> =
        vec![(points.domain().clone(), (0..n_points).collect())];
    while let Some((bounds, members)) = work.pop() {
        if members.len() == 1 {
            out[members[0]] = Some(Stratum::new(bounds, 1)?);
            continue;
        }
        let dim = splittable_dimension(&bounds, points, &members, rng)?;
        let mean = members
            .iter()
            .map(|&i| points.point(i)[dim])
            .sum::<f64>()
            / members.len() as f64;
        // Nearest member coordinates below (<= mean) and above (> mean); both
        // exist because the coordinates are not all equal.
        let mut below = f64::NEG_INFINITY;
        let mut above = f64::INFINITY;
        for &i in &members {
            let c = points.point(i)[dim];
            if c <= mean {
                below = below.max(c);
            } else {
                above = above.min(c);
            }
        }
        let pos = 0.5 * (below + above);
        let (box_a, box_b) = bounds.split_at(dim, pos);
        let (left, right): (Vec<usize>, Vec<usize>) = members
            .into_iter()
            .partition(|&i| points.point(i)[dim] < pos);
        work.push((box_a, left));
        work.push((box_b, right));
    }
    let strata = out
        .into_iter()
        .map(|s| s.expect("every point receives a stratum"))
        .collect();
    Stratification::new(points.domain().clone(), strata)
}

/// Chooses the longest side (random tie-break) whose member coordinates are
/// not all equal, falling back to shorter sides in order of decreasing
/// length. Errors when the members agree in every coordinate.
fn splittable_dimension(
    bounds: &Hyperbox,
    points: &PointSet,
    members: &[usize],
    rng: &mut RngStream,
) -> Result<usize> {
    let separates = |d: usize| {
        let first = points.point(members[0])[d];
        members.iter().any(|&i| points.point(i)[d] != first)
    };
    let preferred = bounds.longest_side(rng);
    if separates(preferred) {
        return Ok(preferred);
    }
    let mut order: Vec<usize> = (0..bounds.dim()).filter(|&d| d != preferred).collect();
    order.sort_by(|&a, &b| bounds.side(b).total_cmp(&bounds.side(a)));
    for d in order {
        if separates(d) {
            return Ok(d);
        }
    }
    Err(Error::CoincidentPoints)
}

/// Minimum over all strata of the ratio shortest side / longest side.
pub fn aspect_ratio(strat: &Stratification) -> f64 {
    strat
        .strata()
        .iter()
        .map(|s| {
            let mut shortest = f64::INFINITY;
            let mut longest: f64 = 0.0;
            for d in 0..s.bounds.dim() {
                shortest = shortest.min(s.bounds.side(d));
                longest = longest.max(s.bounds.side(d));
            }
            shortest / longest
        })
        .fold(f64::INFINITY, f64::min)
}

#[derive(Serialize, Deserialize)]
struct BoxDoc {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct StratumDoc {
    lower: Vec<f64>,
    upper: Vec<f64>,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct StratificationDoc {
    domain: BoxDoc,
    strata: Vec<StratumDoc>,
}

/// Serializes a stratification as a JSON document with round-trip number
/// precision.
pub fn stratification_to_json(strat: &Stratification) -> String {
    let doc = StratificationDoc {
        domain: BoxDoc {
            lower: strat.domain().lower().to_vec(),
            upper: strat.domain().upper().to_vec(),
        },
        strata: strat
            .strata()
            .iter()
            .map(|s| StratumDoc {
                lower: s.bounds.lower().to_vec(),
                upper: s.bounds.upper().to_vec(),
                count: s.count,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("stratification serializes")
}

pub fn stratification_from_json(text: &str) -> Result<Stratification> {
    let doc: StratificationDoc = serde_json::from_str(text)
        .map_err(|e| Error::InvalidStratification(format!("json parse: {e}")))?;
    let domain = Hyperbox::new(doc.domain.lower, doc.domain.upper)?;
    let strata = doc
        .strata
        .into_iter()
        .map(|s| Stratum::new(Hyperbox::new(s.lower, s.upper)?, s.count))
        .collect::<Result<Vec<_>>>()?;
    Stratification::new(domain, strata)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GEOM_TOL;

    fn sorted_boxes(strat: &Stratification) -> Vec<(Vec<f64>, Vec<f64>)> {
        let mut v: Vec<(Vec<f64>, Vec<f64>)> = strat
            .strata()
            .iter()
            .map(|s| (s.bounds.lower().to_vec(), s.bounds.upper().to_vec()))
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn split_counts_divide_evenly() {
        assert_eq!(split_counts(2, true), (1, 1));
        assert_eq!(split_counts(3, true), (1, 2));
        assert_eq!(split_counts(4, true), (2, 2));
        assert_eq!(split_counts(5, true), (2, 3));
        assert_eq!(split_counts(7, true), (3, 4));
        assert_eq!(split_counts(12, true), (6, 6));
    }

    /// An even count of at least six never yields two odd children: six goes
    /// to four and two, not three and three.
    #[test]
    fn split_counts_avoid_odd_pairs() {
        assert_eq!(split_counts(6, true), (2, 4));
        assert_eq!(split_counts(6, false), (3, 3));
        assert_eq!(split_counts(10, true), (4, 6));
        assert_eq!(split_counts(10, false), (5, 5));
        assert_eq!(split_counts(14, true), (6, 8));
        for count in 6..2000 {
            let (a, b) = split_counts(count, true);
            assert_eq!(a + b, count);
            if count % 2 == 0 {
                assert!(a % 2 == 0 || b % 2 == 0, "count={count} split {a}/{b}");
            }
        }
    }

    #[test]
    fn gss_single_point_returns_domain() {
        let mut rng = RngStream::from_seed(0);
        let domain = Hyperbox::unit(2);
        let strat = gss_partition(1, &domain, &GssOptions::default(), &mut rng).unwrap();
        assert_eq!(strat.len(), 1);
        assert_eq!(strat.strata()[0].bounds, domain);
        assert_eq!(strat.strata()[0].count, 1);
    }

    #[test]
    fn gss_rejects_zero_points() {
        let mut rng = RngStream::from_seed(0);
        assert!(gss_partition(0, &Hyperbox::unit(2), &GssOptions::default(), &mut rng).is_err());
    }

    /// Hand trace for three points in the unit square: when dimension 0 wins
    /// the first tie and no swap happens, the strata are
    /// [0,1/3]x[0,1], [1/3,1]x[0,1/2], [1/3,1]x[1/2,1]. Some seed must
    /// produce that run, and every run has strata of volume 1/3.
    #[test]
    fn gss_three_point_trace() {
        let third = 1.0 / 3.0;
        let expected = {
            let mut v = vec![
                (vec![0.0, 0.0], vec![third, 1.0]),
                (vec![third, 0.0], vec![1.0, 0.5]),
                (vec![third, 0.5], vec![1.0, 1.0]),
            ];
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        let domain = Hyperbox::unit(2);
        let mut found = false;
        for seed in 0..64 {
            let mut rng = RngStream::from_seed(seed);
            let strat = gss_partition(3, &domain, &GssOptions::default(), &mut rng).unwrap();
            assert_eq!(strat.len(), 3);
            for s in strat.strata() {
                assert!((s.bounds.volume() - third).abs() < GEOM_TOL);
            }
            strat.verify_partition().unwrap();
            // The slab stratum fixes the worst side ratio at exactly 1/3.
            assert!((aspect_ratio(&strat) - third).abs() < GEOM_TOL);
            if sorted_boxes(&strat) == expected {
                found = true;
            }
        }
        assert!(found, "no seed produced the dimension-0, no-swap trace");
    }

    /// At point counts that are powers of two per dimension, the recursive
    /// bisection recovers the conventional grid exactly.
    #[test]
    fn gss_recovers_two_by_two_grid() {
        let domain = Hyperbox::unit(2);
        let grid = grid_partition(&[2, 2], &domain).unwrap();
        for seed in 0..20 {
            let mut rng = RngStream::from_seed(seed);
            let strat = gss_partition(4, &domain, &GssOptions::default(), &mut rng).unwrap();
            assert_eq!(sorted_boxes(&strat), sorted_boxes(&grid));
        }
    }

    #[test]
    fn gss_split_work_is_linear() {
        // Each split raises the stratum count by one, so any N-stratum result
        // of a run took exactly N-1 splits; verify via stratum count.
        let mut rng = RngStream::from_seed(123);
        for n in [1usize, 2, 7, 100, 533] {
            let strat =
                gss_partition(n, &Hyperbox::unit(3), &GssOptions::default(), &mut rng).unwrap();
            assert_eq!(strat.len(), n);
            assert!(strat.unit_counts());
        }
    }

    /// Known worst-case aspect ratios for 144 points in the unit square:
    /// 9/16 with odd-split avoidance and 9/25 without.
    #[test]
    fn gss_aspect_ratio_144() {
        let domain = Hyperbox::unit(2);
        for seed in 0..10 {
            let mut rng = RngStream::from_seed(seed);
            let with = gss_partition(
                144,
                &domain,
                &GssOptions {
                    avoid_odd_splits: true,
                },
                &mut rng,
            )
            .unwrap();
            assert!((aspect_ratio(&with) - 9.0 / 16.0).abs() < GEOM_TOL);
            let without = gss_partition(
                144,
                &domain,
                &GssOptions {
                    avoid_odd_splits: false,
                },
                &mut rng,
            )
            .unwrap();
            assert!((aspect_ratio(&without) - 9.0 / 25.0).abs() < GEOM_TOL);
        }
    }

    #[test]
    fn grid_partition_shapes() {
        let strat = grid_partition(&[2, 2], &Hyperbox::unit(2)).unwrap();
        assert_eq!(strat.len(), 4);
        for s in strat.strata() {
            assert!((s.bounds.volume() - 0.25).abs() < GEOM_TOL);
            assert!((s.bounds.side(0) - 0.5).abs() < GEOM_TOL);
        }
        assert!((aspect_ratio(&strat) - 1.0).abs() < GEOM_TOL);

        let line = grid_partition(&[3], &Hyperbox::unit(1)).unwrap();
        let got = sorted_boxes(&line);
        assert_eq!(got.len(), 3);
        assert_eq!(got[0].0[0], 0.0);
        assert!((got[0].1[0] - 1.0 / 3.0).abs() < GEOM_TOL);
        assert!((got[1].0[0] - 1.0 / 3.0).abs() < GEOM_TOL);
        assert!((got[1].1[0] - 2.0 / 3.0).abs() < GEOM_TOL);
        assert_eq!(got[2].1[0], 1.0);

        let fig = grid_partition(&[12, 12], &Hyperbox::unit(2)).unwrap();
        assert_eq!(fig.len(), 144);
        fig.verify_partition().unwrap();
    }

    #[test]
    fn grid_partition_rejects_bad_input() {
        assert!(grid_partition(&[], &Hyperbox::unit(1)).is_err());
        assert!(grid_partition(&[0, 2], &Hyperbox::unit(2)).is_err());
        assert!(grid_partition(&[2], &Hyperbox::unit(2)).is_err());
    }

    #[test]
    fn mean_split_single_point() {
        let points = PointSet::from_rows(vec![vec![0.3, 0.7]], Hyperbox::unit(2)).unwrap();
        let mut rng = RngStream::from_seed(0);
        let strat = mean_split_partition(&points, &mut rng).unwrap();
        assert_eq!(strat.len(), 1);
        assert_eq!(strat.strata()[0].bounds, Hyperbox::unit(2));
    }

    #[test]
    fn mean_split_two_points_one_dim() {
        let points = PointSet::from_rows(vec![vec![0.2], vec![0.8]], Hyperbox::unit(1)).unwrap();
        let mut rng = RngStream::from_seed(0);
        let strat = mean_split_partition(&points, &mut rng).unwrap();
        let boxes = sorted_boxes(&strat);
        assert_eq!(boxes[0], (vec![0.0], vec![0.5]));
        assert_eq!(boxes[1], (vec![0.5], vec![1.0]));
        // Stratum i contains point i.
        assert!(strat.strata()[0].bounds.contains(points.point(0)));
        assert!(strat.strata()[1].bounds.contains(points.point(1)));
    }

    /// Hand trace: mean 0.4 -> neighbors 0.2 and 0.9 -> split 0.55; then the
    /// left box splits at 0.15.
    #[test]
    fn mean_split_three_points_trace() {
        let points =
            PointSet::from_rows(vec![vec![0.1], vec![0.2], vec![0.9]], Hyperbox::unit(1)).unwrap();
        let mut rng = RngStream::from_seed(0);
        let strat = mean_split_partition(&points, &mut rng).unwrap();
        let boxes = sorted_boxes(&strat);
        assert!((boxes[0].1[0] - 0.15).abs() < GEOM_TOL);
        assert!((boxes[1].1[0] - 0.55).abs() < GEOM_TOL);
        assert_eq!(boxes[2].1[0], 1.0);
        for (i, s) in strat.strata().iter().enumerate() {
            assert!(s.bounds.contains(points.point(i)));
        }
    }

    #[test]
    fn mean_split_coincident_points_error() {
        let points = PointSet::from_rows(
            vec![vec![0.5, 0.5], vec![0.5, 0.5]],
            Hyperbox::unit(2),
        )
        .unwrap();
        let mut rng = RngStream::from_seed(0);
        match mean_split_partition(&points, &mut rng) {
            Err(Error::CoincidentPoints) => {}
            other => panic!("expected coincident-point error, got {other:?}"),
        }
    }

    /// Points that collide in the longest dimension but separate in another
    /// still get a valid partition.
    #[test]
    fn mean_split_falls_back_to_separating_dimension() {
        let points = PointSet::from_rows(
            vec![vec![0.5, 0.2], vec![0.5, 0.8]],
            Hyperbox::unit(2),
        )
        .unwrap();
        for seed in 0..10 {
            let mut rng = RngStream::from_seed(seed);
            let strat = mean_split_partition(&points, &mut rng).unwrap();
            assert_eq!(strat.len(), 2);
            for (i, s) in strat.strata().iter().enumerate() {
                assert!(s.bounds.contains(points.point(i)));
            }
        }
    }

    #[test]
    fn mean_split_covers_domain_with_one_point_each() {
        let mut rng = RngStream::from_seed(77);
        let points = crate::sample::sample_srs(40, &Hyperbox::unit(3), &mut rng).unwrap();
        let strat = mean_split_partition(&points, &mut rng).unwrap();
        assert_eq!(strat.len(), 40);
        let total: f64 = strat.strata().iter().map(|s| s.bounds.volume()).sum();
        assert!((total - 1.0).abs() < 1e-9);
        for (i, s) in strat.strata().iter().enumerate() {
            assert!(s.bounds.contains(points.point(i)));
        }
    }

    #[test]
    fn stratification_json_round_trip() {
        let mut rng = RngStream::from_seed(4);
        let strat =
            gss_partition(7, &Hyperbox::unit(3), &GssOptions::default(), &mut rng).unwrap();
        let text = stratification_to_json(&strat);
        let back = stratification_from_json(&text).unwrap();
        assert_eq!(strat, back);
    }
}
