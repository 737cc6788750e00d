//! Latinization of stratified samples and composition of partially
//! stratified designs.
//!
//! The Latin hypercube property is imposed per dimension: the `N` bins of
//! width `1/N` must each receive exactly one point. For a stratification this
//! is a bin-to-stratum assignment problem, solved either heuristically by
//! sorting strata by their center of gravity and assigning bins in that order
//! (violations possible), or exactly as a bipartite perfect matching between
//! bins and strata with intersecting extents.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{Hyperbox, PointSet, Stratification};
use crate::rng::RngStream;

/// Per-dimension bin assignment: `bins[d][j]` is the bin given to stratum `j`
/// in dimension `d`. An exact assignment is a permutation of `0..N` per
/// dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinAssignment {
    pub bins: Vec<Vec<usize>>,
}

/// Disjoint dimension-index groups covering `0..n`, used to assemble a
/// high-dimensional design from independent lower-dimensional ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PssGrouping {
    groups: Vec<Vec<usize>>,
}

impl PssGrouping {
    pub fn new(groups: Vec<Vec<usize>>) -> Result<Self> {
        let total: usize = groups.iter().map(|g| g.len()).sum();
        if total == 0 {
            return Err(Error::InvalidArgument("empty grouping".into()));
        }
        let mut seen = vec![false; total];
        for g in &groups {
            for &d in g {
                if d >= total || seen[d] {
                    return Err(Error::InvalidArgument(format!(
                        "groups do not partition the dimensions (index {d})"
                    )));
                }
                seen[d] = true;
            }
        }
        Ok(Self { groups })
    }

    /// Consecutive blocks of the given sizes: sizes `[2, 2, 1]` give groups
    /// `{0,1}, {2,3}, {4}`.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let mut groups = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for &s in sizes {
            if s == 0 {
                return Err(Error::InvalidArgument("empty group".into()));
            }
            groups.push((next..next + s).collect());
            next += s;
        }
        Self::new(groups)
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn total_dims(&self) -> usize {
        self.groups.iter().map(|g| g.len()).sum()
    }
}

/// Initial matching handed to the exact latinizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WarmStart {
    /// Center-of-gravity sort heuristic (the default; usually near-perfect).
    CogHeuristic,
    /// Strata visited in random order, each taking a random free bin.
    RandomizedGreedy,
}

fn require_unit_domain(strat: &Stratification) -> Result<()> {
    let d = strat.domain();
    let unit = d.lower().iter().all(|&l| l == 0.0) && d.upper().iter().all(|&u| u == 1.0);
    if !unit {
        return Err(Error::InvalidArgument(
            "latinization requires the unit hypercube domain".into(),
        ));
    }
    if !strat.unit_counts() {
        return Err(Error::InvalidArgument(
            "latinization requires one point per stratum".into(),
        ));
    }
    Ok(())
}

/// Positive-length intersection of bin `bin` (width `1/n`) with `[l, u]`.
fn bin_intersection(bin: usize, n: usize, l: f64, u: f64) -> Option<(f64, f64)> {
    let lo = l.max(bin as f64 / n as f64);
    let hi = u.min((bin + 1) as f64 / n as f64);
    (lo < hi).then_some((lo, hi))
}

/// Bins with positive-length intersection with `[l, u]`, in ascending order.
fn intersecting_bins(n: usize, l: f64, u: f64) -> Vec<usize> {
    let first = ((l * n as f64).floor() as usize).min(n - 1);
    let last = ((u * n as f64).floor() as usize).min(n - 1);
    (first..=last)
        .filter(|&b| bin_intersection(b, n, l, u).is_some())
        .collect()
}

/// Heuristic bin assignment: per dimension, strata sorted by the midpoint of
/// their extent (ties by index) receive the bins in order. Returns the
/// assignment and the per-dimension count of strata whose assigned bin does
/// not intersect their extent.
pub fn cog_assignment(strat: &Stratification) -> Result<(BinAssignment, Vec<usize>)> {
    require_unit_domain(strat)?;
    let n = strat.len();
    let dims = strat.domain().dim();
    let mut bins = vec![vec![0usize; n]; dims];
    let mut violations = vec![0usize; dims];
    for d in 0..dims {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let ca = strat.strata()[a].bounds.lower()[d] + strat.strata()[a].bounds.upper()[d];
            let cb = strat.strata()[b].bounds.lower()[d] + strat.strata()[b].bounds.upper()[d];
            ca.total_cmp(&cb).then(a.cmp(&b))
        });
        for (bin, &j) in order.iter().enumerate() {
            bins[d][j] = bin;
            let s = &strat.strata()[j].bounds;
            if bin_intersection(bin, n, s.lower()[d], s.upper()[d]).is_none() {
                violations[d] += 1;
            }
        }
    }
    Ok((BinAssignment { bins }, violations))
}

/// Hopcroft–Karp maximum matching on a bipartite graph, seeded with an
/// initial (partial) matching. `adj[u]` lists the right-side neighbors of
/// left vertex `u`.
fn hopcroft_karp(
    adj: &[Vec<usize>],
    n_right: usize,
    mut pair_left: Vec<Option<usize>>,
) -> (usize, Vec<Option<usize>>) {
    const INF: usize = usize::MAX;
    let n_left = adj.len();
    let mut pair_right: Vec<Option<usize>> = vec![None; n_right];
    for (u, p) in pair_left.iter().enumerate() {
        if let Some(v) = *p {
            debug_assert!(pair_right[v].is_none());
            pair_right[v] = Some(u);
        }
    }

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        dist: &mut [usize],
        pair_left: &mut [Option<usize>],
        pair_right: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            let reachable = match pair_right[v] {
                None => true,
                Some(u2) => {
                    dist[u2] == dist[u] + 1
                        && augment(u2, adj, dist, pair_left, pair_right)
                }
            };
            if reachable {
                pair_left[u] = Some(v);
                pair_right[v] = Some(u);
                return true;
            }
        }
        dist[u] = INF;
        false
    }

    loop {
        // BFS phase: layer left vertices by shortest alternating path from a
        // free vertex.
        let mut dist = vec![INF; n_left];
        let mut queue = std::collections::VecDeque::new();
        for u in 0..n_left {
            if pair_left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut augmenting_exists = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match pair_right[v] {
                    None => augmenting_exists = true,
                    Some(u2) => {
                        if dist[u2] == INF {
                            dist[u2] = dist[u] + 1;
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        if !augmenting_exists {
            break;
        }
        for u in 0..n_left {
            if pair_left[u].is_none() {
                augment(u, adj, &mut dist, &mut pair_left, &mut pair_right);
            }
        }
    }
    let size = pair_left.iter().filter(|p| p.is_some()).count();
    (size, pair_left)
}

/// Exact bin assignment via bipartite perfect matching per dimension,
/// initialized from the chosen warm start. Errors with the dimension and
/// maximum matching size when no perfect matching exists.
pub fn matched_assignment(
    strat: &Stratification,
    warm: WarmStart,
    rng: &mut RngStream,
) -> Result<BinAssignment> {
    require_unit_domain(strat)?;
    let n = strat.len();
    let dims = strat.domain().dim();
    let (cog, cog_violations) = cog_assignment(strat)?;
    let greedy_base = rng.fork();
    let mut bins = Vec::with_capacity(dims);
    for d in 0..dims {
        if warm == WarmStart::CogHeuristic && cog_violations[d] == 0 {
            // The heuristic assignment is already a perfect matching; the
            // matcher would return it unchanged.
            bins.push(cog.bins[d].clone());
            continue;
        }
        let adj: Vec<Vec<usize>> = strat
            .strata()
            .iter()
            .map(|s| intersecting_bins(n, s.bounds.lower()[d], s.bounds.upper()[d]))
            .collect();
        let init = match warm {
            WarmStart::CogHeuristic => {
                // Keep only the heuristic pairs that are actual edges; the
                // heuristic assignment is a bijection, so no conflicts arise.
                (0..n)
                    .map(|j| {
                        let bin = cog.bins[d][j];
                        let s = &strat.strata()[j].bounds;
                        bin_intersection(bin, n, s.lower()[d], s.upper()[d]).map(|_| bin)
                    })
                    .collect()
            }
            WarmStart::RandomizedGreedy => {
                let mut stream = greedy_base.child("greedy-dim", d as u64);
                let mut taken = vec![false; n];
                let mut init: Vec<Option<usize>> = vec![None; n];
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut stream);
                for j in order {
                    let free: Vec<usize> =
                        adj[j].iter().copied().filter(|&b| !taken[b]).collect();
                    if !free.is_empty() {
                        let b = free[stream.gen_range(0..free.len())];
                        taken[b] = true;
                        init[j] = Some(b);
                    }
                }
                init
            }
        };
        let (size, pairs) = hopcroft_karp(&adj, n, init);
        if size < n {
            return Err(Error::LatinizationInfeasible {
                dim: d,
                matched: size,
                required: n,
            });
        }
        bins.push(pairs.into_iter().map(|p| p.expect("perfect matching")).collect());
    }
    Ok(BinAssignment { bins })
}

/// Draws one coordinate per stratum and dimension from the assigned
/// bin-extent intersection. When the intersection is empty (possible only
/// for heuristic assignments) the coordinate is drawn from the stratum's
/// extent alone, keeping the point inside its stratum.
fn draw_from_assignment(
    strat: &Stratification,
    assignment: &BinAssignment,
    rng: &mut RngStream,
) -> Result<PointSet> {
    let n = strat.len();
    let dims = strat.domain().dim();
    let base = rng.fork();
    let mut data = vec![0.0; n * dims];
    for d in 0..dims {
        let mut stream = base.child("draw-dim", d as u64);
        for j in 0..n {
            let s = &strat.strata()[j].bounds;
            let (l, u) = (s.lower()[d], s.upper()[d]);
            let (lo, hi) = bin_intersection(assignment.bins[d][j], n, l, u).unwrap_or((l, u));
            data[j * dims + d] = stream.gen_range(lo..hi);
        }
    }
    PointSet::from_flat(data, dims, strat.domain().clone())
}

/// Approximately latinized stratified sample: heuristic assignment, points
/// drawn in bin-extent intersections, per-dimension violation counts
/// reported alongside the points.
pub fn algss(strat: &Stratification, rng: &mut RngStream) -> Result<(PointSet, Vec<usize>)> {
    let (assignment, violations) = cog_assignment(strat)?;
    let points = draw_from_assignment(strat, &assignment, rng)?;
    Ok((points, violations))
}

/// Exactly latinized stratified sample: per dimension exactly one point per
/// bin, with every point still inside its stratum.
pub fn lgss(strat: &Stratification, rng: &mut RngStream) -> Result<PointSet> {
    lgss_with(strat, WarmStart::CogHeuristic, rng)
}

/// [`lgss`] with an explicit warm-start choice for the matching.
pub fn lgss_with(
    strat: &Stratification,
    warm: WarmStart,
    rng: &mut RngStream,
) -> Result<PointSet> {
    let assignment = matched_assignment(strat, warm, rng)?;
    draw_from_assignment(strat, &assignment, rng)
}

/// Pads independently shuffled group designs into an n-dimensional design:
/// group `g`'s rows are permuted and written to the dimensions listed in
/// `grouping.groups()[g]`.
pub fn pss_compose(
    group_designs: &[PointSet],
    grouping: &PssGrouping,
    rng: &mut RngStream,
) -> Result<PointSet> {
    if group_designs.len() != grouping.groups().len() {
        return Err(Error::InvalidArgument(format!(
            "{} designs for {} groups",
            group_designs.len(),
            grouping.groups().len()
        )));
    }
    let n_points = group_designs
        .first()
        .map(|d| d.num_points())
        .ok_or_else(|| Error::InvalidArgument("no group designs".into()))?;
    let total_dims = grouping.total_dims();
    let mut lower = vec![0.0; total_dims];
    let mut upper = vec![0.0; total_dims];
    for (design, group) in group_designs.iter().zip(grouping.groups()) {
        if design.num_points() != n_points {
            return Err(Error::InvalidArgument(format!(
                "group designs disagree on point count: {} vs {n_points}",
                design.num_points()
            )));
        }
        if design.dim() != group.len() {
            return Err(Error::InvalidArgument(format!(
                "design with {} dimensions assigned to a group of {}",
                design.dim(),
                group.len()
            )));
        }
        for (k, &d) in group.iter().enumerate() {
            lower[d] = design.domain().lower()[k];
            upper[d] = design.domain().upper()[k];
        }
    }
    let mut data = vec![0.0; n_points * total_dims];
    let mut perm: Vec<usize> = (0..n_points).collect();
    for (design, group) in group_designs.iter().zip(grouping.groups()) {
        perm.shuffle(rng);
        for (i, &src) in perm.iter().enumerate() {
            let row = design.point(src);
            for (k, &d) in group.iter().enumerate() {
                data[i * total_dims + d] = row[k];
            }
        }
    }
    PointSet::from_flat(data, total_dims, Hyperbox::new(lower, upper)?)
}

/// Per-dimension Latin-hypercube violation counts: `N` minus the number of
/// distinct occupied bins of width `1/N` (a coordinate of exactly one falls
/// in the last bin). All zeros exactly when the set is Latin.
pub fn lh_violations(points: &PointSet) -> Vec<usize> {
    let n = points.num_points();
    let dims = points.dim();
    let mut violations = Vec::with_capacity(dims);
    for d in 0..dims {
        let mut occupied = vec![false; n];
        for p in points.iter_points() {
            let bin = ((p[d] * n as f64).floor() as usize).min(n - 1);
            occupied[bin] = true;
        }
        violations.push(n - occupied.iter().filter(|&&o| o).count());
    }
    violations
}
