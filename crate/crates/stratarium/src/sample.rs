//! Point-set generators: one point per stratum (uniform, Bates, or centroid)
//! and the baseline samplers used for comparison (simple random sampling,
//! Latin hypercube sampling, Halton sequences, shifted Korobov lattices).

use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{Hyperbox, PointSet, Stratification};
use crate::latinize::lh_violations;
use crate::metrics::separation_distance;
use crate::rng::RngStream;

/// Number of i.i.d. uniforms averaged per coordinate when sampling inside a
/// stratum. `Infinity` degenerates to the stratum centroid and consumes no
/// randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatesParameter {
    Finite(u32),
    Infinity,
}

impl FromStr for BatesParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" => Ok(Self::Infinity),
            other => {
                let b: u32 = other.parse().map_err(|_| {
                    Error::InvalidArgument(format!("bates parameter must be 'inf' or a positive integer, got '{other}'"))
                })?;
                if b == 0 {
                    return Err(Error::InvalidArgument(
                        "bates parameter must be at least 1".into(),
                    ));
                }
                Ok(Self::Finite(b))
            }
        }
    }
}

impl std::fmt::Display for BatesParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(b) => write!(f, "{b}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// Draws one point per stratum. With finite `b` each coordinate is the mean
/// of `b` uniform draws on the stratum's extent; with `b = Infinity` it is
/// the extent midpoint, deterministically. Output order matches strata order.
pub fn sample_stratified(
    strat: &Stratification,
    b: BatesParameter,
    rng: &mut RngStream,
) -> Result<PointSet> {
    if !strat.unit_counts() {
        return Err(Error::InvalidArgument(
            "stratified sampling requires exactly one point per stratum".into(),
        ));
    }
    let n = strat.domain().dim();
    let mut data = Vec::with_capacity(strat.len() * n);
    for s in strat.strata() {
        for d in 0..n {
            let (l, u) = (s.bounds.lower()[d], s.bounds.upper()[d]);
            let x = match b {
                BatesParameter::Infinity => 0.5 * (l + u),
                BatesParameter::Finite(b) => {
                    let mut acc = 0.0;
                    for _ in 0..b {
                        acc += rng.gen_range(l..u);
                    }
                    acc / b as f64
                }
            };
            data.push(x);
        }
    }
    PointSet::from_flat(data, n, strat.domain().clone())
}

/// `n_points` i.i.d. uniform points in `domain`.
pub fn sample_srs(n_points: usize, domain: &Hyperbox, rng: &mut RngStream) -> Result<PointSet> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    let n = domain.dim();
    let mut data = Vec::with_capacity(n_points * n);
    for _ in 0..n_points {
        for d in 0..n {
            data.push(rng.gen_range(domain.lower()[d]..domain.upper()[d]));
        }
    }
    PointSet::from_flat(data, n, domain.clone())
}

/// Latin hypercube sample in the unit cube: per dimension an independent
/// uniform permutation of the bins, one uniform point inside each bin.
pub fn sample_lhs(n_points: usize, dim: usize, rng: &mut RngStream) -> Result<PointSet> {
    if n_points == 0 || dim == 0 {
        return Err(Error::InvalidArgument(
            "need at least one point and one dimension".into(),
        ));
    }
    let mut data = vec![0.0; n_points * dim];
    let mut perm: Vec<usize> = (0..n_points).collect();
    for d in 0..dim {
        perm.shuffle(rng);
        for (i, &bin) in perm.iter().enumerate() {
            data[i * dim + d] = (bin as f64 + rng.gen::<f64>()) / n_points as f64;
        }
    }
    PointSet::from_flat(data, dim, Hyperbox::unit(dim))
}

const PRIMES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Halton sequence points: coordinate `k` of point `i` is the radical
/// inverse of `start_index + i + 1` in the `k`-th prime base. Index zero of
/// the sequence (the origin) is skipped.
pub fn sample_halton(n_points: usize, dim: usize, start_index: u64) -> Result<PointSet> {
    if n_points == 0 || dim == 0 {
        return Err(Error::InvalidArgument(
            "need at least one point and one dimension".into(),
        ));
    }
    if dim > PRIMES.len() {
        return Err(Error::InvalidArgument(format!(
            "halton supports up to {} dimensions, requested {dim}",
            PRIMES.len()
        )));
    }
    let mut data = Vec::with_capacity(n_points * dim);
    for i in 0..n_points {
        let idx = start_index + i as u64 + 1;
        for &base in &PRIMES[..dim] {
            data.push(radical_inverse(idx, base));
        }
    }
    PointSet::from_flat(data, dim, Hyperbox::unit(dim))
}

/// A rank-1 Korobov lattice: `n_points` points with generating vector
/// `(1, a, a^2, ...)` and a per-dimension shift applied modulo one.
#[derive(Debug, Clone, PartialEq)]
pub struct KorobovSpec {
    n_points: usize,
    multiplier: u64,
    shift: Vec<f64>,
}

impl KorobovSpec {
    pub fn new(n_points: usize, multiplier: u64, shift: Vec<f64>) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::InvalidArgument(
                "a korobov lattice needs at least two points".into(),
            ));
        }
        if multiplier == 0 || multiplier as u128 >= n_points as u128 {
            return Err(Error::InvalidArgument(format!(
                "multiplier {multiplier} outside [1, {}]",
                n_points - 1
            )));
        }
        if shift.is_empty() {
            return Err(Error::InvalidArgument("empty shift vector".into()));
        }
        if shift.iter().any(|&s| !(0.0..1.0).contains(&s)) {
            return Err(Error::InvalidArgument("shift outside [0, 1)".into()));
        }
        Ok(Self {
            n_points,
            multiplier,
            shift,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }
}

/// Evaluates the lattice: point `i` coordinate `k` is
/// `frac(i * a^k / N + shift_k)`. Powers are reduced modulo `N`, so the
/// computation is exact for any lattice size.
pub fn sample_korobov(spec: &KorobovSpec) -> Result<PointSet> {
    let n = spec.dim();
    let big_n = spec.n_points as u128;
    let mut gen_vector = Vec::with_capacity(n);
    let mut g: u128 = 1;
    for _ in 0..n {
        gen_vector.push(g);
        g = g * spec.multiplier as u128 % big_n;
    }
    let mut data = Vec::with_capacity(spec.n_points * n);
    for i in 0..spec.n_points {
        for k in 0..n {
            let lattice = (i as u128 * gen_vector[k] % big_n) as f64 / spec.n_points as f64;
            let x = lattice + spec.shift[k];
            data.push(x - x.floor());
        }
    }
    PointSet::from_flat(data, n, Hyperbox::unit(n))
}

fn korobov_candidates(n_points: usize, trials: usize, rng: &mut RngStream) -> Vec<u64> {
    if trials >= n_points - 1 {
        // Enough trials to cover the whole multiplier range: enumerate it.
        (1..n_points as u64).collect()
    } else {
        (0..trials)
            .map(|_| rng.gen_range(1..n_points as u64))
            .collect()
    }
}

fn best_by_separation(n_points: usize, dim: usize, candidates: &[u64]) -> Result<u64> {
    let mut best = None;
    for &a in candidates {
        let spec = KorobovSpec::new(n_points, a, vec![0.0; dim])?;
        let sep = separation_distance(&sample_korobov(&spec)?)?;
        match best {
            Some((_, s)) if s >= sep => {}
            _ => best = Some((a, sep)),
        }
    }
    best.map(|(a, _)| a)
        .ok_or_else(|| Error::InvalidArgument("no lattice candidates".into()))
}

/// Draws a fresh uniform shift for an already-chosen multiplier. With
/// `require_latin` the shift is redrawn until the shifted lattice keeps
/// exactly Latin projections (the shift preserves them up to wraparound, so
/// redraws are essentially a rounding safeguard).
pub fn shift_korobov(
    n_points: usize,
    multiplier: u64,
    dim: usize,
    require_latin: bool,
    rng: &mut RngStream,
) -> Result<KorobovSpec> {
    for _ in 0..100 {
        let shift: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
        let spec = KorobovSpec::new(n_points, multiplier, shift)?;
        if !require_latin {
            return Ok(spec);
        }
        let shifted = sample_korobov(&spec)?;
        if lh_violations(&shifted).iter().all(|&v| v == 0) {
            return Ok(spec);
        }
    }
    Err(Error::Numeric(
        "shifted lattice failed the latin projection check".into(),
    ))
}

/// Selects the best of `trials` random multipliers by separation distance of
/// the unshifted lattice, then attaches a fresh uniform random shift. With
/// `trials >= n_points - 1` the whole multiplier range is searched instead.
pub fn select_korobov(
    n_points: usize,
    dim: usize,
    trials: usize,
    rng: &mut RngStream,
) -> Result<KorobovSpec> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if n_points < 2 || dim == 0 {
        return Err(Error::InvalidArgument(
            "korobov selection needs at least two points and one dimension".into(),
        ));
    }
    let candidates = korobov_candidates(n_points, trials, rng);
    let a = best_by_separation(n_points, dim, &candidates)?;
    shift_korobov(n_points, a, dim, false, rng)
}

fn lattice_is_latin(n_points: usize, dim: usize, multiplier: u64) -> Result<bool> {
    let spec = KorobovSpec::new(n_points, multiplier, vec![0.0; dim])?;
    let points = sample_korobov(&spec)?;
    Ok(lh_violations(&points).iter().all(|&v| v == 0))
}

/// Like [`select_korobov`], but restricted to multipliers whose unshifted
/// one-dimensional projections are Latin. The shift preserves the equispaced
/// projections up to wraparound; a final check confirms this on the shifted
/// lattice.
pub fn select_korobov_latin(
    n_points: usize,
    dim: usize,
    trials: usize,
    rng: &mut RngStream,
) -> Result<KorobovSpec> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if n_points < 2 || dim == 0 {
        return Err(Error::InvalidArgument(
            "korobov selection needs at least two points and one dimension".into(),
        ));
    }
    let mut candidates = Vec::with_capacity(trials);
    if trials >= n_points - 1 {
        for a in 1..n_points as u64 {
            if lattice_is_latin(n_points, dim, a)? {
                candidates.push(a);
            }
        }
    } else {
        // Rejection sampling over multipliers; a = 1 is always Latin, so the
        // attempt cap is just a safeguard.
        let max_attempts = 200 * trials.max(8);
        let mut attempts = 0;
        while candidates.len() < trials && attempts < max_attempts {
            attempts += 1;
            let a = rng.gen_range(1..n_points as u64);
            if lattice_is_latin(n_points, dim, a)? {
                candidates.push(a);
            }
        }
        if candidates.is_empty() {
            return Err(Error::InvalidArgument(
                "no latin multiplier found".into(),
            ));
        }
    }
    let a = best_by_separation(n_points, dim, &candidates)?;
    shift_korobov(n_points, a, dim, true, rng)
}

/// Writes one point per row, comma-separated, with shortest round-trip
/// decimal formatting. With `header` the first line is `x0,x1,...`.
pub fn write_points_csv<W: Write>(w: &mut W, points: &PointSet, header: bool) -> Result<()> {
    if header {
        let labels: Vec<String> = (0..points.dim()).map(|d| format!("x{d}")).collect();
        writeln!(w, "{}", labels.join(","))?;
    }
    for row in points.iter_points() {
        let mut line = String::new();
        for (d, x) in row.iter().enumerate() {
            if d > 0 {
                line.push(',');
            }
            line.push_str(&format!("{x}"));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Parses a CSV point set in the unit hypercube. A non-numeric first line is
/// treated as a header. Coordinates outside `[0, 1]` are rejected with the
/// offending row.
pub fn read_points_csv<R: BufRead>(reader: R) -> Result<PointSet> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = trimmed
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if lineno == 0 => continue, // header line
            Err(e) => {
                return Err(Error::InvalidPointSet(format!(
                    "row {}: {e}",
                    lineno + 1
                )))
            }
        };
        if let Some(d) = row.iter().position(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::InvalidPointSet(format!(
                "row {}: coordinate {} is {} which lies outside [0, 1]",
                lineno + 1,
                d,
                row[d]
            )));
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::InvalidPointSet(format!(
                    "row {}: {} fields, expected {}",
                    lineno + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidPointSet("no points".into()));
    }
    let dim = rows[0].len();
    PointSet::from_rows(rows, Hyperbox::unit(dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stratify::{grid_partition, gss_partition, GssOptions};

    #[test]
    fn bates_parameter_parses() {
        assert_eq!("inf".parse::<BatesParameter>().unwrap(), BatesParameter::Infinity);
        assert_eq!("3".parse::<BatesParameter>().unwrap(), BatesParameter::Finite(3));
        assert!("0".parse::<BatesParameter>().is_err());
        assert!("-1".parse::<BatesParameter>().is_err());
    }

    #[test]
    fn centroid_sampling_gives_sukharev_grid() {
        let strat = grid_partition(&[2, 2], &Hyperbox::unit(2)).unwrap();
        let mut rng = RngStream::from_seed(0);
        let points = sample_stratified(&strat, BatesParameter::Infinity, &mut rng).unwrap();
        let expected = [[0.25, 0.25], [0.25, 0.75], [0.75, 0.25], [0.75, 0.75]];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(points.point(i), want.as_slice());
        }
    }

    #[test]
    fn centroid_sampling_consumes_no_randomness() {
        let strat = grid_partition(&[3, 3], &Hyperbox::unit(2)).unwrap();
        let mut used = RngStream::from_seed(9);
        let mut fresh = RngStream::from_seed(9);
        let _ = sample_stratified(&strat, BatesParameter::Infinity, &mut used).unwrap();
        use rand::RngCore;
        assert_eq!(used.next_u64(), fresh.next_u64());
    }

    #[test]
    fn stratified_points_stay_in_their_strata() {
        let mut rng = RngStream::from_seed(21);
        let strat =
            gss_partition(37, &Hyperbox::unit(4), &GssOptions::default(), &mut rng).unwrap();
        for b in [
            BatesParameter::Finite(1),
            BatesParameter::Finite(4),
            BatesParameter::Infinity,
        ] {
            let points = sample_stratified(&strat, b, &mut rng).unwrap();
            for (i, s) in strat.strata().iter().enumerate() {
                assert!(s.bounds.contains(points.point(i)));
            }
        }
    }

    #[test]
    fn stratified_rejects_multi_count_strata() {
        use crate::geometry::{Stratification, Stratum};
        let strat = Stratification::new(
            Hyperbox::unit(1),
            vec![Stratum::new(Hyperbox::unit(1), 2).unwrap()],
        )
        .unwrap();
        let mut rng = RngStream::from_seed(0);
        assert!(sample_stratified(&strat, BatesParameter::Finite(1), &mut rng).is_err());
    }

    /// Statistical oracle: with b = 1 the per-coordinate mean over many
    /// replications approaches the stratum centroid.
    #[test]
    fn uniform_sampling_centers_on_centroid() {
        let mut rng = RngStream::from_seed(3);
        let strat =
            gss_partition(3, &Hyperbox::unit(2), &GssOptions::default(), &mut rng).unwrap();
        let reps = 100_000;
        let n = 2;
        let mut sums = vec![0.0; strat.len() * n];
        for r in 0..reps {
            let mut stream = rng.child("rep", r);
            let points = sample_stratified(&strat, BatesParameter::Finite(1), &mut stream).unwrap();
            for i in 0..strat.len() {
                for d in 0..n {
                    sums[i * n + d] += points.point(i)[d];
                }
            }
        }
        for (i, s) in strat.strata().iter().enumerate() {
            for d in 0..n {
                let mean = sums[i * n + d] / reps as f64;
                let center = 0.5 * (s.bounds.lower()[d] + s.bounds.upper()[d]);
                let sigma = s.bounds.side(d) / (12.0 * reps as f64).sqrt();
                assert!(
                    (mean - center).abs() < 3.0 * sigma,
                    "stratum {i} dim {d}: mean {mean} center {center}"
                );
            }
        }
    }

    /// The per-coordinate variance of the Bates draw is (u-l)^2 / (12 b).
    #[test]
    fn bates_variance_scales_inversely_with_b() {
        use crate::geometry::{Stratification, Stratum};
        let bounds = Hyperbox::new(vec![0.2], vec![0.7]).unwrap();
        let strat = Stratification::new(
            bounds.clone(),
            vec![Stratum::new(bounds.clone(), 1).unwrap()],
        )
        .unwrap();
        let side = bounds.side(0);
        for b in [1u32, 2, 8] {
            let mut rng = RngStream::from_seed(100 + u64::from(b));
            let reps = 100_000;
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..reps {
                let p = sample_stratified(&strat, BatesParameter::Finite(b), &mut rng).unwrap();
                let x = p.point(0)[0];
                sum += x;
                sum_sq += x * x;
            }
            let mean = sum / reps as f64;
            let var = sum_sq / reps as f64 - mean * mean;
            let want = side * side / (12.0 * f64::from(b));
            assert!(
                (var - want).abs() / want < 0.05,
                "b={b}: var {var} want {want}"
            );
        }
    }

    #[test]
    fn srs_basics() {
        let mut rng = RngStream::from_seed(17);
        let one = sample_srs(1, &Hyperbox::unit(1), &mut rng).unwrap();
        assert!(one.point(0)[0] >= 0.0 && one.point(0)[0] < 1.0);

        let many = sample_srs(100_000, &Hyperbox::unit(2), &mut rng).unwrap();
        for d in 0..2 {
            let mean: f64 =
                many.iter_points().map(|p| p[d]).sum::<f64>() / many.num_points() as f64;
            let bound = 3.0 * (1.0 / 12f64.sqrt()) / (many.num_points() as f64).sqrt();
            assert!((mean - 0.5).abs() < bound, "dim {d}: mean {mean}");
        }
    }

    #[test]
    fn lhs_has_one_point_per_bin() {
        for (n, dim, seed) in [(1usize, 1usize, 0u64), (196, 2, 5), (53, 4, 9)] {
            let mut rng = RngStream::from_seed(seed);
            let points = sample_lhs(n, dim, &mut rng).unwrap();
            for d in 0..dim {
                let mut bins: Vec<usize> = points
                    .iter_points()
                    .map(|p| ((p[d] * n as f64) as usize).min(n - 1))
                    .collect();
                bins.sort_unstable();
                let want: Vec<usize> = (0..n).collect();
                assert_eq!(bins, want, "dimension {d} is not latin");
            }
        }
    }

    #[test]
    fn halton_reference_values() {
        let points = sample_halton(3, 1, 0).unwrap();
        assert_eq!(points.point(0)[0], 0.5);
        assert_eq!(points.point(1)[0], 0.25);
        assert_eq!(points.point(2)[0], 0.75);

        let pair = sample_halton(1, 2, 0).unwrap();
        assert_eq!(pair.point(0)[0], 0.5);
        assert!((pair.point(0)[1] - 1.0 / 3.0).abs() < 1e-15);

        assert_eq!(
            sample_halton(10, 3, 4).unwrap(),
            sample_halton(10, 3, 4).unwrap()
        );
        assert!(sample_halton(4, 21, 0).is_err());
    }

    #[test]
    fn korobov_identity_multiplier_is_diagonal() {
        let spec = KorobovSpec::new(4, 1, vec![0.0, 0.0]).unwrap();
        let points = sample_korobov(&spec).unwrap();
        for i in 0..4 {
            let want = i as f64 / 4.0;
            assert_eq!(points.point(i), &[want, want]);
        }
    }

    #[test]
    fn korobov_shift_recovered_at_point_zero() {
        let shift = vec![0.37, 0.81, 0.05];
        let spec = KorobovSpec::new(7, 3, shift.clone()).unwrap();
        let points = sample_korobov(&spec).unwrap();
        for d in 0..3 {
            assert!((points.point(0)[d] - shift[d]).abs() < 1e-15);
        }
    }

    /// Unshifted lattices with multiplier coprime to N have exactly Latin
    /// projections.
    #[test]
    fn korobov_coprime_projections_are_latin() {
        for (n_points, a) in [(8usize, 3u64), (9, 2), (12, 5)] {
            let spec = KorobovSpec::new(n_points, a, vec![0.0, 0.0, 0.0]).unwrap();
            let points = sample_korobov(&spec).unwrap();
            for d in 0..3 {
                let mut bins: Vec<usize> = points
                    .iter_points()
                    .map(|p| ((p[d] * n_points as f64) as usize).min(n_points - 1))
                    .collect();
                bins.sort_unstable();
                let want: Vec<usize> = (0..n_points).collect();
                assert_eq!(bins, want);
            }
        }
    }

    /// Exhaustive four-point selection: the winner must attain the maximum
    /// separation distance over all multipliers, computed independently.
    #[test]
    fn select_korobov_exhaustive_matches_brute_force() {
        let mut best_sep: f64 = 0.0;
        for a in 1..4u64 {
            let spec = KorobovSpec::new(4, a, vec![0.0, 0.0]).unwrap();
            let pts = sample_korobov(&spec).unwrap();
            let mut min_d = f64::INFINITY;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let d: f64 = pts
                        .point(i)
                        .iter()
                        .zip(pts.point(j))
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    min_d = min_d.min(d);
                }
            }
            best_sep = best_sep.max(min_d);
        }
        let mut rng = RngStream::from_seed(2);
        let spec = select_korobov(4, 2, 3, &mut rng).unwrap();
        let unshifted = KorobovSpec::new(4, spec.multiplier(), vec![0.0, 0.0]).unwrap();
        let sep = separation_distance(&sample_korobov(&unshifted).unwrap()).unwrap();
        assert!((sep - best_sep).abs() < 1e-12, "sep {sep} best {best_sep}");
    }

    #[test]
    fn select_korobov_single_trial_returns_a_candidate() {
        let mut rng = RngStream::from_seed(5);
        let spec = select_korobov(10, 2, 1, &mut rng).unwrap();
        assert!((1..10).contains(&spec.multiplier()));
    }

    #[test]
    fn latin_korobov_selection_is_latin_after_shift() {
        let mut rng = RngStream::from_seed(8);
        for n_points in [9usize, 12, 25] {
            let spec = select_korobov_latin(n_points, 2, 5, &mut rng).unwrap();
            let points = sample_korobov(&spec).unwrap();
            assert!(lh_violations(&points).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn csv_round_trip_preserves_bits() {
        let mut rng = RngStream::from_seed(33);
        let points = sample_srs(50, &Hyperbox::unit(3), &mut rng).unwrap();
        let mut buf = Vec::new();
        write_points_csv(&mut buf, &points, false).unwrap();
        let back = read_points_csv(&buf[..]).unwrap();
        assert_eq!(points, back);

        let mut buf = Vec::new();
        write_points_csv(&mut buf, &points, true).unwrap();
        assert!(buf.starts_with(b"x0,x1,x2\n"));
        let back = read_points_csv(&buf[..]).unwrap();
        assert_eq!(points, back);
    }

    #[test]
    fn csv_rejects_out_of_cube() {
        let text = "0.5,0.5\n0.2,1.5\n";
        match read_points_csv(text.as_bytes()) {
            Err(Error::InvalidPointSet(msg)) => assert!(msg.contains("row 2"), "{msg}"),
            other => panic!("expected point-set error, got {other:?}"),
        }
    }
}
