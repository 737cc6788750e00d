//! Axis-aligned boxes, strata, stratifications, and point sets.
//!
//! All types are immutable values after construction. Boxes store closed
//! intervals; a shared split face belongs to both adjacent boxes.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Absolute tolerance for geometric comparisons on unit-scale domains.
pub const GEOM_TOL: f64 = 1e-12;

/// An axis-aligned box with strictly positive extent in every dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperbox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Hyperbox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidBox("zero dimensions".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidBox(format!(
                "bound lengths differ: {} vs {}",
                lower.len(),
                upper.len()
            )));
        }
        for i in 0..lower.len() {
            if !lower[i].is_finite() || !upper[i].is_finite() {
                return Err(Error::InvalidBox(format!("non-finite bound in dimension {i}")));
            }
            // Degenerate extents are rejected: a zero-width side breaks both
            // sampling and the aspect-ratio guarantees.
            if lower[i] >= upper[i] {
                return Err(Error::InvalidBox(format!(
                    "lower {} >= upper {} in dimension {i}",
                    lower[i], upper[i]
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The unit hypercube `[0,1]^n`.
    pub fn unit(n: usize) -> Self {
        Self::new(vec![0.0; n], vec![1.0; n]).expect("unit cube needs n >= 1")
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn side(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn center(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| 0.5 * (self.lower[i] + self.upper[i]))
            .collect()
    }

    /// Closed-interval containment test.
    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&l, &u))| l <= x && x <= u)
    }

    /// True when `other` lies within this box, allowing `tol` slack per face.
    pub fn encloses(&self, other: &Hyperbox, tol: f64) -> bool {
        other.dim() == self.dim()
            && (0..self.dim())
                .all(|i| other.lower[i] >= self.lower[i] - tol && other.upper[i] <= self.upper[i] + tol)
    }

    /// Product of side lengths.
    pub fn volume(&self) -> f64 {
        (0..self.dim()).map(|i| self.side(i)).product()
    }

    /// Index of a longest side. Sides within [`GEOM_TOL`] of the maximum are
    /// considered tied and one of them is chosen uniformly at random; with a
    /// unique maximum no randomness is consumed.
    pub fn longest_side(&self, rng: &mut RngStream) -> usize {
        let mut max = f64::NEG_INFINITY;
        for i in 0..self.dim() {
            max = max.max(self.side(i));
        }
        let tied: Vec<usize> = (0..self.dim())
            .filter(|&i| self.side(i) >= max - GEOM_TOL)
            .collect();
        if tied.len() == 1 {
            tied[0]
        } else {
            tied[rng.gen_range(0..tied.len())]
        }
    }

    /// Euclidean distance from `point` to the corner of this box furthest
    /// from it: `(sum_i max{x_i - l_i, u_i - x_i}^2)^(1/2)`. The formula is
    /// only valid for interior points, so points outside the box are
    /// rejected.
    pub fn furthest_corner_distance(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, box has {}",
                point.len(),
                self.dim()
            )));
        }
        let mut sq = 0.0;
        for i in 0..self.dim() {
            let x = point[i];
            if x < self.lower[i] || x > self.upper[i] {
                return Err(Error::PointOutsideBox { index: 0, dim: i });
            }
            let d = (x - self.lower[i]).max(self.upper[i] - x);
            sq += d * d;
        }
        Ok(sq.sqrt())
    }

    /// Splits the box at `pos` along dimension `dim`. The split plane belongs
    /// to both children.
    pub(crate) fn split_at(&self, dim: usize, pos: f64) -> (Hyperbox, Hyperbox) {
        debug_assert!(self.lower[dim] < pos && pos < self.upper[dim]);
        let mut upper_a = self.upper.clone();
        upper_a[dim] = pos;
        let mut lower_b = self.lower.clone();
        lower_b[dim] = pos;
        (
            Hyperbox {
                lower: self.lower.clone(),
                upper: upper_a,
            },
            Hyperbox {
                lower: lower_b,
                upper: self.upper.clone(),
            },
        )
    }
}

/// A box together with the number of points assigned to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub bounds: Hyperbox,
    pub count: usize,
}

impl Stratum {
    pub fn new(bounds: Hyperbox, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidStratification(
                "stratum with zero assigned points".into(),
            ));
        }
        Ok(Self { bounds, count })
    }
}

/// An ordered list of strata partitioning a domain box.
///
/// Construction checks the cheap structural invariants (matching dimensions,
/// strata inside the domain). [`Stratification::verify_partition`] checks the
/// volume identities that make the list a proportional partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratification {
    domain: Hyperbox,
    strata: Vec<Stratum>,
}

impl Stratification {
    pub fn new(domain: Hyperbox, strata: Vec<Stratum>) -> Result<Self> {
        if strata.is_empty() {
            return Err(Error::InvalidStratification("no strata".into()));
        }
        for (j, s) in strata.iter().enumerate() {
            if s.bounds.dim() != domain.dim() {
                return Err(Error::InvalidStratification(format!(
                    "stratum {j} has dimension {} but domain has {}",
                    s.bounds.dim(),
                    domain.dim()
                )));
            }
            if !domain.encloses(&s.bounds, GEOM_TOL) {
                return Err(Error::InvalidStratification(format!(
                    "stratum {j} extends outside the domain"
                )));
            }
        }
        Ok(Self { domain, strata })
    }

    pub fn domain(&self) -> &Hyperbox {
        &self.domain
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Total number of assigned points.
    pub fn total_count(&self) -> usize {
        self.strata.iter().map(|s| s.count).sum()
    }

    /// True when every stratum carries exactly one point.
    pub fn unit_counts(&self) -> bool {
        self.strata.iter().all(|s| s.count == 1)
    }

    /// Checks the volume identities of a proportional partition: stratum
    /// volumes sum to the domain volume, and each stratum's relative volume
    /// equals its relative count, both within `1e-12` relative error.
    pub fn verify_partition(&self) -> Result<()> {
        let dv = self.domain.volume();
        let total: f64 = self.strata.iter().map(|s| s.bounds.volume()).sum();
        if ((total - dv) / dv).abs() > GEOM_TOL {
            return Err(Error::InvalidStratification(format!(
                "stratum volumes sum to {total}, domain volume is {dv}"
            )));
        }
        let n = self.total_count() as f64;
        for (j, s) in self.strata.iter().enumerate() {
            let rel = s.bounds.volume() / dv;
            let want = s.count as f64 / n;
            if ((rel - want) / want).abs() > GEOM_TOL {
                return Err(Error::InvalidStratification(format!(
                    "stratum {j} has relative volume {rel}, expected {want}"
                )));
            }
        }
        Ok(())
    }
}

/// N points in n dimensions, row-major, each inside the domain box.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    data: Vec<f64>,
    dim: usize,
    domain: Hyperbox,
}

impl PointSet {
    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn from_flat(data: Vec<f64>, dim: usize, domain: Hyperbox) -> Result<Self> {
        if dim == 0 || dim != domain.dim() {
            return Err(Error::InvalidPointSet(format!(
                "dimension {dim} does not match domain dimension {}",
                domain.dim()
            )));
        }
        if data.is_empty() || !data.len().is_multiple_of(dim) {
            return Err(Error::InvalidPointSet(format!(
                "{} coordinates do not form points of dimension {dim}",
                data.len()
            )));
        }
        for (i, row) in data.chunks_exact(dim).enumerate() {
            if !domain.contains(row) {
                return Err(Error::InvalidPointSet(format!(
                    "point {i} lies outside the domain"
                )));
            }
        }
        Ok(Self { data, dim, domain })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>, domain: Hyperbox) -> Result<Self> {
        let dim = domain.dim();
        let mut data = Vec::with_capacity(rows.len() * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::InvalidPointSet(format!(
                    "row has {} coordinates, expected {dim}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_flat(data, dim, domain)
    }

    pub fn num_points(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &Hyperbox {
        &self.domain
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }
}
