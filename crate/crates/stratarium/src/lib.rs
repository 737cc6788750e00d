//! Uniformly distributed point sets in the unit hypercube.
//!
//! The central generator is a stratified sampler that accepts an arbitrary
//! point count: the hypercube is bisected recursively at its longest side,
//! splitting each stratum's assigned count as evenly as possible, until every
//! stratum carries one point of volume `1/N`. Strata can then be sampled
//! uniformly, with the Bates distribution (the mean of `b` uniforms, which
//! concentrates points toward stratum centers as `b` grows), or
//! deterministically at the centroids.
//!
//! On top of the generator sit latinization (imposing the Latin hypercube
//! property on stratified samples, approximately or exactly), padded
//! compositions of lower-dimensional designs, baseline samplers (simple
//! random sampling, Latin hypercube sampling, Halton sequences, randomly
//! shifted Korobov lattices), and closed-form quality measures (unanchored
//! L2 discrepancy, covering-radius bounds, separation distance), plus
//! benchmark harnesses for numerical integration and worst-case
//! optimization.

pub mod bench;
pub mod error;
pub mod geometry;
pub mod latinize;
pub mod metrics;
pub mod rng;
pub mod sample;
pub mod stratify;

pub use error::{Error, Result};
pub use geometry::{Hyperbox, PointSet, Stratification, Stratum};
pub use rng::RngStream;
pub use sample::BatesParameter;
pub use stratify::{gss_partition, GssOptions};
