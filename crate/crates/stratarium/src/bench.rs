//! Test functions and experiment harnesses: mean estimation on integration
//! problems, worst-case optimization over sampled designs, and the
//! odd-split-avoidance variant comparison by covering radius.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Hyperbox, PointSet, Stratification};
use crate::latinize::{algss, lgss_with, pss_compose, PssGrouping, WarmStart};
use crate::metrics::{covering_radius_upper, integer_root};
use crate::rng::RngStream;
use crate::sample::{
    sample_halton, sample_korobov, sample_lhs, sample_srs, sample_stratified, select_korobov,
    select_korobov_latin, shift_korobov, BatesParameter,
};
use crate::stratify::{grid_partition, gss_partition, GssOptions};

pub fn eval_sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn eval_rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            100.0 * (b - a * a) * (b - a * a) + (1.0 - a) * (1.0 - a)
        })
        .sum()
}

pub fn eval_double_sum(x: &[f64]) -> f64 {
    let mut prefix = 0.0;
    let mut total = 0.0;
    for &v in x {
        prefix += v;
        total += prefix * prefix;
    }
    total
}

/// A random multimodal instance with 2^n optima: integer coefficient
/// matrices and a target angle vector that is the global optimum (value
/// zero) by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FletcherPowellInstance {
    dim: usize,
    a: Vec<i32>,
    b: Vec<i32>,
    alpha: Vec<f64>,
    targets: Vec<f64>,
}

impl FletcherPowellInstance {
    /// Coefficients drawn uniformly from the integers in [-100, 100], the
    /// optimum angle uniformly from [-pi, pi] per coordinate.
    pub fn generate(dim: usize, rng: &mut RngStream) -> Self {
        let a: Vec<i32> = (0..dim * dim).map(|_| rng.gen_range(-100..=100)).collect();
        let b: Vec<i32> = (0..dim * dim).map(|_| rng.gen_range(-100..=100)).collect();
        let alpha: Vec<f64> = (0..dim).map(|_| rng.gen_range(-PI..PI)).collect();
        let mut instance = Self {
            dim,
            a,
            b,
            alpha,
            targets: Vec::new(),
        };
        instance.targets = instance.row_sums(&instance.alpha);
        instance
    }

    fn row_sums(&self, x: &[f64]) -> Vec<f64> {
        let sines: Vec<f64> = x.iter().map(|&v| v.sin()).collect();
        let cosines: Vec<f64> = x.iter().map(|&v| v.cos()).collect();
        (0..self.dim)
            .map(|i| {
                let mut acc = 0.0;
                for j in 0..self.dim {
                    acc += f64::from(self.a[i * self.dim + j]) * sines[j]
                        + f64::from(self.b[i * self.dim + j]) * cosines[j];
                }
                acc
            })
            .collect()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        self.row_sums(x)
            .iter()
            .zip(&self.targets)
            .map(|(b, t)| (t - b) * (t - b))
            .sum()
    }

    pub fn optimum(&self) -> &[f64] {
        &self.alpha
    }
}

/// Shared evaluation closure of a test objective.
pub type EvalFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A named objective with a known optimum, evaluated on its own domain.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    dim: usize,
    domain: Hyperbox,
    optimum: Option<Vec<f64>>,
    optimum_value: f64,
    eval: EvalFn,
}

impl TestFunction {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        domain: Hyperbox,
        optimum: Option<Vec<f64>>,
        optimum_value: f64,
        eval: EvalFn,
    ) -> Result<Self> {
        let f = Self {
            name: name.into(),
            dim,
            domain,
            optimum,
            optimum_value,
            eval,
        };
        if let Some(opt) = &f.optimum {
            let at_opt = (f.eval)(opt);
            if (at_opt - f.optimum_value).abs() > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "function {} evaluates to {at_opt} at its stated optimum, expected {}",
                    f.name, f.optimum_value
                )));
            }
        }
        Ok(f)
    }

    pub fn sphere(dim: usize) -> Self {
        Self::new(
            "sphere",
            dim,
            Hyperbox::unit(dim),
            Some(vec![0.0; dim]),
            0.0,
            Arc::new(|x: &[f64]| eval_sphere(x)),
        )
        .expect("sphere optimum")
    }

    pub fn rosenbrock(dim: usize) -> Self {
        Self::new(
            "rosenbrock",
            dim,
            Hyperbox::unit(dim),
            Some(vec![1.0; dim]),
            0.0,
            Arc::new(|x: &[f64]| eval_rosenbrock(x)),
        )
        .expect("rosenbrock optimum")
    }

    pub fn double_sum(dim: usize) -> Self {
        Self::new(
            "doublesum",
            dim,
            Hyperbox::unit(dim),
            Some(vec![0.0; dim]),
            0.0,
            Arc::new(|x: &[f64]| eval_double_sum(x)),
        )
        .expect("double-sum optimum")
    }

    /// Constant function, useful as a zero-variance control.
    pub fn constant(dim: usize, value: f64) -> Self {
        Self::new(
            "constant",
            dim,
            Hyperbox::unit(dim),
            Some(vec![0.5; dim]),
            value,
            Arc::new(move |_: &[f64]| value),
        )
        .expect("constant optimum")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &Hyperbox {
        &self.domain
    }

    pub fn optimum(&self) -> Option<&[f64]> {
        self.optimum.as_deref()
    }

    pub fn optimum_value(&self) -> f64 {
        self.optimum_value
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        (self.eval)(x)
    }
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Families of optimization objectives instantiated per replication with a
/// random global optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionFamily {
    Sphere,
    Rosenbrock,
    DoubleSum,
    FletcherPowell,
}

impl FunctionFamily {
    pub fn parse(token: &str) -> Result<Self> {
        match token {
            "sphere" => Ok(Self::Sphere),
            "rosenbrock" => Ok(Self::Rosenbrock),
            "doublesum" => Ok(Self::DoubleSum),
            "fp" => Ok(Self::FletcherPowell),
            other => Err(Error::InvalidArgument(format!(
                "unknown function '{other}' (expected sphere, rosenbrock, doublesum, or fp)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Sphere => "sphere",
            Self::Rosenbrock => "rosenbrock",
            Self::DoubleSum => "doublesum",
            Self::FletcherPowell => "fp",
        }
    }

    /// Draws a random instance on `[-pi, pi]^dim` whose global optimum is
    /// uniformly distributed and has value zero. The fixed-form functions are
    /// shifted by drawing the optimum location directly; the multimodal
    /// generator draws a whole instance.
    pub fn instantiate(self, dim: usize, rng: &mut RngStream) -> Result<TestFunction> {
        let domain = Hyperbox::new(vec![-PI; dim], vec![PI; dim])?;
        match self {
            Self::FletcherPowell => {
                let instance = FletcherPowellInstance::generate(dim, rng);
                let optimum = instance.optimum().to_vec();
                TestFunction::new(
                    "fp",
                    dim,
                    domain,
                    Some(optimum),
                    0.0,
                    Arc::new(move |x: &[f64]| instance.eval(x)),
                )
            }
            _ => {
                let base: fn(&[f64]) -> f64 = match self {
                    Self::Sphere => eval_sphere,
                    Self::Rosenbrock => eval_rosenbrock,
                    Self::DoubleSum => eval_double_sum,
                    Self::FletcherPowell => unreachable!(),
                };
                let unshifted_opt = match self {
                    Self::Rosenbrock => vec![1.0; dim],
                    _ => vec![0.0; dim],
                };
                let optimum: Vec<f64> = (0..dim).map(|_| rng.gen_range(-PI..PI)).collect();
                let delta: Vec<f64> = optimum
                    .iter()
                    .zip(&unshifted_opt)
                    .map(|(o, u)| o - u)
                    .collect();
                TestFunction::new(
                    self.name(),
                    dim,
                    domain,
                    Some(optimum),
                    0.0,
                    Arc::new(move |x: &[f64]| {
                        let shifted: Vec<f64> =
                            x.iter().zip(&delta).map(|(v, d)| v - d).collect();
                        base(&shifted)
                    }),
                )
            }
        }
    }
}

/// Standard normal CDF, relatively accurate in the left tail.
pub fn normal_cdf(z: f64) -> f64 {
    if z <= 0.0 {
        0.5 * erfc_pos(-z / std::f64::consts::SQRT_2)
    } else {
        1.0 - 0.5 * erfc_pos(z / std::f64::consts::SQRT_2)
    }
}

fn erfc_pos(y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    if y <= 2.0 {
        1.0 - erf_series(y)
    } else {
        erfc_continued_fraction(y)
    }
}

/// erf via the all-positive-term series
/// `erf(y) = 2/sqrt(pi) y e^(-y^2) sum_k (2y^2)^k / (1*3*...*(2k+1))`,
/// free of cancellation for any argument.
fn erf_series(y: f64) -> f64 {
    let two_y_sq = 2.0 * y * y;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    while term > sum * 1e-18 && k < 400.0 {
        k += 1.0;
        term *= two_y_sq / (2.0 * k + 1.0);
        sum += term;
    }
    2.0 / PI.sqrt() * y * (-y * y).exp() * sum
}

/// erfc via the classic continued fraction
/// `sqrt(pi) e^(y^2) erfc(y) = 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))`,
/// evaluated by modified Lentz recurrence. Accurate for y >= 2.
fn erfc_continued_fraction(y: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = y;
    let mut c = y;
    let mut d = 0.0;
    for j in 1..200 {
        let a = j as f64 / 2.0;
        d = y + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = y + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-y * y).exp() / PI.sqrt() / f
}

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Rational approximation for the standard normal quantile (absolute error
/// below 1.2e-9 on its own), valid for q in (0, 0.5].
fn quantile_estimate(q: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383_577_518_672_69e2,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    if q < P_LOW {
        let r = (-2.0 * q.ln()).sqrt();
        (((((C[0] * r + C[1]) * r + C[2]) * r + C[3]) * r + C[4]) * r + C[5])
            / ((((D[0] * r + D[1]) * r + D[2]) * r + D[3]) * r + 1.0)
    } else {
        let r = q - 0.5;
        let s = r * r;
        (((((A[0] * s + A[1]) * s + A[2]) * s + A[3]) * s + A[4]) * s + A[5]) * r
            / (((((B[0] * s + B[1]) * s + B[2]) * s + B[3]) * s + B[4]) * s + 1.0)
    }
}

/// Inverse normal CDF: `Phi^{-1}(p) * sd + mean`, computed by a standard
/// rational approximation refined with one Newton step on the normal CDF.
pub fn inverse_normal_cdf(p: f64, mean: f64, sd: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "probability {p} outside the open interval (0, 1)"
        )));
    }
    if !sd.is_finite() || sd <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "standard deviation {sd} must be positive"
        )));
    }
    // Work on the left half; for p >= 0.5 the reflection 1 - p is exact.
    let (q, sign) = if p <= 0.5 { (p, 1.0) } else { (1.0 - p, -1.0) };
    let mut z = quantile_estimate(q);
    let density = normal_pdf(z);
    if density > 1e-300 {
        z -= (normal_cdf(z) - q) / density;
    }
    Ok(mean + sd * sign * z)
}

/// Normal marginal transform applied per coordinate by the integration
/// harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalTransform {
    pub mean: f64,
    pub sd: f64,
}

/// A sampling design that can be asked for point sets of a given size and
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum DesignSpec {
    Srs,
    Lhs,
    Halton { start_index: u64 },
    Gss { b: BatesParameter, avoid_odd: bool },
    Algss { avoid_odd: bool },
    Lgss { avoid_odd: bool, warm: WarmStart },
    Sukharev,
    Grid { b: BatesParameter },
    Korobov { trials: usize },
    LatinKorobov { trials: usize },
    Pss { group_sizes: Vec<usize>, kind: PssKind },
}

/// How the lower-dimensional groups of a padded design are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PssKind {
    /// Conventional grid strata, uniform draws.
    Plain,
    /// Conventional grid strata, exactly latinized.
    Latin,
    /// Arbitrary-count strata, heuristically latinized.
    AlgssGroups,
    /// Arbitrary-count strata, exactly latinized.
    LgssGroups,
}

impl PssKind {
    fn prefix(self) -> &'static str {
        match self {
            Self::Plain => "pss",
            Self::Latin => "lpss",
            Self::AlgssGroups => "algpss",
            Self::LgssGroups => "lgpss",
        }
    }
}

/// Parses a group-size spec like `2x50` or `4x1+1x2` into per-group
/// dimension counts.
pub fn parse_group_sizes(spec: &str) -> Result<Vec<usize>> {
    let mut sizes = Vec::new();
    for term in spec.split(['+', ',']) {
        let (x, y) = term.split_once('x').ok_or_else(|| {
            Error::InvalidArgument(format!("group term '{term}' is not of the form <dims>x<count>"))
        })?;
        let dims: usize = x
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad group dimension in '{term}'")))?;
        let count: usize = y
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad group count in '{term}'")))?;
        if dims == 0 || count == 0 {
            return Err(Error::InvalidArgument(format!(
                "group term '{term}' must have positive dimension and count"
            )));
        }
        sizes.extend(std::iter::repeat_n(dims, count));
    }
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("empty group spec".into()));
    }
    Ok(sizes)
}

fn render_group_sizes(sizes: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sizes.len() {
        let mut j = i;
        while j < sizes.len() && sizes[j] == sizes[i] {
            j += 1;
        }
        parts.push(format!("{}x{}", sizes[i], j - i));
        i = j;
    }
    parts.join("+")
}

const DEFAULT_KOROBOV_TRIALS: usize = 30;

impl DesignSpec {
    /// Parses a bench design token such as `srs`, `gss-inf`, `korobov:30`,
    /// or `lpss-4x25`.
    pub fn parse(token: &str) -> Result<Self> {
        let t = token.trim();
        if let Some(rest) = t.strip_prefix("pss-") {
            return Ok(Self::Pss {
                group_sizes: parse_group_sizes(rest)?,
                kind: PssKind::Plain,
            });
        }
        if let Some(rest) = t.strip_prefix("lpss-") {
            return Ok(Self::Pss {
                group_sizes: parse_group_sizes(rest)?,
                kind: PssKind::Latin,
            });
        }
        if let Some(rest) = t.strip_prefix("algpss-") {
            return Ok(Self::Pss {
                group_sizes: parse_group_sizes(rest)?,
                kind: PssKind::AlgssGroups,
            });
        }
        if let Some(rest) = t.strip_prefix("lgpss-") {
            return Ok(Self::Pss {
                group_sizes: parse_group_sizes(rest)?,
                kind: PssKind::LgssGroups,
            });
        }
        if let Some(rest) = t.strip_prefix("gss-") {
            return Ok(Self::Gss {
                b: rest.parse()?,
                avoid_odd: true,
            });
        }
        if let Some(rest) = t.strip_prefix("korobov:") {
            let trials = rest
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad trial count in '{t}'")))?;
            return Ok(Self::Korobov { trials });
        }
        if let Some(rest) = t.strip_prefix("lkorobov:") {
            let trials = rest
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad trial count in '{t}'")))?;
            return Ok(Self::LatinKorobov { trials });
        }
        match t {
            "srs" => Ok(Self::Srs),
            "lhs" => Ok(Self::Lhs),
            "halton" => Ok(Self::Halton { start_index: 0 }),
            "gss" => Ok(Self::Gss {
                b: BatesParameter::Finite(1),
                avoid_odd: true,
            }),
            "algss" => Ok(Self::Algss { avoid_odd: true }),
            "lgss" => Ok(Self::Lgss {
                avoid_odd: true,
                warm: WarmStart::CogHeuristic,
            }),
            "sukharev" => Ok(Self::Sukharev),
            "grid" => Ok(Self::Grid {
                b: BatesParameter::Finite(1),
            }),
            "korobov" => Ok(Self::Korobov {
                trials: DEFAULT_KOROBOV_TRIALS,
            }),
            "lkorobov" => Ok(Self::LatinKorobov {
                trials: DEFAULT_KOROBOV_TRIALS,
            }),
            other => Err(Error::InvalidArgument(format!(
                "unknown design '{other}'"
            ))),
        }
    }

    /// Canonical label used in result tables.
    pub fn label(&self) -> String {
        match self {
            Self::Srs => "srs".into(),
            Self::Lhs => "lhs".into(),
            Self::Halton { .. } => "halton".into(),
            Self::Gss { b, .. } => match b {
                BatesParameter::Finite(1) => "gss".into(),
                other => format!("gss-{other}"),
            },
            Self::Algss { .. } => "algss".into(),
            Self::Lgss { .. } => "lgss".into(),
            Self::Sukharev => "sukharev".into(),
            Self::Grid { .. } => "grid".into(),
            Self::Korobov { .. } => "korobov".into(),
            Self::LatinKorobov { .. } => "lkorobov".into(),
            Self::Pss { group_sizes, kind } => {
                format!("{}-{}", kind.prefix(), render_group_sizes(group_sizes))
            }
        }
    }

    /// One-time preparation ahead of repeated generation. Lattice designs
    /// select their multiplier here so that replications only redraw the
    /// random shift.
    pub fn prepare(&self, n_points: usize, dim: usize, rng: &mut RngStream) -> Result<PreparedDesign> {
        let multiplier = match self {
            Self::Korobov { trials } => {
                Some(select_korobov(n_points, dim, *trials, rng)?.multiplier())
            }
            Self::LatinKorobov { trials } => {
                Some(select_korobov_latin(n_points, dim, *trials, rng)?.multiplier())
            }
            _ => None,
        };
        Ok(PreparedDesign {
            spec: self.clone(),
            multiplier,
        })
    }

    /// Generates a point set directly (preparing first); convenient when the
    /// design is only used once.
    pub fn generate(&self, n_points: usize, dim: usize, rng: &mut RngStream) -> Result<PointSet> {
        let prepared = self.prepare(n_points, dim, rng)?;
        Ok(prepared.generate_full(n_points, dim, rng)?.0)
    }
}

/// A design ready for repeated generation.
#[derive(Debug, Clone)]
pub struct PreparedDesign {
    spec: DesignSpec,
    multiplier: Option<u64>,
}

fn exact_grid_side(n_points: usize, dim: usize, what: &str) -> Result<usize> {
    let k = integer_root(n_points, dim as u32);
    if k.pow(dim as u32) != n_points {
        return Err(Error::InvalidArgument(format!(
            "{what} requires the point count to be a perfect {dim}-th power, got {n_points}"
        )));
    }
    Ok(k)
}

impl PreparedDesign {
    pub fn spec(&self) -> &DesignSpec {
        &self.spec
    }

    pub fn generate(&self, n_points: usize, dim: usize, rng: &mut RngStream) -> Result<PointSet> {
        Ok(self.generate_full(n_points, dim, rng)?.0)
    }

    /// Generates a point set, returning the underlying stratification as
    /// well for designs that have one.
    pub fn generate_full(
        &self,
        n_points: usize,
        dim: usize,
        rng: &mut RngStream,
    ) -> Result<(PointSet, Option<Stratification>)> {
        let unit = Hyperbox::unit(dim);
        match &self.spec {
            DesignSpec::Srs => Ok((sample_srs(n_points, &unit, rng)?, None)),
            DesignSpec::Lhs => Ok((sample_lhs(n_points, dim, rng)?, None)),
            DesignSpec::Halton { start_index } => {
                Ok((sample_halton(n_points, dim, *start_index)?, None))
            }
            DesignSpec::Gss { b, avoid_odd } => {
                let strat = gss_partition(
                    n_points,
                    &unit,
                    &GssOptions {
                        avoid_odd_splits: *avoid_odd,
                    },
                    rng,
                )?;
                let points = sample_stratified(&strat, *b, rng)?;
                Ok((points, Some(strat)))
            }
            DesignSpec::Algss { avoid_odd } => {
                let strat = gss_partition(
                    n_points,
                    &unit,
                    &GssOptions {
                        avoid_odd_splits: *avoid_odd,
                    },
                    rng,
                )?;
                let (points, _violations) = algss(&strat, rng)?;
                Ok((points, Some(strat)))
            }
            DesignSpec::Lgss { avoid_odd, warm } => {
                let strat = gss_partition(
                    n_points,
                    &unit,
                    &GssOptions {
                        avoid_odd_splits: *avoid_odd,
                    },
                    rng,
                )?;
                let points = lgss_with(&strat, *warm, rng)?;
                Ok((points, Some(strat)))
            }
            DesignSpec::Sukharev => {
                let k = exact_grid_side(n_points, dim, "a sukharev grid")?;
                let strat = grid_partition(&vec![k; dim], &unit)?;
                let points = sample_stratified(&strat, BatesParameter::Infinity, rng)?;
                Ok((points, Some(strat)))
            }
            DesignSpec::Grid { b } => {
                let k = exact_grid_side(n_points, dim, "a conventional grid")?;
                let strat = grid_partition(&vec![k; dim], &unit)?;
                let points = sample_stratified(&strat, *b, rng)?;
                Ok((points, Some(strat)))
            }
            DesignSpec::Korobov { trials } => {
                let multiplier = match self.multiplier {
                    Some(a) => a,
                    None => select_korobov(n_points, dim, *trials, rng)?.multiplier(),
                };
                let spec = shift_korobov(n_points, multiplier, dim, false, rng)?;
                Ok((sample_korobov(&spec)?, None))
            }
            DesignSpec::LatinKorobov { trials } => {
                let multiplier = match self.multiplier {
                    Some(a) => a,
                    None => select_korobov_latin(n_points, dim, *trials, rng)?.multiplier(),
                };
                let spec = shift_korobov(n_points, multiplier, dim, true, rng)?;
                Ok((sample_korobov(&spec)?, None))
            }
            DesignSpec::Pss { group_sizes, kind } => {
                let total: usize = group_sizes.iter().sum();
                if total != dim {
                    return Err(Error::InvalidArgument(format!(
                        "group sizes sum to {total} but the design has {dim} dimensions"
                    )));
                }
                let mut designs = Vec::with_capacity(group_sizes.len());
                for &size in group_sizes {
                    let group_unit = Hyperbox::unit(size);
                    let points = match kind {
                        PssKind::Plain => {
                            let k = exact_grid_side(n_points, size, "a pss group")?;
                            let strat = grid_partition(&vec![k; size], &group_unit)?;
                            sample_stratified(&strat, BatesParameter::Finite(1), rng)?
                        }
                        PssKind::Latin => {
                            let k = exact_grid_side(n_points, size, "a pss group")?;
                            let strat = grid_partition(&vec![k; size], &group_unit)?;
                            lgss_with(&strat, WarmStart::CogHeuristic, rng)?
                        }
                        PssKind::AlgssGroups => {
                            let strat = gss_partition(
                                n_points,
                                &group_unit,
                                &GssOptions::default(),
                                rng,
                            )?;
                            algss(&strat, rng)?.0
                        }
                        PssKind::LgssGroups => {
                            let strat = gss_partition(
                                n_points,
                                &group_unit,
                                &GssOptions::default(),
                                rng,
                            )?;
                            lgss_with(&strat, WarmStart::CogHeuristic, rng)?
                        }
                    };
                    designs.push(points);
                }
                let grouping = PssGrouping::consecutive(group_sizes)?;
                Ok((pss_compose(&designs, &grouping, rng)?, None))
            }
        }
    }
}

/// Summary of an experiment over independent replications.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub design: String,
    pub function: String,
    pub dim: usize,
    pub n_points: usize,
    pub replications: usize,
    pub estimates: Vec<f64>,
    pub mean: f64,
    /// Unbiased (R-1 denominator) standard deviation of the estimates.
    pub std_dev: f64,
    pub median: f64,
    /// Bootstrap 95% confidence interval for the mean.
    pub ci: (f64, f64),
    pub seed: u64,
}

impl ExperimentReport {
    pub fn csv_header() -> &'static str {
        "design,function,n,N,replications,mean,std,median,ci_lo,ci_hi,seed"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.design,
            self.function,
            self.dim,
            self.n_points,
            self.replications,
            self.mean,
            self.std_dev,
            self.median,
            self.ci.0,
            self.ci.1,
            self.seed
        )
    }
}

fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn std_dev_of(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean_of(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

fn median_of(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

const BOOTSTRAP_RESAMPLES: usize = 1000;

/// Percentile bootstrap interval for the mean.
fn bootstrap_ci(values: &[f64], rng: &mut RngStream) -> (f64, f64) {
    if values.len() < 2 {
        let m = mean_of(values);
        return (m, m);
    }
    let mut means = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        let mut acc = 0.0;
        for _ in 0..values.len() {
            acc += values[rng.gen_range(0..values.len())];
        }
        means.push(acc / values.len() as f64);
    }
    means.sort_by(f64::total_cmp);
    let lo = (BOOTSTRAP_RESAMPLES as f64 * 0.025).floor() as usize;
    let hi = ((BOOTSTRAP_RESAMPLES as f64 * 0.975).ceil() as usize - 1)
        .min(BOOTSTRAP_RESAMPLES - 1);
    (means[lo], means[hi])
}

fn report_from_estimates(
    design: &DesignSpec,
    function: &str,
    dim: usize,
    n_points: usize,
    estimates: Vec<f64>,
    seed: u64,
    rng: &mut RngStream,
) -> ExperimentReport {
    let mean = mean_of(&estimates);
    let std_dev = std_dev_of(&estimates);
    let median = median_of(&estimates);
    let ci = bootstrap_ci(&estimates, rng);
    ExperimentReport {
        design: design.label(),
        function: function.to_string(),
        dim,
        n_points,
        replications: estimates.len(),
        estimates,
        mean,
        std_dev,
        median,
        ci,
        seed,
    }
}

/// Keeps transformed probabilities strictly inside (0, 1); sampled
/// coordinates can land exactly on the cube boundary with vanishing but
/// nonzero probability.
fn clamp_open_unit(x: f64) -> f64 {
    x.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
}

/// Estimates the mean of `f` over `n_points` design points, `replications`
/// times. Points are generated in the unit cube and either rescaled
/// affinely to the function's domain or, when `transform` is given, mapped
/// per coordinate through the inverse normal CDF.
pub fn run_integration_experiment(
    design: &DesignSpec,
    f: &TestFunction,
    transform: Option<NormalTransform>,
    n_points: usize,
    replications: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if replications == 0 || n_points == 0 {
        return Err(Error::InvalidArgument(
            "need at least one replication and one point".into(),
        ));
    }
    let root = RngStream::from_seed(seed);
    let dim = f.dim();
    let prepared = design.prepare(n_points, dim, &mut root.child("prepare", 0))?;
    let estimates: Vec<f64> = (0..replications)
        .into_par_iter()
        .map(|r| -> Result<f64> {
            let mut rng = root.child("rep", r as u64);
            let points = prepared.generate(n_points, dim, &mut rng)?;
            let mut arg = vec![0.0; dim];
            let mut acc = 0.0;
            for p in points.iter_points() {
                match transform {
                    Some(t) => {
                        for d in 0..dim {
                            arg[d] = inverse_normal_cdf(clamp_open_unit(p[d]), t.mean, t.sd)?;
                        }
                    }
                    None => {
                        let domain = f.domain();
                        for d in 0..dim {
                            arg[d] = domain.lower()[d] + domain.side(d) * p[d];
                        }
                    }
                }
                acc += f.evaluate(&arg);
            }
            Ok(acc / n_points as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(report_from_estimates(
        design,
        f.name(),
        dim,
        n_points,
        estimates,
        seed,
        &mut root.child("bootstrap", 0),
    ))
}

/// Per replication, draws a random instance of the function family,
/// generates `n_points` design points scaled to the instance domain, and
/// records the gap between the best sampled value and the true optimum.
pub fn run_optimization_experiment(
    design: &DesignSpec,
    family: FunctionFamily,
    dim: usize,
    n_points: usize,
    replications: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if replications == 0 || n_points == 0 || dim == 0 {
        return Err(Error::InvalidArgument(
            "need at least one replication, one point, and one dimension".into(),
        ));
    }
    let root = RngStream::from_seed(seed);
    let prepared = design.prepare(n_points, dim, &mut root.child("prepare", 0))?;
    let estimates: Vec<f64> = (0..replications)
        .into_par_iter()
        .map(|r| -> Result<f64> {
            let mut rng = root.child("rep", r as u64);
            let instance = family.instantiate(dim, &mut rng)?;
            let points = prepared.generate(n_points, dim, &mut rng)?;
            let domain = instance.domain();
            let mut arg = vec![0.0; dim];
            let mut best = f64::INFINITY;
            for p in points.iter_points() {
                for d in 0..dim {
                    arg[d] = domain.lower()[d] + domain.side(d) * p[d];
                }
                best = best.min(instance.evaluate(&arg));
            }
            Ok(best - instance.optimum_value())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(report_from_estimates(
        design,
        family.name(),
        dim,
        n_points,
        estimates,
        seed,
        &mut root.child("bootstrap", 0),
    ))
}

/// Win/tie/loss tally of the odd-split-avoidance variant per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantRow {
    pub dim: usize,
    pub wins_with: usize,
    pub ties: usize,
    pub wins_without: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantComparison {
    pub min_points: usize,
    pub max_points: usize,
    pub rows: Vec<VariantRow>,
}

impl VariantComparison {
    pub fn csv_header() -> &'static str {
        "dimension,wins_with_avoidance,ties,wins_without_avoidance"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.dim, row.wins_with, row.ties, row.wins_without
            ));
        }
        out
    }
}

/// For every point count and dimension in the ranges, builds the partition
/// with and without odd-split avoidance, samples centroids, and compares the
/// covering-radius upper bounds (ties within 1e-12).
pub fn run_variant_comparison(
    points_range: (usize, usize),
    dim_range: (usize, usize),
    seed: u64,
) -> Result<VariantComparison> {
    let (n_lo, n_hi) = points_range;
    let (d_lo, d_hi) = dim_range;
    if n_lo < 1 || n_lo > n_hi || d_lo < 1 || d_lo > d_hi {
        return Err(Error::InvalidArgument("bad comparison ranges".into()));
    }
    let root = RngStream::from_seed(seed);
    let mut rows = Vec::new();
    for dim in d_lo..=d_hi {
        let domain = Hyperbox::unit(dim);
        let outcomes: Vec<std::cmp::Ordering> = (n_lo..=n_hi)
            .into_par_iter()
            .map(|n| -> Result<std::cmp::Ordering> {
                let idx = (dim as u64) << 32 | n as u64;
                let build = |avoid: bool, label: &str| -> Result<f64> {
                    let mut rng = root.child(label, idx);
                    let strat = gss_partition(
                        n,
                        &domain,
                        &GssOptions {
                            avoid_odd_splits: avoid,
                        },
                        &mut rng,
                    )?;
                    let points =
                        sample_stratified(&strat, BatesParameter::Infinity, &mut rng)?;
                    covering_radius_upper(&points, &strat)
                };
                let with = build(true, "with-avoidance")?;
                let without = build(false, "without-avoidance")?;
                Ok(if (with - without).abs() <= 1e-12 {
                    std::cmp::Ordering::Equal
                } else if with < without {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut row = VariantRow {
            dim,
            wins_with: 0,
            ties: 0,
            wins_without: 0,
        };
        for o in outcomes {
            match o {
                std::cmp::Ordering::Less => row.wins_with += 1,
                std::cmp::Ordering::Equal => row.ties += 1,
                std::cmp::Ordering::Greater => row.wins_without += 1,
            }
        }
        rows.push(row);
    }
    Ok(VariantComparison {
        min_points: n_lo,
        max_points: n_hi,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_reference_values() {
        assert_eq!(eval_sphere(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(eval_rosenbrock(&[1.0, 1.0, 1.0]), 0.0);
        assert_eq!(eval_rosenbrock(&[0.0, 0.0]), 1.0);
        assert_eq!(eval_double_sum(&[0.0; 4]), 0.0);
        assert_eq!(eval_double_sum(&[1.0, 1.0]), 5.0);
    }

    #[test]
    fn fletcher_powell_optimum_is_zero_and_reproducible() {
        let root = RngStream::from_seed(42);
        let a = FletcherPowellInstance::generate(6, &mut root.child("fp", 0));
        let b = FletcherPowellInstance::generate(6, &mut root.child("fp", 0));
        assert_eq!(a, b);
        assert_eq!(a.eval(a.optimum()), 0.0);
        assert!(a.optimum().iter().all(|&v| (-PI..PI).contains(&v)));
        // A generic point is strictly worse.
        assert!(a.eval(&[0.1; 6]) > 0.0);
    }

    #[test]
    fn shifted_instances_have_uniform_optima_with_value_zero() {
        let root = RngStream::from_seed(7);
        for family in [
            FunctionFamily::Sphere,
            FunctionFamily::Rosenbrock,
            FunctionFamily::DoubleSum,
        ] {
            for i in 0..20 {
                let mut rng = root.child("inst", i);
                let f = family.instantiate(3, &mut rng).unwrap();
                let opt = f.optimum().unwrap().to_vec();
                assert!(opt.iter().all(|&v| (-PI..PI).contains(&v)));
                assert!(f.evaluate(&opt).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn inverse_normal_cdf_reference_values() {
        assert_eq!(inverse_normal_cdf(0.5, 3.25, 2.0).unwrap(), 3.25);
        let z = inverse_normal_cdf(0.975, 0.0, 1.0).unwrap();
        assert!((z - 1.959963984540054).abs() < 1e-9, "{z}");
        let z = inverse_normal_cdf(0.975, 1.0, 2.0).unwrap();
        assert!((z - (1.0 + 2.0 * 1.959963984540054)).abs() < 2e-9);
        assert!(inverse_normal_cdf(0.0, 0.0, 1.0).is_err());
        assert!(inverse_normal_cdf(1.0, 0.0, 1.0).is_err());
        assert!(inverse_normal_cdf(0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn inverse_normal_cdf_is_antisymmetric() {
        for &p in &[1e-8, 1e-4, 0.01, 0.2, 0.37, 0.49] {
            let a = inverse_normal_cdf(p, 0.0, 1.0).unwrap();
            let b = inverse_normal_cdf(1.0 - p, 0.0, 1.0).unwrap();
            assert!((a + b).abs() < 1e-9, "p={p}: {a} vs {b}");
        }
    }

    /// Independent oracle: bisection on a normal CDF built from the
    /// alternating Taylor series for erf (a different formula from the
    /// production path).
    #[test]
    fn inverse_normal_cdf_matches_bisection_oracle() {
        fn erf_taylor(y: f64) -> f64 {
            let mut term = y;
            let mut sum = y;
            let mut k = 0.0;
            while term.abs() > 1e-18 && k < 200.0 {
                k += 1.0;
                term *= -y * y / k;
                sum += term / (2.0 * k + 1.0);
            }
            2.0 / PI.sqrt() * sum
        }
        fn cdf_oracle(z: f64) -> f64 {
            0.5 * (1.0 + erf_taylor(z / std::f64::consts::SQRT_2))
        }
        for &p in &[2e-5, 1e-4, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.8, 0.99, 0.9999] {
            let (mut lo, mut hi) = (-8.0, 8.0);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if cdf_oracle(mid) < p {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let want = 0.5 * (lo + hi);
            let got = inverse_normal_cdf(p, 0.0, 1.0).unwrap();
            assert!((got - want).abs() < 1e-9, "p={p}: got {got} want {want}");
        }
    }

    /// Taylor series check: the alternating sum used elsewhere must fix the
    /// wrong sum if the production series drifts. Spot values from tables.
    #[test]
    fn normal_cdf_spot_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.0) - 0.841344746068543).abs() < 1e-12);
        assert!((normal_cdf(-1.96) - 0.024997895148220435).abs() < 1e-12);
        assert!((normal_cdf(-4.0) - 3.167124183311992e-5).abs() < 1e-15);
        // Deep tail must stay relatively accurate.
        let deep = normal_cdf(-8.0);
        assert!((deep - 6.22096057427178e-16).abs() / deep.abs() < 1e-10);
    }

    #[test]
    fn design_tokens_round_trip() {
        for token in [
            "srs", "lhs", "halton", "gss", "gss-inf", "gss-8", "algss", "lgss", "sukharev",
            "grid", "korobov", "lkorobov", "pss-2x50", "lpss-4x25", "algpss-2x2+1x2",
            "lgpss-3x2",
        ] {
            let spec = DesignSpec::parse(token).unwrap();
            assert_eq!(spec.label(), token, "token {token}");
        }
        assert!(DesignSpec::parse("sobol").is_err());
        assert!(DesignSpec::parse("pss-0x2").is_err());
    }

    #[test]
    fn group_size_parsing() {
        assert_eq!(parse_group_sizes("2x50").unwrap(), vec![2; 50]);
        assert_eq!(parse_group_sizes("4x1+1x2").unwrap(), vec![4, 1, 1]);
        assert!(parse_group_sizes("4").is_err());
    }

    #[test]
    fn designs_generate_requested_shapes() {
        let root = RngStream::from_seed(11);
        for (token, n, dim) in [
            ("srs", 17usize, 3usize),
            ("lhs", 17, 3),
            ("halton", 17, 3),
            ("gss", 17, 3),
            ("gss-inf", 17, 3),
            ("algss", 17, 3),
            ("lgss", 17, 3),
            ("sukharev", 27, 3),
            ("grid", 27, 3),
            ("korobov:8", 17, 3),
            ("lkorobov:8", 17, 3),
            ("pss-1x3", 17, 3),
            ("lpss-1x3", 17, 3),
            ("algpss-2x1+1x1", 17, 3),
            ("lgpss-2x1+1x1", 17, 3),
        ] {
            let spec = DesignSpec::parse(token).unwrap();
            let mut rng = root.child(token, 0);
            let points = spec.generate(n, dim, &mut rng).unwrap();
            assert_eq!(points.num_points(), n, "{token}");
            assert_eq!(points.dim(), dim, "{token}");
            for p in points.iter_points() {
                assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)), "{token}");
            }
        }
        // Grid-based designs demand perfect powers.
        let mut rng = root.child("bad", 0);
        assert!(DesignSpec::parse("sukharev")
            .unwrap()
            .generate(17, 3, &mut rng)
            .is_err());
    }

    /// Padding fifty two-dimensional stratified samples of 25^2 points each
    /// gives a 100-dimensional design; the latinized variant is Latin in
    /// every dimension.
    #[test]
    fn padded_designs_at_high_dimension() {
        let root = RngStream::from_seed(23);
        let pss = DesignSpec::parse("pss-2x50").unwrap();
        let mut rng = root.child("pss", 0);
        let points = pss.generate(625, 100, &mut rng).unwrap();
        assert_eq!(points.num_points(), 625);
        assert_eq!(points.dim(), 100);

        let lpss = DesignSpec::parse("lpss-2x50").unwrap();
        let mut rng = root.child("lpss", 0);
        let latin = lpss.generate(625, 100, &mut rng).unwrap();
        assert!(crate::latinize::lh_violations(&latin).iter().all(|&v| v == 0));
    }

    #[test]
    fn constant_function_has_zero_variance_everywhere() {
        let f = TestFunction::constant(4, 2.5);
        for token in ["srs", "gss-inf", "lhs"] {
            let design = DesignSpec::parse(token).unwrap();
            let report =
                run_integration_experiment(&design, &f, None, 16, 20, 99).unwrap();
            assert_eq!(report.std_dev, 0.0, "{token}");
            assert_eq!(report.mean, 2.5);
        }
    }

    /// Closed-form oracle: under the standard normal transform the expected
    /// double-sum value is the sum of prefix variances, n(n+1)/2.
    #[test]
    fn double_sum_normal_mean_matches_closed_form() {
        let dim = 10;
        let f = TestFunction::double_sum(dim);
        let transform = NormalTransform { mean: 0.0, sd: 1.0 };
        let report = run_integration_experiment(
            &DesignSpec::Srs,
            &f,
            Some(transform),
            64,
            60,
            7,
        )
        .unwrap();
        let want = (dim * (dim + 1) / 2) as f64;
        let se = report.std_dev / (report.replications as f64).sqrt();
        assert!(
            (report.mean - want).abs() < 3.5 * se,
            "mean {} want {want} se {se}",
            report.mean
        );
    }

    /// Different designs estimate the same integral.
    #[test]
    fn designs_agree_on_the_integral() {
        let f = TestFunction::rosenbrock(6);
        let a = run_integration_experiment(&DesignSpec::Srs, &f, None, 64, 80, 3).unwrap();
        let b = run_integration_experiment(&DesignSpec::Lhs, &f, None, 64, 80, 4).unwrap();
        let se = |r: &ExperimentReport| r.std_dev / (r.replications as f64).sqrt();
        let gap = (a.mean - b.mean).abs();
        let combined = (se(&a).powi(2) + se(&b).powi(2)).sqrt();
        assert!(gap < 3.5 * combined, "gap {gap} combined se {combined}");
    }

    #[test]
    fn optimization_errors_are_nonnegative_and_shrink_with_budget() {
        let small = run_optimization_experiment(
            &DesignSpec::Srs,
            FunctionFamily::Sphere,
            2,
            100,
            60,
            5,
        )
        .unwrap();
        assert!(small.estimates.iter().all(|&e| e >= 0.0));
        let large = run_optimization_experiment(
            &DesignSpec::Srs,
            FunctionFamily::Sphere,
            2,
            400,
            60,
            5,
        )
        .unwrap();
        assert!(
            large.mean < small.mean,
            "budget 400 mean {} not below budget 100 mean {}",
            large.mean,
            small.mean
        );
    }

    #[test]
    fn experiments_are_deterministic() {
        let f = TestFunction::rosenbrock(4);
        let a = run_integration_experiment(&DesignSpec::Lhs, &f, None, 32, 25, 11).unwrap();
        let b = run_integration_experiment(&DesignSpec::Lhs, &f, None, 32, 25, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn variant_comparison_ties_at_power_of_two() {
        // Four points in two dimensions: both variants recover the 2x2 grid.
        let cmp = run_variant_comparison((4, 4), (2, 2), 3).unwrap();
        assert_eq!(cmp.rows.len(), 1);
        assert_eq!(cmp.rows[0].ties, 1);
        assert_eq!(cmp.rows[0].wins_with + cmp.rows[0].wins_without, 0);
    }

    #[test]
    fn report_csv_shape() {
        let f = TestFunction::constant(2, 1.0);
        let report =
            run_integration_experiment(&DesignSpec::Srs, &f, None, 4, 5, 0).unwrap();
        assert_eq!(
            ExperimentReport::csv_header().split(',').count(),
            report.to_csv_row().split(',').count()
        );
    }

    #[test]
    fn stats_helpers() {
        assert_eq!(median_of(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median_of(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(std_dev_of(&[5.0]), 0.0);
        let sd = std_dev_of(&[1.0, 2.0, 3.0, 4.0]);
        assert!((sd - (5.0f64 / 3.0).sqrt()).abs() < 1e-12);
        let mut rng = RngStream::from_seed(0);
        let values: Vec<f64> = (0..200).map(|_| rng.gen::<f64>()).collect();
        let (lo, hi) = bootstrap_ci(&values, &mut rng.child("boot", 0));
        let m = mean_of(&values);
        assert!(lo <= m && m <= hi);
        assert!(hi - lo < 0.3);
    }
}
