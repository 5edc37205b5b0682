//! Automatic domain randomization: the expanding distribution over
//! environment parameters and the threshold rule that grows or shrinks it.
//!
//! Each randomized dimension `i` carries a boundary pair `(phi_low[i],
//! phi_high[i])` describing a uniform sampling range. Episode performances
//! measured with one dimension pinned to a range endpoint accumulate in
//! per-(dimension, side) buffers; once a buffer is full its average is
//! compared against two thresholds and the corresponding boundary moves
//! outward, inward, or stays.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::real::{uniform, Real};

/// Errors raised by distribution construction and performance recording.
#[derive(Debug, thiserror::Error)]
pub enum AdrError {
    #[error("dimension list is empty")]
    EmptyDimensions,
    #[error("duplicate dimension name `{0}`")]
    DuplicateDimension(String),
    #[error("dimension index {index} out of range (d = {dims})")]
    DimensionOutOfRange { index: usize, dims: usize },
    #[error("performance value is not finite")]
    NonFinitePerformance,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// One randomized environment dimension with its calibrated center value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomizationDimension<F> {
    pub name: String,
    /// Calibrated value in randomization space; both boundaries start here.
    pub calib_value: F,
    #[serde(default)]
    pub description: String,
}

impl<F> RandomizationDimension<F> {
    pub fn new(name: impl Into<String>, calib_value: F) -> Self {
        Self {
            name: name.into(),
            calib_value,
            description: String::new(),
        }
    }
}

/// Threshold rule constants. Defaults are the reference hyperparameters
/// (step 0.02, thresholds 10/20, queue length 240, boundary probability 0.5,
/// boundary cap 4.0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdrConfig<F> {
    /// Update step applied to a boundary when a threshold fires.
    pub step_size: F,
    /// Mean performance at or below this shrinks the boundary inward.
    pub threshold_low: F,
    /// Mean performance at or above this expands the boundary outward.
    pub threshold_high: F,
    /// Number of performances accumulated before a threshold check.
    pub buffer_size: usize,
    /// Probability that a worker episode is a boundary evaluation.
    pub boundary_prob: F,
    /// Largest absolute value any boundary may take.
    pub phi_max: F,
}

impl<F: Real> Default for AdrConfig<F> {
    fn default() -> Self {
        Self {
            step_size: F::of(0.02),
            threshold_low: F::of(10.0),
            threshold_high: F::of(20.0),
            buffer_size: 240,
            boundary_prob: F::of(0.5),
            phi_max: F::of(4.0),
        }
    }
}

impl<F: Real> AdrConfig<F> {
    pub fn validate(&self) -> Result<(), AdrError> {
        if !(self.threshold_low < self.threshold_high) {
            return Err(AdrError::InvalidConfig(format!(
                "threshold_low ({}) must be < threshold_high ({})",
                self.threshold_low, self.threshold_high
            )));
        }
        if !(self.step_size > F::zero()) {
            return Err(AdrError::InvalidConfig("step_size must be > 0".into()));
        }
        if self.buffer_size < 1 {
            return Err(AdrError::InvalidConfig("buffer_size must be >= 1".into()));
        }
        if !(self.phi_max > F::zero()) {
            return Err(AdrError::InvalidConfig("phi_max must be > 0".into()));
        }
        if self.boundary_prob < F::zero() || self.boundary_prob > F::one() {
            return Err(AdrError::InvalidConfig(
                "boundary_prob must be in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Which end of a randomization range an evaluation was pinned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "L")]
    Low,
    #[serde(rename = "H")]
    High,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::Low => 0,
            Side::High => 1,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Low => write!(f, "L"),
            Side::High => write!(f, "H"),
        }
    }
}

/// The factorized sampling distribution: per-dimension uniform ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdrDistribution<F> {
    dims: Vec<RandomizationDimension<F>>,
    phi_low: Vec<F>,
    phi_high: Vec<F>,
}

/// Result of a boundary-pinned sample: the full parameter vector plus which
/// (dimension, side) was pinned.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySample<F> {
    pub lambda: Vec<F>,
    pub dim_index: usize,
    pub side: Side,
}

impl<F: Real> AdrDistribution<F> {
    /// Zero-width distribution centered on the calibration values.
    pub fn from_calibration(dims: Vec<RandomizationDimension<F>>) -> Result<Self, AdrError> {
        if dims.is_empty() {
            return Err(AdrError::EmptyDimensions);
        }
        let mut seen = BTreeSet::new();
        for d in &dims {
            if !seen.insert(d.name.as_str()) {
                return Err(AdrError::DuplicateDimension(d.name.clone()));
            }
        }
        let phi_low: Vec<F> = dims.iter().map(|d| d.calib_value).collect();
        let phi_high = phi_low.clone();
        Ok(Self {
            dims,
            phi_low,
            phi_high,
        })
    }

    /// Rebuild a distribution from explicit boundaries (e.g. a published phi
    /// snapshot or a fixed-DR configuration). Boundaries must bracket the
    /// calibration values.
    pub fn with_boundaries(
        dims: Vec<RandomizationDimension<F>>,
        phi_low: Vec<F>,
        phi_high: Vec<F>,
    ) -> Result<Self, AdrError> {
        let mut dist = Self::from_calibration(dims)?;
        if phi_low.len() != dist.len() || phi_high.len() != dist.len() {
            return Err(AdrError::InvalidConfig(format!(
                "boundary vectors must have length {}",
                dist.len()
            )));
        }
        for i in 0..dist.len() {
            let calib = dist.dims[i].calib_value;
            if !(phi_low[i] <= calib && calib <= phi_high[i]) {
                return Err(AdrError::InvalidConfig(format!(
                    "dimension `{}`: boundaries [{}, {}] do not bracket calibration {}",
                    dist.dims[i].name, phi_low[i], phi_high[i], calib
                )));
            }
        }
        dist.phi_low = phi_low;
        dist.phi_high = phi_high;
        Ok(dist)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[RandomizationDimension<F>] {
        &self.dims
    }

    pub fn phi_low(&self) -> &[F] {
        &self.phi_low
    }

    pub fn phi_high(&self) -> &[F] {
        &self.phi_high
    }

    pub fn boundary(&self, dim_index: usize, side: Side) -> F {
        match side {
            Side::Low => self.phi_low[dim_index],
            Side::High => self.phi_high[dim_index],
        }
    }

    pub fn width(&self, dim_index: usize) -> F {
        self.phi_high[dim_index] - self.phi_low[dim_index]
    }

    pub fn total_width(&self) -> F {
        (0..self.len()).fold(F::zero(), |acc, i| acc + self.width(i))
    }

    /// Mean log range width in nats per dimension. Any zero-width dimension
    /// makes the result the negative-infinity sentinel rather than an error,
    /// so freshly initialized distributions can be logged from step zero.
    pub fn entropy(&self) -> F {
        let d = F::of(self.len() as f64);
        let sum = (0..self.len()).fold(F::zero(), |acc, i| acc + self.width(i).ln());
        sum / d
    }

    /// Draw one environment parameter vector, each coordinate uniform on its
    /// (inclusive) range.
    pub fn sample_lambda<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F> {
        (0..self.len())
            .map(|i| uniform(rng, self.phi_low[i], self.phi_high[i]))
            .collect()
    }

    /// Draw a parameter vector with one uniformly chosen dimension pinned to
    /// one of its boundaries: lower when `x < 0.5` for `x ~ U(0, 1)`.
    pub fn boundary_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BoundarySample<F> {
        let mut lambda = self.sample_lambda(rng);
        let dim_index = rng.random_range(0..self.len());
        let x: f64 = rng.random();
        let side = if x < 0.5 { Side::Low } else { Side::High };
        lambda[dim_index] = self.boundary(dim_index, side);
        BoundarySample {
            lambda,
            dim_index,
            side,
        }
    }

    fn set_boundary(&mut self, dim_index: usize, side: Side, value: F) {
        match side {
            Side::Low => self.phi_low[dim_index] = value,
            Side::High => self.phi_high[dim_index] = value,
        }
    }
}

/// What a threshold check decided for one boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpdateDecision {
    Expand,
    Shrink,
    NoChange,
}

/// Outcome of one full-buffer threshold check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryUpdate<F> {
    pub dim_index: usize,
    pub side: Side,
    pub old_value: F,
    pub new_value: F,
    pub mean_performance: F,
    pub decision: UpdateDecision,
}

/// Per-(dimension, side) queues of episode performances awaiting a
/// threshold check.
#[derive(Debug, Clone, Default)]
pub struct PerformanceBuffers<F> {
    buffers: Vec<[Vec<F>; 2]>,
}

impl<F: Real> PerformanceBuffers<F> {
    pub fn new(dims: usize) -> Self {
        Self {
            buffers: (0..dims).map(|_| [Vec::new(), Vec::new()]).collect(),
        }
    }

    pub fn len(&self, dim_index: usize, side: Side) -> usize {
        self.buffers[dim_index][side.index()].len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffers.iter().all(|b| b[0].is_empty() && b[1].is_empty())
    }

    /// Total number of buffered performances across all (dim, side) queues.
    pub fn total_len(&self) -> usize {
        self.buffers.iter().map(|b| b[0].len() + b[1].len()).sum()
    }

    /// Append one episode performance and run the threshold check if the
    /// buffer reached `buffer_size`. The buffer is always cleared on a check,
    /// including the no-change case.
    ///
    /// Boundary movement is expressed in range-expansion coordinates: good
    /// performance at the high side raises `phi_high`, good performance at
    /// the low side lowers `phi_low`. Expansion clamps at `±phi_max`;
    /// shrinkage never crosses the calibration value.
    pub fn record(
        &mut self,
        config: &AdrConfig<F>,
        dim_index: usize,
        side: Side,
        p: F,
        dist: &mut AdrDistribution<F>,
    ) -> Result<Option<BoundaryUpdate<F>>, AdrError> {
        if !p.is_finite() {
            return Err(AdrError::NonFinitePerformance);
        }
        if dim_index >= dist.len() || dim_index >= self.buffers.len() {
            return Err(AdrError::DimensionOutOfRange {
                index: dim_index,
                dims: dist.len(),
            });
        }
        let buf = &mut self.buffers[dim_index][side.index()];
        buf.push(p);
        if buf.len() < config.buffer_size {
            return Ok(None);
        }

        let n = F::of(buf.len() as f64);
        let mean = buf.iter().fold(F::zero(), |acc, &v| acc + v) / n;
        buf.clear();

        let old = dist.boundary(dim_index, side);
        let calib = dist.dims()[dim_index].calib_value;
        let step = config.step_size;
        let (decision, new) = if mean >= config.threshold_high {
            let new = match side {
                Side::High => (old + step).min(config.phi_max),
                Side::Low => (old - step).max(-config.phi_max),
            };
            (UpdateDecision::Expand, new)
        } else if mean <= config.threshold_low {
            let new = match side {
                Side::High => (old - step).max(calib),
                Side::Low => (old + step).min(calib),
            };
            (UpdateDecision::Shrink, new)
        } else {
            (UpdateDecision::NoChange, old)
        };
        dist.set_boundary(dim_index, side, new);

        Ok(Some(BoundaryUpdate {
            dim_index,
            side,
            old_value: old,
            new_value: new,
            mean_performance: mean,
            decision,
        }))
    }
}

/// One line of the boundary-update log. Field names are part of the
/// on-disk contract; a non-finite entropy (any zero-width dimension)
/// serializes as JSON `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryUpdateRecord {
    /// Step counter at which the check fired.
    pub t: u64,
    /// Dimension name.
    pub dim: String,
    pub side: Side,
    pub old: f64,
    pub new: f64,
    pub mean_p: f64,
    pub entropy_npd: f64,
}

impl BoundaryUpdateRecord {
    pub fn new<F: Real>(
        t: u64,
        dist: &AdrDistribution<F>,
        update: &BoundaryUpdate<F>,
    ) -> Self {
        Self {
            t,
            dim: dist.dims()[update.dim_index].name.clone(),
            side: update.side,
            old: update.old_value.to_f64().unwrap_or(f64::NAN),
            new: update.new_value.to_f64().unwrap_or(f64::NAN),
            mean_p: update.mean_performance.to_f64().unwrap_or(f64::NAN),
            entropy_npd: dist.entropy().to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Snapshot line for a full distribution, written at run start and whenever
/// a new phi version is published.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiSnapshotRecord {
    pub t: u64,
    pub version: u64,
    pub dims: Vec<String>,
    pub phi_low: Vec<f64>,
    pub phi_high: Vec<f64>,
    pub entropy_npd: f64,
}

impl PhiSnapshotRecord {
    pub fn new<F: Real>(t: u64, version: u64, dist: &AdrDistribution<F>) -> Self {
        Self {
            t,
            version,
            dims: dist.dims().iter().map(|d| d.name.clone()).collect(),
            phi_low: dist
                .phi_low()
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
            phi_high: dist
                .phi_high()
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
            entropy_npd: dist.entropy().to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dims3() -> Vec<RandomizationDimension<f64>> {
        vec![
            RandomizationDimension::new("a", 1.0),
            RandomizationDimension::new("b", -2.0),
            RandomizationDimension::new("c", 0.5),
        ]
    }

    #[test]
    fn init_single_zero_calibration() {
        let dist =
            AdrDistribution::from_calibration(vec![RandomizationDimension::new("x", 0.0f64)])
                .unwrap();
        assert_eq!(dist.phi_low(), &[0.0]);
        assert_eq!(dist.phi_high(), &[0.0]);
    }

    #[test]
    fn init_copies_calibration_to_both_boundaries() {
        let dist = AdrDistribution::from_calibration(dims3()).unwrap();
        assert_eq!(dist.phi_low(), &[1.0, -2.0, 0.5]);
        assert_eq!(dist.phi_high(), &[1.0, -2.0, 0.5]);
    }

    #[test]
    fn init_rejects_empty_and_duplicate() {
        assert!(matches!(
            AdrDistribution::<f64>::from_calibration(vec![]),
            Err(AdrError::EmptyDimensions)
        ));
        let dup = vec![
            RandomizationDimension::new("x", 0.0f64),
            RandomizationDimension::new("x", 1.0),
        ];
        assert!(matches!(
            AdrDistribution::from_calibration(dup),
            Err(AdrError::DuplicateDimension(name)) if name == "x"
        ));
    }

    #[test]
    fn entropy_unit_width_is_zero() {
        let dims = vec![RandomizationDimension::new("x", 0.5f64)];
        let dist = AdrDistribution::with_boundaries(dims, vec![0.0], vec![1.0]).unwrap();
        assert!((dist.entropy() - 0.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_analytic_two_dims() {
        // widths e and e^2: (1 + 2) / 2 = 1.5 nats per dimension
        let dims = vec![
            RandomizationDimension::new("x", 0.0f64),
            RandomizationDimension::new("y", 0.0),
        ];
        let e = std::f64::consts::E;
        let dist = AdrDistribution::with_boundaries(dims, vec![0.0, 0.0], vec![e, e * e]).unwrap();
        assert!((dist.entropy() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn entropy_zero_width_is_negative_infinity() {
        let dist = AdrDistribution::from_calibration(dims3()).unwrap();
        assert_eq!(dist.entropy(), f64::NEG_INFINITY);
    }

    #[test]
    fn entropy_generic_at_f32() {
        let dims = vec![RandomizationDimension::new("x", 0.5f32)];
        let dist = AdrDistribution::with_boundaries(dims, vec![0.0f32], vec![1.0]).unwrap();
        assert!(dist.entropy().abs() < 1e-6);
    }

    #[test]
    fn sample_zero_width_returns_calibration() {
        let dist = AdrDistribution::from_calibration(dims3()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(dist.sample_lambda(&mut rng), vec![1.0, -2.0, 0.5]);
    }

    #[test]
    fn sample_is_deterministic_under_seed() {
        let dims = vec![RandomizationDimension::new("x", 0.0f64)];
        let dist = AdrDistribution::with_boundaries(dims, vec![-1.0], vec![1.0]).unwrap();
        let a = dist.sample_lambda(&mut ChaCha8Rng::seed_from_u64(42));
        let b = dist.sample_lambda(&mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
    }

    #[test]
    fn sample_mean_matches_uniform_moments() {
        // U(0,1): mean 1/2, sd 1/sqrt(12); 1e5 draws within 3 standard errors.
        let dims = vec![RandomizationDimension::new("x", 0.5f64)];
        let dist = AdrDistribution::with_boundaries(dims, vec![0.0], vec![1.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            sum += dist.sample_lambda(&mut rng)[0];
        }
        let mean = sum / n as f64;
        let se = 1.0 / (12.0f64.sqrt() * (n as f64).sqrt());
        assert!((mean - 0.5).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn boundary_sample_pins_exact_boundary_value() {
        let dims = vec![
            RandomizationDimension::new("x", 0.0f64),
            RandomizationDimension::new("y", 0.0),
        ];
        let dist =
            AdrDistribution::with_boundaries(dims, vec![-0.3, -0.7], vec![0.9, 1.3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let bs = dist.boundary_sample(&mut rng);
            let expect = dist.boundary(bs.dim_index, bs.side);
            assert_eq!(bs.lambda[bs.dim_index], expect);
        }
    }

    #[test]
    fn boundary_sample_side_split_is_binomial() {
        // d=1, zero width: both sides leave lambda at calibration; side choice
        // is a fair coin. 3-sigma binomial check at 1e4 draws.
        let dist =
            AdrDistribution::from_calibration(vec![RandomizationDimension::new("x", 0.25f64)])
                .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 10_000;
        let mut lows = 0usize;
        for _ in 0..n {
            let bs = dist.boundary_sample(&mut rng);
            assert_eq!(bs.lambda, vec![0.25]);
            if bs.side == Side::Low {
                lows += 1;
            }
        }
        let sigma = (n as f64 * 0.25).sqrt();
        assert!(
            (lows as f64 - n as f64 / 2.0).abs() < 3.0 * sigma,
            "lows {lows}"
        );
    }

    #[test]
    fn boundary_sample_dim_choice_is_uniform() {
        let dims: Vec<_> = (0..4)
            .map(|i| RandomizationDimension::new(format!("d{i}"), 0.0f64))
            .collect();
        let dist = AdrDistribution::from_calibration(dims).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let n = 100_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            counts[dist.boundary_sample(&mut rng).dim_index] += 1;
        }
        let p = 0.25;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - n as f64 * p).abs() < 3.0 * sigma,
                "dim {i}: {c}"
            );
        }
    }

    fn table_config() -> AdrConfig<f64> {
        AdrConfig::default()
    }

    #[test]
    fn full_buffer_high_mean_expands_high_boundary() {
        let mut dist = AdrDistribution::from_calibration(dims3()).unwrap();
        let mut bufs = PerformanceBuffers::new(dist.len());
        let cfg = table_config();
        let mut update = None;
        for _ in 0..cfg.buffer_size {
            update = bufs
                .record(&cfg, 0, Side::High, 25.0, &mut dist)
                .unwrap();
        }
        let u = update.expect("check fires at buffer_size");
        assert_eq!(u.decision, UpdateDecision::Expand);
        assert!((u.new_value - (1.0 + 0.02)).abs() < 1e-15);
        assert_eq!(dist.phi_high()[0], u.new_value);
        assert_eq!(bufs.len(0, Side::High), 0);
    }

    #[test]
    fn low_mean_shrinks_and_floors_at_calibration() {
        let mut dist = AdrDistribution::from_calibration(dims3()).unwrap();
        let mut bufs = PerformanceBuffers::new(dist.len());
        let cfg = table_config();
        // phi_high already at calibration: shrink clamps, boundary stays.
        let mut update = None;
        for _ in 0..cfg.buffer_size {
            update = bufs.record(&cfg, 0, Side::High, 5.0, &mut dist).unwrap();
        }
        let u = update.unwrap();
        assert_eq!(u.decision, UpdateDecision::Shrink);
        assert_eq!(u.new_value, 1.0);
        assert_eq!(dist.phi_high()[0], 1.0);
    }

    #[test]
    fn between_thresholds_clears_buffer_without_move() {
        let mut dist = AdrDistribution::from_calibration(dims3()).unwrap();
        let mut bufs = PerformanceBuffers::new(dist.len());
        let cfg = table_config();
        let mut update = None;
        for _ in 0..cfg.buffer_size {
            update = bufs.record(&cfg, 1, Side::Low, 15.0, &mut dist).unwrap();
        }
        let u = update.unwrap();
        assert_eq!(u.decision, UpdateDecision::NoChange);
        assert_eq!(u.old_value, u.new_value);
        assert_eq!(bufs.len(1, Side::Low), 0);
    }

    #[test]
    fn non_finite_performance_is_rejected() {
        let mut dist = AdrDistribution::from_calibration(dims3()).unwrap();
        let mut bufs = PerformanceBuffers::new(dist.len());
        let cfg = table_config();
        assert!(matches!(
            bufs.record(&cfg, 0, Side::Low, f64::NAN, &mut dist),
            Err(AdrError::NonFinitePerformance)
        ));
        assert_eq!(bufs.len(0, Side::Low), 0);
    }

    #[test]
    fn expansion_clamps_at_phi_max() {
        let dims = vec![RandomizationDimension::new("x", 0.0f64)];
        let mut dist =
            AdrDistribution::with_boundaries(dims, vec![0.0], vec![3.99]).unwrap();
        let mut bufs = PerformanceBuffers::new(1);
        let cfg = AdrConfig {
            buffer_size: 2,
            ..table_config()
        };
        for _ in 0..2 {
            bufs.record(&cfg, 0, Side::High, 25.0, &mut dist).unwrap();
        }
        assert_eq!(dist.phi_high()[0], 4.0);
        for _ in 0..2 {
            bufs.record(&cfg, 0, Side::High, 25.0, &mut dist).unwrap();
        }
        assert_eq!(dist.phi_high()[0], 4.0);
    }

    #[test]
    fn update_record_has_contract_field_names() {
        let dims = vec![RandomizationDimension::new("gravity", 0.0f64)];
        let mut dist = AdrDistribution::from_calibration(dims).unwrap();
        let mut bufs = PerformanceBuffers::new(1);
        let cfg = AdrConfig {
            buffer_size: 1,
            ..table_config()
        };
        let u = bufs
            .record(&cfg, 0, Side::High, 25.0, &mut dist)
            .unwrap()
            .unwrap();
        let rec = BoundaryUpdateRecord::new(3, &dist, &u);
        let json = serde_json::to_value(&rec).unwrap();
        let obj = json.as_object().unwrap();
        for key in ["t", "dim", "side", "old", "new", "mean_p", "entropy_npd"] {
            assert!(obj.contains_key(key), "missing field {key}");
        }
        assert_eq!(obj["side"], "H");
        assert_eq!(obj["dim"], "gravity");
        // width is 0.02 after the expand, so entropy is finite here
        assert!(obj["entropy_npd"].is_number());
    }
}
