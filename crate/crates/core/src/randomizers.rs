//! Randomizer catalog: maps sampled environment parameters onto concrete
//! physics values.
//!
//! Three families:
//! - generic noise modes (additive gaussian, unbiased additive gaussian,
//!   multiplicative), each driven by one or two parameter dimensions and a
//!   scaling factor;
//! - custom closed-form models (friction, cube size, latency, backlash,
//!   gravity, time step, ...), some with per-episode and per-step components;
//! - observation noise with correlated (per-episode) and uncorrelated
//!   (per-step) terms.
//!
//! The random network adversary lives in [`crate::rna`].
//!
//! All samplers are pure given explicit random streams. The shifted
//! exponential `g(x) = exp(x - 1)` is the common scale transform; note
//! `g(0) = 1/e`, so formulas using `g` have a small noise floor at the zero
//! parameter point rather than vanishing noise.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::real::{normal, uniform, Real};

#[derive(Debug, thiserror::Error)]
pub enum RandomizerError {
    #[error("friction weight must be 1.0 or 2.0, got {0}")]
    InvalidFrictionWeight(f64),
    #[error("randomizer `{kind}` needs {expected} parameter dimension(s), got {got}")]
    WrongDimCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("parameter dimension index {index} out of range (d = {dims})")]
    DimOutOfRange { index: usize, dims: usize },
    #[error("expected a {expected} default value for `{kind}`")]
    WrongValueShape {
        kind: &'static str,
        expected: &'static str,
    },
    #[error("episode draw does not match randomizer kind `{0}`")]
    DrawMismatch(&'static str),
    #[error("unknown noise mode `{0}` (expected AG, UAG or M)")]
    UnknownNoiseMode(String),
    #[error("unknown randomizer kind `{0}`")]
    UnknownKind(String),
}

/// Shifted exponential scale transform: `g(x) = exp(x - 1)`.
pub fn g_shift<F: Real>(x: F) -> F {
    (x - F::one()).exp()
}

/// Generic noise modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoiseMode {
    /// `x0 + |N|` for `N ~ Normal(g(α·λi), g(|α·λj|)²)`; biased upward.
    AG,
    /// `x0 + N` for `N ~ Normal(0, g(|α·λi|)²)`.
    UAG,
    /// `x0 · e^N` for `N ~ Normal(α·λi, |α·λj|²)`; exact identity at λ = 0.
    M,
}

impl std::str::FromStr for NoiseMode {
    type Err = RandomizerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "AG" | "ag" => Ok(NoiseMode::AG),
            "UAG" | "uag" => Ok(NoiseMode::UAG),
            "M" | "m" => Ok(NoiseMode::M),
            other => Err(RandomizerError::UnknownNoiseMode(other.to_string())),
        }
    }
}

/// A generic randomizer: noise mode plus scaling factor, bound to one or two
/// parameter dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericRandomizerSpec<F> {
    /// Environment parameter this randomizer writes.
    pub target: String,
    pub mode: NoiseMode,
    pub alpha: F,
    /// Dimension index of λi (bias / primary spread).
    pub dim_bias: usize,
    /// Dimension index of λj (secondary spread). Unused by UAG.
    pub dim_spread: usize,
}

impl<F: Real> GenericRandomizerSpec<F> {
    fn dim(&self, lambda: &[F], index: usize) -> Result<F, RandomizerError> {
        lambda
            .get(index)
            .copied()
            .ok_or(RandomizerError::DimOutOfRange {
                index,
                dims: lambda.len(),
            })
    }

    /// Mode arithmetic applied to an externally supplied draw of `N`;
    /// the stochastic [`apply`](Self::apply) feeds it the sampled value.
    pub fn apply_with_draw(&self, x0: F, n: F) -> F {
        match self.mode {
            NoiseMode::AG => x0 + n.abs(),
            NoiseMode::UAG => x0 + n,
            NoiseMode::M => x0 * n.exp(),
        }
    }

    /// Distribution of `N` for the current mode at parameter vector `lambda`.
    pub fn draw_params(&self, lambda: &[F]) -> Result<(F, F), RandomizerError> {
        let li = self.dim(lambda, self.dim_bias)?;
        Ok(match self.mode {
            NoiseMode::AG => {
                let lj = self.dim(lambda, self.dim_spread)?;
                (g_shift(self.alpha * li), g_shift((self.alpha * lj).abs()))
            }
            NoiseMode::UAG => (F::zero(), g_shift((self.alpha * li).abs())),
            NoiseMode::M => {
                let lj = self.dim(lambda, self.dim_spread)?;
                (self.alpha * li, (self.alpha * lj).abs())
            }
        })
    }

    /// Apply the noise mode to default value `x0`.
    pub fn apply<R: Rng + ?Sized>(
        &self,
        x0: F,
        lambda: &[F],
        rng: &mut R,
    ) -> Result<F, RandomizerError> {
        let (mean, std) = self.draw_params(lambda)?;
        Ok(self.apply_with_draw(x0, normal(rng, mean, std)))
    }
}

/// Closed-form custom randomizer kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CustomKind<F> {
    /// `x = x0 · e^(w·λi)`; `w` is 1.0 (slide / robot) or 2.0 (spin / roll).
    Friction { weight: F },
    /// `x = x0 · e^(0.15·λi)`.
    CubeSize,
    /// `x = x0 + n` for `n ~ Normal(0, 0.1·g(|λi|))`; the second argument is
    /// the variance (the source formula leaves it unsquared).
    JointLimits,
    /// Delay `d = |λi|·n0·n1`, `n0 ~ Normal(1, λj²)` per episode,
    /// `n1 ~ Normal(1, λk²)` per step. Dims: `[i, j, k]`.
    ActionDelay,
    /// Latency in whole steps, uniform over `{0, ..., round(λi)}` (ties to
    /// even), so anything at or below 0.5 gives zero latency.
    ActionLatency,
    /// `a = a0·n0 + n1 + n2`, `n0 ~ Normal(1, g(|λi|)²)` and
    /// `n1 ~ Normal(0, g(|λj|)²)` per episode, `n2 ~ Normal(0, g(|λk|)²)` per
    /// step. Dims: `[i, j, k]`.
    ActionNoise,
    /// `δ± = e^(n·δ±0)` for `n ~ Normal(1, λi²)`, one draw per parameter per
    /// episode.
    Backlash,
    /// `g = g0 + u·g(λi)` for `u` uniform on the unit sphere, per episode.
    Gravity,
    /// `m = m0·n` for `n ~ U[0, 0.15·g(λi)]`, per episode.
    JointMargin,
    /// `t = e^(0.6·λi)·(t0 + n·e^λj)` for `n ~ Exp(mean 1/κ)` per step,
    /// `κ ~ U[1250, 10000]` per episode. Dims: `[i, j]`.
    TimeStep,
}

impl<F: Real> CustomKind<F> {
    pub fn name(&self) -> &'static str {
        match self {
            CustomKind::Friction { .. } => "friction",
            CustomKind::CubeSize => "cube_size",
            CustomKind::JointLimits => "joint_limits",
            CustomKind::ActionDelay => "action_delay",
            CustomKind::ActionLatency => "action_latency",
            CustomKind::ActionNoise => "action_noise",
            CustomKind::Backlash => "backlash",
            CustomKind::Gravity => "gravity",
            CustomKind::JointMargin => "joint_margin",
            CustomKind::TimeStep => "time_step",
        }
    }

    fn dim_count(&self) -> usize {
        match self {
            CustomKind::ActionDelay | CustomKind::ActionNoise => 3,
            CustomKind::TimeStep => 2,
            _ => 1,
        }
    }
}

/// Default values a custom randomizer transforms. Most kinds map scalar to
/// scalar; backlash carries its two slack parameters, gravity a 3-vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ParamValue<F> {
    Scalar(F),
    Pair(F, F),
    Vec3([F; 3]),
}

impl<F: Real> ParamValue<F> {
    pub fn scalar(&self) -> Option<F> {
        match self {
            ParamValue::Scalar(v) => Some(*v),
            _ => None,
        }
    }

    pub fn pair(&self) -> Option<(F, F)> {
        match self {
            ParamValue::Pair(a, b) => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn vec3(&self) -> Option<[F; 3]> {
        match self {
            ParamValue::Vec3(v) => Some(*v),
            _ => None,
        }
    }
}

/// A custom randomizer bound to parameter dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomRandomizerSpec<F> {
    pub target: String,
    pub kind: CustomKind<F>,
    /// Parameter dimension indices, in the order the formula uses them.
    pub dims: Vec<usize>,
}

/// Components a custom randomizer fixes for a whole episode.
#[derive(Debug, Clone, PartialEq)]
pub enum CustomEpisode<F> {
    Stateless,
    ActionDelay { n0: F },
    ActionNoise { n0: F, n1: F },
    Backlash { n_pos: F, n_neg: F },
    Gravity { offset: [F; 3] },
    JointLimits { n: F },
    JointMargin { n: F },
    Latency { steps: usize },
    TimeStep { kappa: F },
}

impl<F: Real> CustomRandomizerSpec<F> {
    pub fn new(
        target: impl Into<String>,
        kind: CustomKind<F>,
        dims: Vec<usize>,
    ) -> Result<Self, RandomizerError> {
        if let CustomKind::Friction { weight } = &kind {
            let w = weight.to_f64().unwrap_or(f64::NAN);
            if w != 1.0 && w != 2.0 {
                return Err(RandomizerError::InvalidFrictionWeight(w));
            }
        }
        let expected = kind.dim_count();
        if dims.len() != expected {
            return Err(RandomizerError::WrongDimCount {
                kind: kind.name(),
                expected,
                got: dims.len(),
            });
        }
        Ok(Self {
            target: target.into(),
            kind,
            dims,
        })
    }

    fn lam(&self, lambda: &[F], slot: usize) -> Result<F, RandomizerError> {
        let index = self.dims[slot];
        lambda
            .get(index)
            .copied()
            .ok_or(RandomizerError::DimOutOfRange {
                index,
                dims: lambda.len(),
            })
    }

    /// Sample the per-episode components for this randomizer.
    pub fn begin_episode<R: Rng + ?Sized>(
        &self,
        lambda: &[F],
        rng: &mut R,
    ) -> Result<CustomEpisode<F>, RandomizerError> {
        Ok(match &self.kind {
            CustomKind::Friction { .. } | CustomKind::CubeSize => CustomEpisode::Stateless,
            CustomKind::JointLimits => {
                let li = self.lam(lambda, 0)?;
                let std = (F::of(0.1) * g_shift(li.abs())).sqrt();
                CustomEpisode::JointLimits {
                    n: normal(rng, F::zero(), std),
                }
            }
            CustomKind::ActionDelay => {
                let lj = self.lam(lambda, 1)?;
                CustomEpisode::ActionDelay {
                    n0: normal(rng, F::one(), lj.abs()),
                }
            }
            CustomKind::ActionLatency => {
                let li = self.lam(lambda, 0)?;
                let hi = li.to_f64().unwrap_or(0.0).max(0.0).round_ties_even() as usize;
                CustomEpisode::Latency {
                    steps: rng.random_range(0..=hi),
                }
            }
            CustomKind::ActionNoise => {
                let li = self.lam(lambda, 0)?;
                let lj = self.lam(lambda, 1)?;
                CustomEpisode::ActionNoise {
                    n0: normal(rng, F::one(), g_shift(li.abs())),
                    n1: normal(rng, F::zero(), g_shift(lj.abs())),
                }
            }
            CustomKind::Backlash => {
                let li = self.lam(lambda, 0)?;
                let var = li * li;
                CustomEpisode::Backlash {
                    n_pos: normal(rng, F::one(), var.sqrt()),
                    n_neg: normal(rng, F::one(), var.sqrt()),
                }
            }
            CustomKind::Gravity => {
                let li = self.lam(lambda, 0)?;
                let u = F::unit_sphere(rng);
                let scale = g_shift(li);
                CustomEpisode::Gravity {
                    offset: [u[0] * scale, u[1] * scale, u[2] * scale],
                }
            }
            CustomKind::JointMargin => {
                let li = self.lam(lambda, 0)?;
                CustomEpisode::JointMargin {
                    n: uniform(rng, F::zero(), F::of(0.15) * g_shift(li)),
                }
            }
            CustomKind::TimeStep => CustomEpisode::TimeStep {
                kappa: uniform(rng, F::of(1250.0), F::of(10000.0)),
            },
        })
    }

    /// Apply the formula for one step. Per-episode components come from
    /// `episode`; per-step components are drawn from `rng`.
    pub fn apply<R: Rng + ?Sized>(
        &self,
        x0: &ParamValue<F>,
        episode: &CustomEpisode<F>,
        lambda: &[F],
        rng: &mut R,
    ) -> Result<ParamValue<F>, RandomizerError> {
        let scalar = |x0: &ParamValue<F>| {
            x0.scalar().ok_or(RandomizerError::WrongValueShape {
                kind: self.kind.name(),
                expected: "scalar",
            })
        };
        match (&self.kind, episode) {
            (CustomKind::Friction { weight }, CustomEpisode::Stateless) => {
                let li = self.lam(lambda, 0)?;
                Ok(ParamValue::Scalar(scalar(x0)? * (*weight * li).exp()))
            }
            (CustomKind::CubeSize, CustomEpisode::Stateless) => {
                let li = self.lam(lambda, 0)?;
                Ok(ParamValue::Scalar(scalar(x0)? * (F::of(0.15) * li).exp()))
            }
            (CustomKind::JointLimits, CustomEpisode::JointLimits { n }) => {
                Ok(ParamValue::Scalar(scalar(x0)? + *n))
            }
            (CustomKind::ActionDelay, CustomEpisode::ActionDelay { n0 }) => {
                let li = self.lam(lambda, 0)?;
                let lk = self.lam(lambda, 2)?;
                let n1 = normal(rng, F::one(), lk.abs());
                Ok(ParamValue::Scalar(li.abs() * *n0 * n1))
            }
            (CustomKind::ActionLatency, CustomEpisode::Latency { steps }) => {
                Ok(ParamValue::Scalar(F::of(*steps as f64)))
            }
            (CustomKind::ActionNoise, CustomEpisode::ActionNoise { n0, n1 }) => {
                let lk = self.lam(lambda, 2)?;
                let n2 = normal(rng, F::zero(), g_shift(lk.abs()));
                Ok(ParamValue::Scalar(scalar(x0)? * *n0 + *n1 + n2))
            }
            (CustomKind::Backlash, CustomEpisode::Backlash { n_pos, n_neg }) => {
                let (d_pos0, d_neg0) = x0.pair().ok_or(RandomizerError::WrongValueShape {
                    kind: self.kind.name(),
                    expected: "pair",
                })?;
                Ok(ParamValue::Pair(
                    (*n_pos * d_pos0).exp(),
                    (*n_neg * d_neg0).exp(),
                ))
            }
            (CustomKind::Gravity, CustomEpisode::Gravity { offset }) => {
                let g0 = x0.vec3().ok_or(RandomizerError::WrongValueShape {
                    kind: self.kind.name(),
                    expected: "vec3",
                })?;
                Ok(ParamValue::Vec3([
                    g0[0] + offset[0],
                    g0[1] + offset[1],
                    g0[2] + offset[2],
                ]))
            }
            (CustomKind::JointMargin, CustomEpisode::JointMargin { n }) => {
                Ok(ParamValue::Scalar(scalar(x0)? * *n))
            }
            (CustomKind::TimeStep, CustomEpisode::TimeStep { kappa }) => {
                let li = self.lam(lambda, 0)?;
                let lj = self.lam(lambda, 1)?;
                // Exp with mean 1/kappa
                let n = F::standard_exp(rng) / *kappa;
                Ok(ParamValue::Scalar(
                    (F::of(0.6) * li).exp() * (scalar(x0)? + n * lj.exp()),
                ))
            }
            _ => Err(RandomizerError::DrawMismatch(self.kind.name())),
        }
    }

    /// One-shot convenience: draw the episode components and apply once.
    pub fn apply_once<R: Rng + ?Sized>(
        &self,
        x0: &ParamValue<F>,
        lambda: &[F],
        rng: &mut R,
    ) -> Result<ParamValue<F>, RandomizerError> {
        let ep = self.begin_episode(lambda, rng)?;
        self.apply(x0, &ep, lambda, rng)
    }
}

/// Observation noise: `o = o0·n0 + n1 + n2` per element, with `n0, n1` fixed
/// for a whole episode and `n2` redrawn each step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservationNoiseSpec<F> {
    /// Per-element defaults for the correlated multiplicative std.
    pub a0: Vec<F>,
    /// Per-element defaults for the correlated additive std.
    pub b0: Vec<F>,
    /// Per-element defaults for the uncorrelated additive std.
    pub c0: Vec<F>,
    /// Dimension index of the correlated-noise parameter λi.
    pub dim_corr: usize,
    /// Dimension index of the uncorrelated-noise parameter λj.
    pub dim_uncorr: usize,
}

/// Per-episode draws of the correlated observation-noise components.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationNoiseEpisode<F> {
    pub n0: Vec<F>,
    pub n1: Vec<F>,
}

impl<F: Real> ObservationNoiseSpec<F> {
    /// Same default std everywhere; 0.01 is the conventional element default.
    pub fn uniform(obs_dim: usize, default_std: F, dim_corr: usize, dim_uncorr: usize) -> Self {
        Self {
            a0: vec![default_std; obs_dim],
            b0: vec![default_std; obs_dim],
            c0: vec![default_std; obs_dim],
            dim_corr,
            dim_uncorr,
        }
    }

    pub fn obs_dim(&self) -> usize {
        self.a0.len()
    }

    fn lam(&self, lambda: &[F], index: usize) -> Result<F, RandomizerError> {
        lambda
            .get(index)
            .copied()
            .ok_or(RandomizerError::DimOutOfRange {
                index,
                dims: lambda.len(),
            })
    }

    pub fn begin_episode<R: Rng + ?Sized>(
        &self,
        lambda: &[F],
        rng: &mut R,
    ) -> Result<ObservationNoiseEpisode<F>, RandomizerError> {
        let li = self.lam(lambda, self.dim_corr)?;
        let scale = li.exp();
        let n0 = self
            .a0
            .iter()
            .map(|&a| normal(rng, F::one(), a * scale))
            .collect();
        let n1 = self
            .b0
            .iter()
            .map(|&b| normal(rng, F::zero(), b * scale))
            .collect();
        Ok(ObservationNoiseEpisode { n0, n1 })
    }

    pub fn apply<R: Rng + ?Sized>(
        &self,
        o0: &[F],
        episode: &ObservationNoiseEpisode<F>,
        lambda: &[F],
        rng: &mut R,
    ) -> Result<Vec<F>, RandomizerError> {
        let lj = self.lam(lambda, self.dim_uncorr)?;
        let scale = lj.exp();
        Ok(o0
            .iter()
            .zip(episode.n0.iter().zip(&episode.n1))
            .zip(&self.c0)
            .map(|((&o, (&n0, &n1)), &c)| {
                let n2 = normal(rng, F::zero(), c * scale);
                o * n0 + n1 + n2
            })
            .collect())
    }
}
