//! Scalar abstraction for the numeric core.
//!
//! Everything in the math layers (ADR distribution, randomizer formulas, cube
//! orientation/angle tracking) is generic over [`Real`] so the same code runs
//! at `f32` and `f64`. Concrete `f64` aliases live at the crate root.

use rand::distr::uniform::SampleUniform;
use rand::Rng;

/// Floating-point scalar used by the numeric core (`f32` or `f64`).
///
/// Besides the usual float arithmetic this bundles the sampling primitives we
/// need, so generic code never has to name `rand_distr` types directly.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::NumAssign
    + num_traits::FromPrimitive
    + SampleUniform
    + serde::Serialize
    + serde::de::DeserializeOwned
    + std::fmt::Debug
    + std::fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Shorthand for converting an `f64` literal into this scalar type.
    fn of(x: f64) -> Self {
        num_traits::FromPrimitive::from_f64(x).expect("literal representable in scalar type")
    }

    /// Draw from the standard normal distribution N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Draw from the standard exponential distribution Exp(1).
    fn standard_exp<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Draw a point uniformly on the surface of the unit sphere.
    fn unit_sphere<R: Rng + ?Sized>(rng: &mut R) -> [Self; 3];
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.sample(rand_distr::StandardNormal)
            }

            fn standard_exp<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.sample(rand_distr::Exp1)
            }

            fn unit_sphere<R: Rng + ?Sized>(rng: &mut R) -> [Self; 3] {
                rng.sample(rand_distr::UnitSphere)
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// N(mean, std²) sample; exact at `std == 0` (returns `mean`).
pub fn normal<F: Real, R: Rng + ?Sized>(rng: &mut R, mean: F, std: F) -> F {
    mean + std * F::standard_normal(rng)
}

/// U[lo, hi] sample, boundary values inclusive; exact at `lo == hi`.
pub fn uniform<F: Real, R: Rng + ?Sized>(rng: &mut R, lo: F, hi: F) -> F {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}
