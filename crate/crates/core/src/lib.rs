//! Desk-scale automatic domain randomization engine.
//!
//! The crate covers the full training-side loop: an expanding distribution
//! over randomized environments ([`adr`]), the catalog of noise models that
//! map sampled parameters onto environment physics ([`randomizers`]), a
//! Rubik's-cube state machine with goal generation and face-angle tracking
//! ([`cube`]), two kinematic environments that host the randomizer pipeline
//! ([`envs`]), and a small derivative-free learner ([`learner`]).
//!
//! The numeric core is generic over the scalar type via [`real::Real`];
//! concrete `f64` aliases are exported below.

pub mod adr;
pub mod randomizers;
pub mod real;

pub use real::Real;

/// `f64` aliases for the generic core types.
pub type AdrConfig64 = adr::AdrConfig<f64>;
pub type AdrDistribution64 = adr::AdrDistribution<f64>;
pub type BoundaryUpdate64 = adr::BoundaryUpdate<f64>;
pub type PerformanceBuffers64 = adr::PerformanceBuffers<f64>;
pub type RandomizationDimension64 = adr::RandomizationDimension<f64>;
