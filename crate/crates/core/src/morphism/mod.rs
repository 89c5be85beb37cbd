//! Morphisms between curves, pullbacks, weights and localization at points.

mod local;
mod map;
mod weight;

pub use local::{localization_surjectivity, weighted_local_image, LocalImage, Localization, SurjectivityReport};
pub use map::{EdgeTarget, Morphism, MorphismReport};
pub use weight::{weight_check, weight_from_generators, WeightReport};
