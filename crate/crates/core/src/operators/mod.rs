//! Variation operators and weight-vector machinery.

mod variation;
mod weights;

pub use variation::{polynomial_mutation, sbx_crossover, VariationConfig};
pub use weights::{
    associate_subregions, das_dennis_weights, nearest_ray_index, normalize_objectives, perpendicular_distance,
    WeightVectorSet,
};
