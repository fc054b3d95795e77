//! Named families, the partition witness construction and closed-form bounds.

mod bounds;
mod families;
mod katona;
mod partition;

pub use bounds::{
    binomial, capped_bound, half_threshold, power_set_bound, regime_hypothesis, regime_name,
    CapRegime,
};
pub use families::{
    ahlswede_khachatrian_family, is_twin_2_star, near_equal_parts, nonintersecting_star_family,
    small_kernel_family, star, transversal_family, twin_2_star, two_block_family,
};
pub use katona::{shadow_bound_check, ShadowBoundCheck};
pub use partition::{
    min_ground_size, partition_threshold, partition_witness,
    threshold_family, threshold_family_has_empty_d_intersection, PartitionSpec,
};
