//! Amenability-side constructions: horizon ratios, averaging, integer
//! rounding, and the passage from amenable covers to partitions of unity.

mod averaging;
mod cover_to_pou;
mod ratio;
mod rounding;

pub use averaging::{average_pou, AveragingReport};
pub use cover_to_pou::{amenable_cover_to_pou, ratio_bound, ratio_bound_from_pou, CoverToPouReport};
pub use ratio::{horizon_ratio, point_horizon_ratio, AmenabilityReport};
pub use rounding::{round_to_barycentric, round_with_multiplier, RoundingOutput, RoundingParams};
