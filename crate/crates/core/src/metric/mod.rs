//! Finite metric spaces, covers, horizons and the cover transforms used
//! throughout the crate.
//!
//! Balls are open: `B(x, r) = { y : d(x, y) < r }`.

mod cover;
mod extended;
mod space;

pub use cover::{
    family_diameter, lebesgue_number_of_family, shrink_set, Cover, CoverElement, Horizon,
};
pub use extended::ExtendedReal;
pub use space::{coarse_disjoint_union, FiniteMetricSpace, DEFAULT_TOL};
