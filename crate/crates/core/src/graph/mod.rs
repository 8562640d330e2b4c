//! Graphs as metric spaces: Cheeger constants, girth, halos, the
//! double-counting obstruction, group products and Følner sets.

mod cheeger;
#[allow(clippy::module_inception)]
mod graph;
mod group;
mod halo;

pub use cheeger::{
    cheeger_constant, cheeger_constant_with_cap, cheeger_sweep, expander_check, CheegerResult,
    CHEEGER_EXACT_CAP,
};
pub use graph::Graph;
pub use group::{
    cayley_graph, folner_analysis, product_group_space, product_halo_claim_check, FiniteGroup,
    FolnerReport, Group, ProductGroup, PRODUCT_VERTEX_CAP,
};
pub use halo::{
    double_counting_check, double_counting_on_space, expander_light_check, girth_halo_check, halo,
    halo_ratio_search, DoubleCountReport, ExpanderLightReport, HaloClaim, HaloSearch,
    HALO_EXHAUSTIVE_CAP,
};
