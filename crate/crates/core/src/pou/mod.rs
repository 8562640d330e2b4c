//! Partitions of unity in `l1`: sparse vectors, their measurements, and the
//! constructions that produce barycentric partitions.

mod expansion;
mod levin;
mod partition;
mod property_a;
mod simplex;
mod vector;

pub use expansion::{barycentric_expansion, expansion_projection, integer_counts, relabel_product};
pub use levin::{levin_pou, LevinOutput};
pub use partition::{
    barycentric_from_carriers, barycentric_from_cover, barycentric_from_cover_indexed,
    coboundedness, lebesgue, lipschitz_number, normalize, pou_metrics, variation,
    BarycentricFlag, PartitionOfUnity, PoUMetrics,
};
pub use property_a::{
    check_witness, pou_to_witness, witness_lipschitz_level, witness_to_pou, PropertyAWitness,
    WitnessCheck,
};
pub use simplex::{simplex_bounds, SimplexBounds};
pub use vector::{Label, SparseL1Vector};
