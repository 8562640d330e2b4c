//! Measured procedures: `R`-boundaries, small-boundary witnesses, and the
//! greedy sparsification construction.

mod measure;
mod msp;
mod scan;

pub use measure::{r_boundary, r_boundary_with, ula_witness_check, DisjointFamily, ProbabilityMeasure};
pub use msp::{msp_eps_limit, msp_greedy, msp_to_ula, BruteForceFinder, CoverFinder, MspResult, SetFinder};
pub use scan::{boundary_identity, scan_boundary_set, ScanResult};
