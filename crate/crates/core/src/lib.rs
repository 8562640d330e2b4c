//! Coarse geometry on finite metric spaces.
//!
//! The crate builds and measures covers, horizons and `l1` partitions of
//! unity, runs the standard constructions that turn one kind of amenability
//! witness into another, and checks the combinatorial obstructions
//! (expanders, halos, girth) that rule coarse amenability out.
//!
//! Every construction re-verifies its guaranteed postconditions at runtime
//! and reports a failure as [`Error::Inconsistency`] rather than trusting
//! the theory.

// `!(a < b)` is deliberate: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod measures;
pub mod metric;
pub mod pou;

pub use error::{Error, Result};
