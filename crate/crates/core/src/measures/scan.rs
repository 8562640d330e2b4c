use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{r_boundary, ProbabilityMeasure};
use crate::metric::{Cover, FiniteMetricSpace};

/// A cover element with small relative boundary mass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub index: usize,
    pub label: String,
    pub set: Vec<usize>,
    pub mass: f64,
    pub boundary_mass: f64,
    /// Smallest `|hor({x})| / |hor(B(x, R))|` over the support.
    pub min_ratio: f64,
}

/// `(Σ_s w(∂_R U_s), Σ_x w(x)·(|hor(B(x, R))| − |hor({x})|))` for arbitrary
/// nonnegative weights. The two sums count the same pairs; with integer
/// weights they agree exactly.
pub fn boundary_identity(space: &FiniteMetricSpace, weights: &[f64], cover: &Cover, r: f64) -> (f64, f64) {
    let lhs = (0..cover.len())
        .map(|s| {
            r_boundary(space, cover.element(s), r)
                .iter()
                .map(|&x| weights[x])
                .sum::<f64>()
        })
        .sum();
    let rhs = (0..space.len())
        .map(|x| {
            let extra = cover.ball_horizon(space, x, r).len() - cover.memberships(x).len();
            weights[x] * extra as f64
        })
        .sum();
    (lhs, rhs)
}

fn min_support_ratio(space: &FiniteMetricSpace, measure: &ProbabilityMeasure, cover: &Cover, r: f64) -> (f64, usize) {
    measure
        .support()
        .into_iter()
        .map(|x| {
            let ratio = cover.memberships(x).len() as f64 / cover.ball_horizon(space, x, r).len() as f64;
            (ratio, x)
        })
        .fold((f64::INFINITY, 0), |best, cur| if cur.0 < best.0 { cur } else { best })
}

/// Finds a cover element `U_t` with `μ(∂_R U_t) < ε·μ(U_t)`.
///
/// Requires `|hor({x})| / |hor(B(x, R))| > 1/(1 + ε)` at every support
/// point, under which such an element must exist. Elements are scanned in
/// label order and the first hit is returned.
pub fn scan_boundary_set(
    space: &FiniteMetricSpace,
    measure: &ProbabilityMeasure,
    cover: &Cover,
    r: f64,
    eps: f64,
) -> Result<ScanResult> {
    measure.check_space(space)?;
    if cover.space_len() != space.len() {
        return Err(Error::InvalidCover(format!(
            "cover is over {} points but the space has {}",
            cover.space_len(),
            space.len()
        )));
    }
    if r <= 0.0 || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "R and ε must be positive, got R = {r}, ε = {eps}"
        )));
    }
    let (min_ratio, worst) = min_support_ratio(space, measure, cover, r);
    let need = 1.0 / (1.0 + eps);
    if !(min_ratio > need) {
        return Err(Error::Precondition(format!(
            "horizon ratio {min_ratio} at point {worst} does not exceed 1/(1+ε) = {need}"
        )));
    }
    let mut order: Vec<usize> = (0..cover.len()).collect();
    order.sort_by(|&a, &b| cover.label(a).cmp(cover.label(b)));
    for s in order {
        let set = cover.element(s);
        let mass = measure.mass(set);
        let boundary_mass = measure.mass(&r_boundary(space, set, r));
        if boundary_mass < eps * mass {
            return Ok(ScanResult {
                index: s,
                label: cover.label(s).to_string(),
                set: set.to_vec(),
                mass,
                boundary_mass,
                min_ratio,
            });
        }
    }
    Err(Error::Inconsistency(format!(
        "ratio hypothesis holds (min {min_ratio}) but no element has a light {r}-boundary"
    )))
}
