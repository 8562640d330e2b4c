use serde::Serialize;

use crate::constructions::ratio::{check_cover, horizon_ratio, point_horizon_ratio, AmenabilityReport};
use crate::error::{Error, Result};
use crate::metric::{Cover, ExtendedReal, FiniteMetricSpace};
use crate::pou::{
    barycentric_from_carriers, barycentric_from_cover_indexed, lebesgue, lipschitz_number,
    PartitionOfUnity,
};

/// Measurements taken while converting an amenable cover to a partition.
#[derive(Debug, Clone, Serialize)]
pub struct CoverToPouReport {
    pub r: f64,
    pub mu: f64,
    /// Lebesgue number of the input cover.
    pub cover_lebesgue: ExtendedReal,
    /// Minimum `(r, 2r)` horizon ratio of the input cover.
    pub min_ratio: f64,
    /// Lebesgue number of the output partition.
    pub lebesgue: ExtendedReal,
    /// Largest `|A(x) \ A(y)| / |A(x) ∩ A(y)|` over `d(x, y) < r`.
    pub max_excess_ratio: f64,
    /// Largest `‖g(x) − g(y)‖` over `d(x, y) < r`.
    pub max_local_distance: f64,
    pub lipschitz_number: f64,
    /// `Some(true)` when `(ε, ε)`-Lipschitz with Lebesgue number above `1/ε`
    /// was certified for the supplied `ε`; `None` if no `ε` was given or the
    /// parameters fall outside `r > max(1/ε, (2−ε)/ε)`, `μ ≤ ε/4`.
    pub strong_property_a: Option<bool>,
}

/// Turns a cover with good `(r, 2r)` horizon ratios into the barycentric
/// partition `g(x) = χ_{A(x)} / |A(x)|`, `A(x) = hor(B(x, 2r), U)`.
///
/// Preconditions: `Leb(U) ≥ 4r` and every `(r, 2r)` ratio exceeds
/// `1/(1 + μ)`. Verified: `Leb(g) ≥ 2r`, and for `d(x, y) < r` both
/// `|A(x) \ A(y)| < μ·|A(x) ∩ A(y)|` and `‖g(x) − g(y)‖ < 4μ`.
pub fn amenable_cover_to_pou(
    space: &FiniteMetricSpace,
    cover: &Cover,
    r: f64,
    mu: f64,
    eps: Option<f64>,
) -> Result<(PartitionOfUnity<String>, CoverToPouReport)> {
    check_cover(space, cover)?;
    if r <= 0.0 || mu <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "r and μ must be positive, got r = {r}, μ = {mu}"
        )));
    }
    let cover_leb = cover.lebesgue_number(space);
    if !space.le(4.0 * r, cover_leb.value()) {
        return Err(Error::Precondition(format!(
            "cover Lebesgue number {cover_leb} is below 4r = {}",
            4.0 * r
        )));
    }
    let ratios = horizon_ratio(space, cover, r, 2.0 * r)?;
    let need = 1.0 / (1.0 + mu);
    if !(ratios.min_ratio > need) {
        return Err(Error::Precondition(format!(
            "(r, 2r) horizon ratio {} at point {} does not exceed 1/(1+μ) = {need}",
            ratios.min_ratio, ratios.worst_point
        )));
    }

    let horizons: Vec<_> = (0..space.len())
        .map(|x| cover.ball_horizon(space, x, 2.0 * r))
        .collect();
    let g = barycentric_from_carriers(
        horizons
            .iter()
            .map(|h| h.indices.iter().map(|&s| cover.label(s).to_string()).collect())
            .collect(),
    )?;

    let leb = lebesgue(space, &g);
    if !space.le(2.0 * r, leb.value()) {
        return Err(Error::Inconsistency(format!(
            "partition Lebesgue number {leb} is below 2r = {}",
            2.0 * r
        )));
    }
    let mut max_excess_ratio = 0.0f64;
    let mut max_local = 0.0f64;
    for x in 0..space.len() {
        for y in 0..space.len() {
            if x == y || !space.lt(space.d(x, y), r) {
                continue;
            }
            let (a, b) = (&horizons[x].indices, &horizons[y].indices);
            let common = a.iter().filter(|s| b.binary_search(s).is_ok()).count();
            let only_a = a.len() - common;
            if !((only_a as f64) < mu * common as f64) {
                return Err(Error::Inconsistency(format!(
                    "|A({x}) \\ A({y})| = {only_a} is not below μ·|A({x}) ∩ A({y})| = {}",
                    mu * common as f64
                )));
            }
            max_excess_ratio = max_excess_ratio.max(only_a as f64 / common as f64);
            let gap = g.distance(x, y);
            if !(gap < 4.0 * mu) {
                return Err(Error::Inconsistency(format!(
                    "‖g({x}) − g({y})‖ = {gap} is not below 4μ = {}",
                    4.0 * mu
                )));
            }
            max_local = max_local.max(gap);
        }
    }
    let lip = lipschitz_number(space, &g);
    let strong = match eps {
        Some(e) if e > 0.0 && e < 2.0 && r > (1.0 / e).max((2.0 - e) / e) && mu <= e / 4.0 => {
            let ok = space.le(lip, e) && leb.value() > 1.0 / e;
            if !ok {
                return Err(Error::Inconsistency(format!(
                    "certified parameters but Lipschitz number {lip} or Lebesgue number {leb} misses ε = {e}"
                )));
            }
            Some(true)
        }
        _ => None,
    };
    Ok((
        g,
        CoverToPouReport {
            r,
            mu,
            cover_lebesgue: cover_leb,
            min_ratio: ratios.min_ratio,
            lebesgue: leb,
            max_excess_ratio,
            max_local_distance: max_local,
            lipschitz_number: lip,
            strong_property_a: strong,
        },
    ))
}

/// `(1 + M(s+1)μ / (1 − (s+1)μ))⁻¹`.
pub fn ratio_bound(s: f64, mu: f64, max_ball: usize) -> f64 {
    let t = (s + 1.0) * mu;
    1.0 / (1.0 + max_ball as f64 * t / (1.0 - t))
}

/// Lower bound on point-horizon ratios from a `(μ, μ)`-Lipschitz induced
/// partition. Checks that every `B(x, s)` has at most `M` points, that the
/// induced barycentric partition `p_U` has Lipschitz number at most `μ` and
/// that `(s+1)μ < 1`; then verifies
/// `|hor({x})| / |hor(B(x, s))| ≥ bound` at every point.
pub fn ratio_bound_from_pou(
    space: &FiniteMetricSpace,
    cover: &Cover,
    s: f64,
    mu: f64,
    max_ball: usize,
) -> Result<(f64, AmenabilityReport)> {
    check_cover(space, cover)?;
    if s <= 0.0 || mu < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "need s > 0 and μ ≥ 0, got s = {s}, μ = {mu}"
        )));
    }
    if (s + 1.0) * mu >= 1.0 {
        return Err(Error::Precondition(format!(
            "(s+1)μ = {} is not below 1",
            (s + 1.0) * mu
        )));
    }
    for x in 0..space.len() {
        let size = space.ball_unchecked(x, s).len();
        if size > max_ball {
            return Err(Error::Precondition(format!(
                "B({x}, {s}) has {size} points, more than M = {max_ball}"
            )));
        }
    }
    let p = barycentric_from_cover_indexed(cover);
    let measured = lipschitz_number(space, &p);
    if !space.le(measured, mu) {
        return Err(Error::Precondition(format!(
            "induced partition has Lipschitz number {measured} > μ = {mu}"
        )));
    }
    let bound = ratio_bound(s, mu, max_ball);
    let report = point_horizon_ratio(space, cover, s)?;
    if report.min_ratio < bound - space.tol() {
        return Err(Error::Inconsistency(format!(
            "point-horizon ratio {} at point {} is below the bound {bound}",
            report.min_ratio, report.worst_point
        )));
    }
    Ok((bound, report))
}
