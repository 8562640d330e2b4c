use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{Cover, FiniteMetricSpace};

/// Per-point horizon ratios `|hor(B(x, r))| / |hor(B(x, s))|` and their
/// minimum. `r = 0` stands for the point horizon `hor({x})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmenabilityReport {
    pub r: f64,
    pub s: f64,
    pub min_ratio: f64,
    pub worst_point: usize,
    /// `(|inner horizon|, |outer horizon|)` per point.
    pub horizon_sizes: Vec<(usize, usize)>,
}

impl AmenabilityReport {
    /// Whether the cover witnesses coarse amenability at `(r, s, ε)`,
    /// i.e. every ratio exceeds `1 − ε`.
    pub fn certifies(&self, eps: f64) -> bool {
        self.min_ratio > 1.0 - eps
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.horizon_sizes
            .iter()
            .map(|&(a, b)| a as f64 / b as f64)
            .collect()
    }
}

fn build_report(
    space: &FiniteMetricSpace,
    cover: &Cover,
    inner: Option<f64>,
    outer: f64,
) -> AmenabilityReport {
    let sizes: Vec<(usize, usize)> = (0..space.len())
        .map(|x| {
            let a = match inner {
                Some(r) => cover.ball_horizon(space, x, r).len(),
                None => cover.memberships(x).len(),
            };
            (a, cover.ball_horizon(space, x, outer).len())
        })
        .collect();
    let (worst_point, min_ratio) = sizes
        .iter()
        .enumerate()
        .map(|(x, &(a, b))| (x, a as f64 / b as f64))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    AmenabilityReport {
        r: inner.unwrap_or(0.0),
        s: outer,
        min_ratio,
        worst_point,
        horizon_sizes: sizes,
    }
}

/// Exact `(r, s)` horizon ratios of `cover`.
pub fn horizon_ratio(
    space: &FiniteMetricSpace,
    cover: &Cover,
    r: f64,
    s: f64,
) -> Result<AmenabilityReport> {
    if !(r > 0.0 && s > r) {
        return Err(Error::InvalidArgument(format!(
            "need s > r > 0, got r = {r}, s = {s}"
        )));
    }
    check_cover(space, cover)?;
    Ok(build_report(space, cover, Some(r), s))
}

/// Ratios `|hor({x})| / |hor(B(x, s))|`.
pub fn point_horizon_ratio(
    space: &FiniteMetricSpace,
    cover: &Cover,
    s: f64,
) -> Result<AmenabilityReport> {
    if s <= 0.0 {
        return Err(Error::InvalidArgument(format!("need s > 0, got {s}")));
    }
    check_cover(space, cover)?;
    Ok(build_report(space, cover, None, s))
}

pub(crate) fn check_cover(space: &FiniteMetricSpace, cover: &Cover) -> Result<()> {
    if cover.space_len() == space.len() {
        Ok(())
    } else {
        Err(Error::InvalidCover(format!(
            "cover is over {} points but the space has {}",
            cover.space_len(),
            space.len()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_space_cover_has_ratio_one() {
        let x = FiniteMetricSpace::unit_line(5);
        let rep = horizon_ratio(&x, &Cover::whole_space(&x), 1.0, 3.0).unwrap();
        assert_eq!(rep.min_ratio, 1.0);
        assert!(rep.certifies(0.01));
    }

    #[test]
    fn singleton_cover_on_unit_line() {
        let x = FiniteMetricSpace::unit_line(4);
        let rep = horizon_ratio(&x, &Cover::singletons(&x), 1.0, 2.0).unwrap();
        assert!((rep.min_ratio - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(rep.worst_point, 1);
        assert_eq!(rep.horizon_sizes[1], (1, 3));
        assert_eq!(rep.horizon_sizes[0], (1, 2));
    }

    #[test]
    fn rejects_bad_scales() {
        let x = FiniteMetricSpace::unit_line(2);
        assert!(horizon_ratio(&x, &Cover::whole_space(&x), 2.0, 1.0).is_err());
        assert!(horizon_ratio(&x, &Cover::whole_space(&x), 0.0, 1.0).is_err());
    }
}
