use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::measure::set_distance;
use crate::measures::{r_boundary, scan_boundary_set, DisjointFamily, ProbabilityMeasure};
use crate::metric::{Cover, FiniteMetricSpace};

/// Supplies small-boundary sets to [`msp_greedy`].
///
/// Given a probability measure supported in `domain`, return a set of
/// diameter at most `S` with `μ(∂_R Z) < ε·μ(Z)`.
pub trait SetFinder {
    fn find(
        &mut self,
        space: &FiniteMetricSpace,
        measure: &ProbabilityMeasure,
        domain: &[usize],
        r: f64,
        eps: f64,
    ) -> Result<Vec<usize>>;
}

/// Scans a fixed cover with [`scan_boundary_set`].
#[derive(Debug, Clone)]
pub struct CoverFinder {
    pub cover: Cover,
}

impl SetFinder for CoverFinder {
    fn find(
        &mut self,
        space: &FiniteMetricSpace,
        measure: &ProbabilityMeasure,
        _domain: &[usize],
        r: f64,
        eps: f64,
    ) -> Result<Vec<usize>> {
        Ok(scan_boundary_set(space, measure, &self.cover, r, eps)?.set)
    }
}

/// Exhaustive search over subsets of the domain with diameter at most `S`,
/// smallest sets first. Oracle for tiny instances.
#[derive(Debug, Clone)]
pub struct BruteForceFinder {
    pub s_bound: f64,
    /// Largest domain searched.
    pub max_domain: usize,
}

impl SetFinder for BruteForceFinder {
    fn find(
        &mut self,
        space: &FiniteMetricSpace,
        measure: &ProbabilityMeasure,
        domain: &[usize],
        r: f64,
        eps: f64,
    ) -> Result<Vec<usize>> {
        if domain.len() > self.max_domain {
            return Err(Error::Infeasible(format!(
                "domain of {} points exceeds the brute-force cap {}",
                domain.len(),
                self.max_domain
            )));
        }
        for k in 1..=domain.len() {
            for set in domain.iter().copied().combinations(k) {
                if space.le(space.set_diameter(&set), self.s_bound)
                    && measure.mass(&r_boundary(space, &set, r)) < eps * measure.mass(&set)
                {
                    return Ok(set);
                }
            }
        }
        Err(Error::Precondition(format!(
            "no subset of diameter ≤ {} has a relative {r}-boundary below {eps}",
            self.s_bound
        )))
    }
}

/// A verified sparsification family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MspResult {
    pub family: DisjointFamily,
    pub total_mass: f64,
    /// Finder tolerance used: `(1 + c) / (2(1 + ε)) > c`.
    pub eps: f64,
    /// The finite set `Y` of heavy points the construction exhausted.
    pub support_set: Vec<usize>,
}

/// Largest `ε` admissible for `c`, exclusive: `(1 − c) / (2c)`.
pub fn msp_eps_limit(c: f64) -> f64 {
    (1.0 - c) / (2.0 * c)
}

/// Builds an `R`-disjoint family of sets of diameter `≤ S` carrying more
/// than `c` of the mass.
///
/// `Y` collects points by descending weight (ties by index) until its
/// mass reaches `(1 + c)/2`. Each round asks the finder for a set `Z_i`
/// for `μ` restricted to the remaining `Y_{i−1}`, keeps `Z_i ∩ Y_{i−1}`,
/// and removes `B(Z_i, R)` from `Y_{i−1}`. `ε` defaults to half of
/// [`msp_eps_limit`].
pub fn msp_greedy(
    space: &FiniteMetricSpace,
    measure: &ProbabilityMeasure,
    r: f64,
    s_bound: f64,
    finder: &mut dyn SetFinder,
    c: f64,
    eps: Option<f64>,
) -> Result<MspResult> {
    measure.check_space(space)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidArgument(format!("c must lie in (0, 1), got {c}")));
    }
    if r <= 0.0 {
        return Err(Error::InvalidArgument(format!("R must be positive, got {r}")));
    }
    let eps = eps.unwrap_or(msp_eps_limit(c) / 2.0);
    if !(eps > 0.0 && (1.0 + c) / (2.0 * (1.0 + eps)) > c) {
        return Err(Error::Precondition(format!(
            "ε = {eps} violates (1+c)/(2(1+ε)) > c; need ε < {}",
            msp_eps_limit(c)
        )));
    }
    let mut by_weight = measure.support();
    by_weight.sort_by(|&a, &b| measure.weight(b).total_cmp(&measure.weight(a)).then(a.cmp(&b)));
    let target = (1.0 + c) / 2.0;
    let mut y = Vec::new();
    let mut acc = 0.0;
    for x in by_weight {
        if acc >= target - 1e-12 {
            break;
        }
        y.push(x);
        acc += measure.weight(x);
    }
    y.sort_unstable();
    let support_set = y.clone();

    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut remaining = y;
    let mut iteration = 0;
    while !remaining.is_empty() && measure.mass(&remaining) > 0.0 {
        iteration += 1;
        let local = measure.restricted(&remaining)?;
        let wrap = |e: Error| Error::FinderFailed { iteration, source: Box::new(e) };
        let found = finder.find(space, &local, &remaining, r, eps).map_err(wrap)?;
        space.check_points(&found).map_err(wrap)?;
        let z: Vec<usize> = found.into_iter().filter(|x| remaining.binary_search(x).is_ok()).sorted().dedup().collect();
        let z_mass = local.mass(&z);
        let rel_boundary: Vec<usize> = r_boundary(space, &z, r)
            .into_iter()
            .filter(|x| remaining.binary_search(x).is_ok())
            .collect();
        if z.is_empty() || !(local.mass(&rel_boundary) < eps * z_mass) {
            return Err(wrap(Error::Precondition(format!(
                "finder set has relative boundary mass {} not below ε·{z_mass}",
                local.mass(&rel_boundary)
            ))));
        }
        if !space.le(space.set_diameter(&z), s_bound) {
            return Err(wrap(Error::Precondition(format!(
                "finder set has diameter {} > S = {s_bound}",
                space.set_diameter(&z)
            ))));
        }
        remaining.retain(|&x| z.binary_search(&x).is_err() && rel_boundary.binary_search(&x).is_err());
        sets.push(z);
    }
    let family = DisjointFamily { sets, r };
    family.validate(space).map_err(|e| Error::Inconsistency(e.to_string()))?;
    let total_mass = family.total_mass(measure);
    if !(total_mass > c) {
        return Err(Error::Inconsistency(format!(
            "family carries mass {total_mass}, not above c = {c}"
        )));
    }
    Ok(MspResult {
        family,
        total_mass,
        eps,
        support_set,
    })
}

/// Picks the first member `Z_j` of a `2R`-disjoint family with
/// `μ(∂_R Z_j) < ε·μ(Z_j)`. Requires total mass above
/// `max(1 − ε/2, 1/2)`, under which such a member exists.
pub fn msp_to_ula(
    space: &FiniteMetricSpace,
    measure: &ProbabilityMeasure,
    family: &DisjointFamily,
    r: f64,
    eps: f64,
) -> Result<(usize, Vec<usize>)> {
    measure.check_space(space)?;
    for (i, s) in family.sets.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::InvalidArgument(format!("family member {i} is empty")));
        }
        space.check_points(s)?;
    }
    for i in 0..family.sets.len() {
        for j in i + 1..family.sets.len() {
            let gap = set_distance(space, &family.sets[i], &family.sets[j]);
            if space.lt(gap, 2.0 * r) {
                return Err(Error::Precondition(format!(
                    "members {i} and {j} are at distance {gap} < 2R = {}",
                    2.0 * r
                )));
            }
        }
    }
    let total = family.total_mass(measure);
    let need = (1.0 - eps / 2.0).max(0.5);
    if !(total > need) {
        return Err(Error::Precondition(format!(
            "family mass {total} does not exceed max(1 − ε/2, 1/2) = {need}"
        )));
    }
    for (j, z) in family.sets.iter().enumerate() {
        if measure.mass(&r_boundary(space, z, r)) < eps * measure.mass(z) {
            return Ok((j, z.clone()));
        }
    }
    Err(Error::Inconsistency(format!(
        "family of mass {total} has no member with a light {r}-boundary"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::ula_witness_check;

    fn two_blocks() -> FiniteMetricSpace {
        // {0,1,2} and {3,4,5} on a line with a gap of 10
        FiniteMetricSpace::from_line(&[0.0, 1.0, 2.0, 12.0, 13.0, 14.0]).unwrap()
    }

    #[test]
    fn both_blocks() {
        let x = two_blocks();
        let mu = ProbabilityMeasure::uniform(6).unwrap();
        let cover = Cover::from_sets(&x, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let mut finder = CoverFinder { cover };
        let out = msp_greedy(&x, &mu, 3.0, 2.0, &mut finder, 0.9, None).unwrap();
        assert_eq!(out.family.sets, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!((out.total_mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_mass() {
        let x = two_blocks();
        let mu = ProbabilityMeasure::point_mass(6, 4).unwrap();
        let mut finder = BruteForceFinder { s_bound: 0.0, max_domain: 12 };
        let out = msp_greedy(&x, &mu, 3.0, 0.0, &mut finder, 0.5, None).unwrap();
        assert_eq!(out.family.sets, vec![vec![4]]);
    }

    #[test]
    fn eps_validation() {
        let x = two_blocks();
        let mu = ProbabilityMeasure::uniform(6).unwrap();
        let mut finder = BruteForceFinder { s_bound: 2.0, max_domain: 12 };
        let err = msp_greedy(&x, &mu, 3.0, 2.0, &mut finder, 0.9, Some(0.1)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn ula_selection() {
        let x = two_blocks();
        let mu = ProbabilityMeasure::uniform(6).unwrap();
        let fam = DisjointFamily::new(&x, vec![vec![0, 1, 2], vec![3, 4, 5]], 6.0).unwrap();
        assert_eq!(msp_to_ula(&x, &mu, &fam, 3.0, 0.5).unwrap().0, 0);
        let whole = DisjointFamily::new(&x, vec![(0..6).collect()], 6.0).unwrap();
        assert_eq!(msp_to_ula(&x, &mu, &whole, 3.0, 0.5).unwrap().0, 0);
    }

    #[test]
    fn ula_prefers_the_light_block() {
        // two paths 0..=4 and 5..=9, 20 apart; block {0} has a heavy boundary point 1
        let mut coords: Vec<f64> = (0..5).map(|i| i as f64).collect();
        coords.extend((0..5).map(|i| 25.0 + i as f64));
        let x = FiniteMetricSpace::from_line(&coords).unwrap();
        let mu = ProbabilityMeasure::from_weights(&[0.2, 0.1, 0.0, 0.05, 0.0, 0.0, 0.0, 0.65, 0.0, 0.0]).unwrap();
        let fam = DisjointFamily::new(&x, vec![vec![0], vec![6, 7, 8]], 3.0).unwrap();
        let (j, z) = msp_to_ula(&x, &mu, &fam, 1.5, 0.4).unwrap();
        assert_eq!((j, z.clone()), (1, vec![6, 7, 8]));
        assert!(ula_witness_check(&x, &mu, &z, 1.5, 0.4).unwrap());
    }
}
