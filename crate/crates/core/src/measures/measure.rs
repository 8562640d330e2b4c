use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

/// Nonnegative point weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityMeasure {
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct MeasureFile {
    weights: Vec<f64>,
}

impl<'de> Deserialize<'de> for ProbabilityMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let f = MeasureFile::deserialize(de)?;
        ProbabilityMeasure::new(f.weights, 1e-9).map_err(serde::de::Error::custom)
    }
}

impl ProbabilityMeasure {
    pub fn new(weights: Vec<f64>, tol: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("measure has no points"));
        }
        if let Some(x) = weights.iter().position(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidMeasure(format!(
                "weight {} at point {x} is not a nonnegative number",
                weights[x]
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        Ok(ProbabilityMeasure { weights })
    }

    /// Normalizes nonnegative weights with positive total.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidMeasure("weights have no positive mass".into()));
        }
        Self::new(weights.iter().map(|w| w / total).collect(), 1e-9)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::from_weights(&vec![1.0; n])
    }

    pub fn point_mass(n: usize, x: usize) -> Result<Self> {
        if x >= n {
            return Err(Error::PointOutOfRange { index: x, n });
        }
        let mut w = vec![0.0; n];
        w[x] = 1.0;
        Self::new(w, 0.0)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, x: usize) -> f64 {
        self.weights[x]
    }

    pub fn mass(&self, set: &[usize]) -> f64 {
        set.iter().map(|&x| self.weights[x]).sum()
    }

    /// Points of positive weight, in index order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.weights[x] > 0.0).collect()
    }

    /// `μ(· ∩ set) / μ(set)`.
    pub fn restricted(&self, set: &[usize]) -> Result<Self> {
        let mut w = vec![0.0; self.len()];
        for &x in set {
            w[x] = self.weights[x];
        }
        Self::from_weights(&w)
    }

    pub fn check_space(&self, space: &FiniteMetricSpace) -> Result<()> {
        if self.len() == space.len() {
            Ok(())
        } else {
            Err(Error::InvalidMeasure(format!(
                "measure has {} weights for {} points",
                self.len(),
                space.len()
            )))
        }
    }
}

/// `∂_R E = {x ∉ E : d(x, E) < R}`.
pub fn r_boundary(space: &FiniteMetricSpace, set: &[usize], r: f64) -> Vec<usize> {
    r_boundary_with(space, set, r, false)
}

/// `R`-boundary; `closed` switches to `d(x, E) ≤ R`.
pub fn r_boundary_with(space: &FiniteMetricSpace, set: &[usize], r: f64, closed: bool) -> Vec<usize> {
    let mut inside = vec![false; space.len()];
    for &a in set {
        inside[a] = true;
    }
    (0..space.len())
        .filter(|&x| {
            !inside[x]
                && set.iter().any(|&a| {
                    let d = space.d(x, a);
                    if closed {
                        space.le(d, r)
                    } else {
                        space.lt(d, r)
                    }
                })
        })
        .collect()
}

/// `μ(∂_R E) < ε·μ(E)`.
pub fn ula_witness_check(
    space: &FiniteMetricSpace,
    measure: &ProbabilityMeasure,
    set: &[usize],
    r: f64,
    eps: f64,
) -> Result<bool> {
    measure.check_space(space)?;
    space.check_points(set)?;
    if set.is_empty() {
        return Err(Error::Empty("ULA witness set is empty"));
    }
    let boundary = measure.mass(&r_boundary(space, set, r));
    Ok(boundary < eps * measure.mass(set))
}

/// Finitely many point sets, pairwise at distance at least `R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjointFamily {
    pub sets: Vec<Vec<usize>>,
    #[serde(rename = "R")]
    pub r: f64,
}

impl DisjointFamily {
    pub fn new(space: &FiniteMetricSpace, sets: Vec<Vec<usize>>, r: f64) -> Result<Self> {
        let family = DisjointFamily { sets, r };
        family.validate(space)?;
        Ok(family)
    }

    pub fn validate(&self, space: &FiniteMetricSpace) -> Result<()> {
        for (i, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidArgument(format!("family member {i} is empty")));
            }
            space.check_points(s)?;
        }
        for i in 0..self.sets.len() {
            for j in i + 1..self.sets.len() {
                let gap = set_distance(space, &self.sets[i], &self.sets[j]);
                if space.lt(gap, self.r) {
                    return Err(Error::InvalidArgument(format!(
                        "members {i} and {j} are at distance {gap} < R = {}",
                        self.r
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn total_mass(&self, measure: &ProbabilityMeasure) -> f64 {
        self.sets.iter().map(|s| measure.mass(s)).sum()
    }
}

pub(crate) fn set_distance(space: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> f64 {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| space.d(x, y)))
        .fold(f64::INFINITY, f64::min)
}
