use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{
    family_diameter, lebesgue_number_of_family, Cover, ExtendedReal, FiniteMetricSpace, DEFAULT_TOL,
};
use crate::pou::{Label, SparseL1Vector};

/// A partition of unity `f : X → l1(V)` on a finite space: one nonnegative
/// unit-norm sparse vector per point, plus the explicit label universe `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOfUnity<L: Label> {
    values: Vec<SparseL1Vector<L>>,
    universe: BTreeSet<L>,
}

impl<L: Label> PartitionOfUnity<L> {
    /// Validates nonnegativity, unit norms and that carriers lie in `universe`.
    pub fn new(values: Vec<SparseL1Vector<L>>, universe: BTreeSet<L>, tol: f64) -> Result<Self> {
        for (x, v) in values.iter().enumerate() {
            if let Some((l, w)) = v.iter().find(|(_, w)| *w < 0.0) {
                return Err(Error::InvalidPartition(format!(
                    "negative weight {w} on label {l:?} at point {x}"
                )));
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > tol {
                return Err(Error::InvalidPartition(format!(
                    "norm {norm} at point {x} is not 1"
                )));
            }
            if let Some(l) = v.carrier().find(|l| !universe.contains(*l)) {
                return Err(Error::InvalidPartition(format!(
                    "label {l:?} at point {x} is outside the label universe"
                )));
            }
        }
        Ok(PartitionOfUnity { values, universe })
    }

    /// Universe taken as the union of carriers.
    pub fn from_values(values: Vec<SparseL1Vector<L>>) -> Result<Self> {
        let universe = values.iter().flat_map(|v| v.carrier().cloned()).collect();
        Self::new(values, universe, DEFAULT_TOL)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, x: usize) -> &SparseL1Vector<L> {
        &self.values[x]
    }

    pub fn values(&self) -> &[SparseL1Vector<L>] {
        &self.values
    }

    pub fn universe(&self) -> &BTreeSet<L> {
        &self.universe
    }

    pub fn check_space(&self, space: &FiniteMetricSpace) -> Result<()> {
        if self.values.len() == space.len() {
            Ok(())
        } else {
            Err(Error::InvalidPartition(format!(
                "partition has {} values but the space has {} points",
                self.values.len(),
                space.len()
            )))
        }
    }

    /// Max carrier size, i.e. `n + 1` for an `n`-dimensional partition.
    pub fn max_carrier(&self) -> usize {
        self.values.iter().map(|v| v.carrier_len()).max().unwrap_or(0)
    }

    pub fn barycentric_flag(&self, tol: f64) -> BarycentricFlag {
        let carrier_sizes: Vec<usize> = self.values.iter().map(|v| v.carrier_len()).collect();
        let is_barycentric = self.values.iter().all(|v| {
            let w = 1.0 / v.carrier_len() as f64;
            v.iter().all(|(_, x)| (x - w).abs() <= tol)
        });
        BarycentricFlag {
            is_barycentric,
            carrier_sizes,
        }
    }

    pub fn is_barycentric(&self, tol: f64) -> bool {
        self.barycentric_flag(tol).is_barycentric
    }

    /// Nonempty open-star preimages `f⁻¹(st(v))`, keyed by label.
    pub fn star_preimages(&self) -> BTreeMap<L, Vec<usize>> {
        let mut out: BTreeMap<L, Vec<usize>> = BTreeMap::new();
        for (x, v) in self.values.iter().enumerate() {
            for l in v.carrier() {
                out.entry(l.clone()).or_default().push(x);
            }
        }
        out
    }

    /// `‖f(x) − f(y)‖₁`.
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        self.values[x].l1_distance(&self.values[y])
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Contraction along `alpha`: the pushforward `α_* ∘ f`. The target
    /// universe is the image of the source universe.
    pub fn contract<M: Label>(&self, alpha: &BTreeMap<L, M>) -> Result<PartitionOfUnity<M>> {
        if let Some(l) = self.universe.iter().find(|l| !alpha.contains_key(*l)) {
            return Err(Error::InvalidArgument(format!(
                "contraction map is undefined on label {l:?}"
            )));
        }
        let values = self
            .values
            .iter()
            .map(|v| v.map_labels(|l| alpha[l].clone()))
            .collect();
        let universe = self.universe.iter().map(|l| alpha[l].clone()).collect();
        Ok(PartitionOfUnity { values, universe })
    }

    /// Same partition with labels rewritten by an arbitrary function; used
    /// to move between internal label types and string labels.
    pub fn map_labels<M: Label, F: Fn(&L) -> M>(&self, f: F) -> PartitionOfUnity<M> {
        PartitionOfUnity {
            values: self.values.iter().map(|v| v.map_labels(&f)).collect(),
            universe: self.universe.iter().map(f).collect(),
        }
    }
}

/// Whether every value is uniform on its carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarycentricFlag {
    pub is_barycentric: bool,
    pub carrier_sizes: Vec<usize>,
}

/// Divides each vector by its norm.
pub fn normalize<L: Label>(values: Vec<SparseL1Vector<L>>) -> Result<PartitionOfUnity<L>> {
    let mut out = Vec::with_capacity(values.len());
    for (x, v) in values.into_iter().enumerate() {
        if !v.is_nonnegative() {
            return Err(Error::InvalidPartition(format!(
                "negative entry at point {x}"
            )));
        }
        let norm = v.norm();
        if norm <= 0.0 {
            return Err(Error::InvalidPartition(format!("zero vector at point {x}")));
        }
        out.push(v.scaled(1.0 / norm));
    }
    PartitionOfUnity::from_values(out)
}

/// Barycentric partition with carrier `carriers[x]` at point `x`.
pub fn barycentric_from_carriers<L: Label>(carriers: Vec<Vec<L>>) -> Result<PartitionOfUnity<L>> {
    let values = carriers
        .into_iter()
        .enumerate()
        .map(|(x, c)| {
            if c.is_empty() {
                Err(Error::InvalidPartition(format!("empty carrier at point {x}")))
            } else {
                Ok(SparseL1Vector::uniform(c))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PartitionOfUnity::from_values(values)
}

/// Induced barycentric partition `p_U`: uniform over the elements containing
/// each point. Labels are element labels; the universe is every label of `U`.
pub fn barycentric_from_cover(cover: &Cover) -> PartitionOfUnity<String> {
    let values = (0..cover.space_len())
        .map(|x| SparseL1Vector::uniform(cover.memberships(x).iter().map(|&s| cover.label(s).to_string())))
        .collect();
    let universe = cover.elements().iter().map(|e| e.label.clone()).collect();
    PartitionOfUnity::new(values, universe, DEFAULT_TOL).expect("covers induce partitions")
}

/// Same as [`barycentric_from_cover`] with element indices as labels.
pub fn barycentric_from_cover_indexed(cover: &Cover) -> PartitionOfUnity<usize> {
    let values = (0..cover.space_len())
        .map(|x| SparseL1Vector::uniform(cover.memberships(x).iter().copied()))
        .collect();
    let universe = (0..cover.len()).collect();
    PartitionOfUnity::new(values, universe, DEFAULT_TOL).expect("covers induce partitions")
}

/// Numerical profile of a partition of unity on a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoUMetrics {
    /// Least `ε` with `‖f(x) − f(y)‖ ≤ ε·d(x, y) + ε` for all pairs.
    pub lipschitz_number: f64,
    /// Max `‖f(x) − f(y)‖` over `d(x, y) < r`, when `r` was supplied.
    pub variation_at_r: Option<f64>,
    /// Max diameter of a nonempty star preimage.
    pub coboundedness: ExtendedReal,
    /// Lebesgue number of the star-preimage cover.
    pub lebesgue: ExtendedReal,
}

pub fn lipschitz_number<L: Label>(space: &FiniteMetricSpace, f: &PartitionOfUnity<L>) -> f64 {
    let n = space.len();
    let mut best = 0.0f64;
    for x in 0..n {
        for y in x + 1..n {
            best = best.max(f.distance(x, y) / (space.d(x, y) + 1.0));
        }
    }
    best
}

pub fn variation<L: Label>(space: &FiniteMetricSpace, f: &PartitionOfUnity<L>, r: f64) -> f64 {
    let n = space.len();
    let mut best = 0.0f64;
    for x in 0..n {
        for y in x + 1..n {
            if space.lt(space.d(x, y), r) {
                best = best.max(f.distance(x, y));
            }
        }
    }
    best
}

pub fn coboundedness<L: Label>(space: &FiniteMetricSpace, f: &PartitionOfUnity<L>) -> ExtendedReal {
    let family: Vec<Vec<usize>> = f.star_preimages().into_values().collect();
    family_diameter(space, &family).unwrap_or(ExtendedReal::ZERO)
}

pub fn lebesgue<L: Label>(space: &FiniteMetricSpace, f: &PartitionOfUnity<L>) -> ExtendedReal {
    let family: Vec<Vec<usize>> = f.star_preimages().into_values().collect();
    lebesgue_number_of_family(space, &family)
}

/// Exact maxima over all point pairs.
pub fn pou_metrics<L: Label>(
    space: &FiniteMetricSpace,
    f: &PartitionOfUnity<L>,
    r: Option<f64>,
) -> Result<PoUMetrics> {
    f.check_space(space)?;
    Ok(PoUMetrics {
        lipschitz_number: lipschitz_number(space, f),
        variation_at_r: r.map(|r| variation(space, f, r)),
        coboundedness: coboundedness(space, f),
        lebesgue: lebesgue(space, f),
    })
}
