use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{ExtendedReal, FiniteMetricSpace};

/// A labelled cover element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverElement {
    pub label: String,
    pub points: Vec<usize>,
}

/// A finite cover of a space's points by labelled, nonempty subsets.
///
/// Element order is significant: scans that return "the first" element use it.
#[derive(Debug, Clone, PartialEq)]
pub struct Cover {
    n: usize,
    elements: Vec<CoverElement>,
    /// `memberships[x]` lists the indices of elements containing `x`.
    memberships: Vec<Vec<usize>>,
}

impl Cover {
    /// Validates nonempty elements, distinct labels and full coverage.
    pub fn new(space: &FiniteMetricSpace, elements: Vec<CoverElement>) -> Result<Self> {
        let n = space.len();
        let mut labels = BTreeSet::new();
        let mut elements = elements;
        for (i, e) in elements.iter_mut().enumerate() {
            if e.points.is_empty() {
                return Err(Error::InvalidCover(format!(
                    "element {i} ({:?}) is empty",
                    e.label
                )));
            }
            if !labels.insert(e.label.clone()) {
                return Err(Error::InvalidCover(format!(
                    "duplicate label {:?} at element {i}",
                    e.label
                )));
            }
            if let Some(&p) = e.points.iter().find(|&&p| p >= n) {
                return Err(Error::InvalidCover(format!(
                    "element {:?} references point {p} outside 0..{n}",
                    e.label
                )));
            }
            e.points.sort_unstable();
            e.points.dedup();
        }
        let mut memberships = vec![Vec::new(); n];
        for (s, e) in elements.iter().enumerate() {
            for &p in &e.points {
                memberships[p].push(s);
            }
        }
        let missing: Vec<usize> = (0..n).filter(|&x| memberships[x].is_empty()).collect();
        if !missing.is_empty() {
            return Err(Error::InvalidCover(format!("union ≠ X, missing {missing:?}")));
        }
        Ok(Cover {
            n,
            elements,
            memberships,
        })
    }

    /// Cover with elements labelled `"0"`, `"1"`, ...
    pub fn from_sets(space: &FiniteMetricSpace, sets: Vec<Vec<usize>>) -> Result<Self> {
        let elements = sets
            .into_iter()
            .enumerate()
            .map(|(i, points)| CoverElement {
                label: i.to_string(),
                points,
            })
            .collect();
        Self::new(space, elements)
    }

    pub fn whole_space(space: &FiniteMetricSpace) -> Self {
        Self::from_sets(space, vec![(0..space.len()).collect()]).expect("whole space covers")
    }

    pub fn singletons(space: &FiniteMetricSpace) -> Self {
        Self::from_sets(space, (0..space.len()).map(|x| vec![x]).collect())
            .expect("singletons cover")
    }

    pub fn space_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CoverElement] {
        &self.elements
    }

    pub fn element(&self, s: usize) -> &[usize] {
        &self.elements[s].points
    }

    pub fn label(&self, s: usize) -> &str {
        &self.elements[s].label
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|e| e.points.clone()).collect()
    }

    /// Element indices containing `x`.
    pub fn memberships(&self, x: usize) -> &[usize] {
        &self.memberships[x]
    }

    pub fn contains(&self, s: usize, x: usize) -> bool {
        self.elements[s].points.binary_search(&x).is_ok()
    }

    fn check_space(&self, space: &FiniteMetricSpace) -> Result<()> {
        if space.len() == self.n {
            Ok(())
        } else {
            Err(Error::InvalidCover(format!(
                "cover is over {} points but the space has {}",
                self.n,
                space.len()
            )))
        }
    }

    /// `d(x, U_s)` for every point and element, row-major by point.
    pub fn distance_table(&self, space: &FiniteMetricSpace) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|x| {
                self.elements
                    .iter()
                    .map(|e| space.dist_to_set(x, &e.points))
                    .collect()
            })
            .collect()
    }

    /// Max number of elements containing a single point.
    pub fn multiplicity(&self) -> usize {
        self.memberships.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Max distance between two points of a common element.
    pub fn diameter(&self, space: &FiniteMetricSpace) -> ExtendedReal {
        family_diameter(space, &self.sets()).expect("covers are nonempty")
    }

    pub fn lebesgue_number(&self, space: &FiniteMetricSpace) -> ExtendedReal {
        lebesgue_number_of_family(space, &self.sets())
    }

    /// `hor(A, U)`: elements meeting `A`.
    pub fn horizon(&self, set: &[usize]) -> Horizon {
        let mut hit = vec![false; self.elements.len()];
        for &a in set {
            for &s in &self.memberships[a] {
                hit[s] = true;
            }
        }
        Horizon::from_mask(&hit)
    }

    /// `hor(B(x, r), U)`: elements at distance `< r` from `x`.
    pub fn ball_horizon(&self, space: &FiniteMetricSpace, x: usize, r: f64) -> Horizon {
        let indices = self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, e)| space.lt(space.dist_to_set(x, &e.points), r))
            .map(|(s, _)| s)
            .collect();
        Horizon { indices }
    }

    /// Replaces each element `E` by its open neighbourhood `B(E, s) ∪ E`.
    pub fn thicken(&self, space: &FiniteMetricSpace, s: f64) -> Result<Cover> {
        self.check_space(space)?;
        if s < 0.0 {
            return Err(Error::InvalidArgument(format!("negative thickening {s}")));
        }
        let elements = self
            .elements
            .iter()
            .map(|e| CoverElement {
                label: e.label.clone(),
                points: space.neighborhood(&e.points, s),
            })
            .collect();
        Cover::new(space, elements)
    }

    /// Replaces each element `A` by `X \ B(X \ A, r)`. Empty results are
    /// kept so the caller can decide whether coverage survived.
    pub fn shrink(&self, space: &FiniteMetricSpace, r: f64) -> Result<Vec<CoverElement>> {
        self.check_space(space)?;
        if r < 0.0 {
            return Err(Error::InvalidArgument(format!("negative shrink radius {r}")));
        }
        Ok(self
            .elements
            .iter()
            .map(|e| CoverElement {
                label: e.label.clone(),
                points: shrink_set(space, &e.points, r),
            })
            .collect())
    }
}

/// `X \ B(X \ A, r)`; `A` itself when `r = 0`.
pub fn shrink_set(space: &FiniteMetricSpace, set: &[usize], r: f64) -> Vec<usize> {
    let mut member = vec![false; space.len()];
    for &a in set {
        member[a] = true;
    }
    let complement: Vec<usize> = (0..space.len()).filter(|&x| !member[x]).collect();
    set.iter()
        .copied()
        .filter(|&x| !space.lt(space.dist_to_set(x, &complement), r))
        .collect()
}

/// A set of cover elements, held as sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Horizon {
    pub indices: Vec<usize>,
}

impl Horizon {
    fn from_mask(mask: &[bool]) -> Self {
        Horizon {
            indices: mask
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(s, _)| s)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_subset(&self, other: &Horizon) -> bool {
        self.indices
            .iter()
            .all(|s| other.indices.binary_search(s).is_ok())
    }

    pub fn labels<'a>(&self, cover: &'a Cover) -> Vec<&'a str> {
        self.indices.iter().map(|&s| cover.label(s)).collect()
    }
}

/// Max of `d(x, y)` over pairs lying in a common member of `family`.
pub fn family_diameter(space: &FiniteMetricSpace, family: &[Vec<usize>]) -> Result<ExtendedReal> {
    if family.is_empty() {
        return Err(Error::Empty("family of subsets"));
    }
    let d = family
        .iter()
        .map(|e| space.set_diameter(e))
        .fold(0.0, f64::max);
    Ok(ExtendedReal::finite(d))
}

/// `min_x max_E min_{y ∉ E} d(x, y)`, the supremum of radii `r` such that
/// every open `r`-ball lies in some member. A member equal to the whole
/// space contributes `+∞`.
pub fn lebesgue_number_of_family(space: &FiniteMetricSpace, family: &[Vec<usize>]) -> ExtendedReal {
    let n = space.len();
    let mut member = vec![false; n];
    let mut reach = vec![ExtendedReal::ZERO; n];
    for e in family {
        member.iter_mut().for_each(|m| *m = false);
        for &p in e {
            member[p] = true;
        }
        let outside: Vec<usize> = (0..n).filter(|&y| !member[y]).collect();
        for &x in e {
            let r = ExtendedReal::from(space.dist_to_set(x, &outside));
            reach[x] = reach[x].max(r);
        }
    }
    reach
        .into_iter()
        .fold(ExtendedReal::INFINITY, ExtendedReal::min)
}
