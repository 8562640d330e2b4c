use crate::error::{Error, Result};
use crate::metric::ExtendedReal;

/// Global comparison tolerance for distances and weights.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A finite (pseudo)metric space given by its distance matrix.
///
/// Distances are compared with the space's tolerance: `a` is strictly less
/// than `b` when `a < b - tol`. Open balls use that comparison, so on
/// integer-valued metrics `B(x, 1)` is exactly `{x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
    labels: Option<Vec<String>>,
    tol: f64,
    pseudometric: bool,
}

impl FiniteMetricSpace {
    /// Builds and validates a space from a square distance matrix.
    pub fn new(dist: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tolerance(dist, DEFAULT_TOL)
    }

    pub fn with_tolerance(dist: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::Empty("metric space has no points"));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMetric(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let flat: Vec<f64> = dist.into_iter().flatten().collect();
        Self::from_flat(n, flat, tol)
    }

    pub(crate) fn from_flat(n: usize, dist: Vec<f64>, tol: f64) -> Result<Self> {
        debug_assert_eq!(dist.len(), n * n);
        let mut space = FiniteMetricSpace {
            n,
            dist,
            labels: None,
            tol,
            pseudometric: false,
        };
        space.pseudometric = space.validate()?;
        Ok(space)
    }

    /// Skips validation; only for matrices that are metrics by construction
    /// (shortest-path distances of a connected graph).
    pub(crate) fn from_flat_trusted(n: usize, dist: Vec<f64>) -> Self {
        debug_assert_eq!(dist.len(), n * n);
        FiniteMetricSpace {
            n,
            dist,
            labels: None,
            tol: DEFAULT_TOL,
            pseudometric: false,
        }
    }

    /// Points on the real line with the absolute-difference metric.
    pub fn from_line(coords: &[f64]) -> Result<Self> {
        let dist = coords
            .iter()
            .map(|a| coords.iter().map(|b| (a - b).abs()).collect())
            .collect();
        Self::new(dist)
    }

    /// `{0, 1, .., n-1}` with unit spacing.
    pub fn unit_line(n: usize) -> Self {
        let coords: Vec<f64> = (0..n).map(|i| i as f64).collect();
        Self::from_line(&coords).expect("unit line is a metric")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidMetric(format!(
                "{} labels for {} points",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Runs every metric invariant; returns whether the space is only a
    /// pseudometric (some distinct pair at distance zero).
    fn validate(&self) -> Result<bool> {
        let n = self.n;
        let tol = self.tol;
        let mut pseudo = false;
        for i in 0..n {
            for j in 0..n {
                let d = self.d(i, j);
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidMetric(format!(
                        "dist[{i}][{j}] = {d} is not a finite nonnegative number"
                    )));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidMetric(format!(
                        "dist[{i}][{i}] = {d} is not zero"
                    )));
                }
                if (d - self.d(j, i)).abs() > tol {
                    return Err(Error::InvalidMetric(format!(
                        "asymmetric at ({i},{j}): {d} != {}",
                        self.d(j, i)
                    )));
                }
                if i != j && d <= tol {
                    pseudo = true;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let dij = self.d(i, j);
                for k in 0..n {
                    if self.d(i, k) > dij + self.d(j, k) + tol {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails at ({i},{j},{k}): d({i},{k}) = {} > {} + {}",
                            self.d(i, k),
                            dij,
                            self.d(j, k)
                        )));
                    }
                }
            }
        }
        Ok(pseudo)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn set_tolerance(&mut self, tol: f64) {
        self.tol = tol;
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// True when two distinct points sit at distance zero.
    pub fn is_pseudometric(&self) -> bool {
        self.pseudometric
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// `a < b` beyond tolerance.
    #[inline]
    pub fn lt(&self, a: f64, b: f64) -> bool {
        a < b - self.tol
    }

    #[inline]
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.tol
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { index: x, n: self.n })
        }
    }

    pub fn check_points(&self, pts: &[usize]) -> Result<()> {
        pts.iter().try_for_each(|&p| self.check_point(p))
    }

    /// Open ball `{ y : d(x, y) < r }`.
    pub fn ball(&self, x: usize, r: f64) -> Result<Vec<usize>> {
        self.check_point(x)?;
        if r < 0.0 {
            return Err(Error::InvalidArgument(format!("negative radius {r}")));
        }
        Ok(self.ball_unchecked(x, r))
    }

    pub(crate) fn ball_unchecked(&self, x: usize, r: f64) -> Vec<usize> {
        self.row(x)
            .iter()
            .enumerate()
            .filter(|(_, &d)| self.lt(d, r))
            .map(|(y, _)| y)
            .collect()
    }

    /// Closed ball `{ y : d(x, y) <= r }`.
    pub fn closed_ball(&self, x: usize, r: f64) -> Vec<usize> {
        self.row(x)
            .iter()
            .enumerate()
            .filter(|(_, &d)| self.le(d, r))
            .map(|(y, _)| y)
            .collect()
    }

    /// `d(x, A)`, `+∞` for empty `A`.
    pub fn dist_to_set(&self, x: usize, set: &[usize]) -> f64 {
        set.iter()
            .map(|&a| self.d(x, a))
            .fold(f64::INFINITY, f64::min)
    }

    /// Max pairwise distance within `set`; zero for empty or singleton sets.
    pub fn set_diameter(&self, set: &[usize]) -> f64 {
        let mut best = 0.0f64;
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                best = best.max(self.d(a, b));
            }
        }
        best
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points, `+∞` for a single point.
    pub fn min_positive_distance(&self) -> ExtendedReal {
        let m = self
            .dist
            .iter()
            .copied()
            .filter(|&d| d > self.tol)
            .fold(f64::INFINITY, f64::min);
        ExtendedReal::from(m)
    }

    /// Open neighbourhood `B(E, s) ∪ E`.
    pub fn neighborhood(&self, set: &[usize], s: f64) -> Vec<usize> {
        let mut member = vec![false; self.n];
        for &e in set {
            member[e] = true;
        }
        (0..self.n)
            .filter(|&x| member[x] || self.lt(self.dist_to_set(x, set), s))
            .collect()
    }

    /// Greedy maximal `r`-separated subset in point order: every pair of
    /// chosen points is at distance at least `r`, and every other point lies
    /// within distance `< r` of some chosen point.
    pub fn separated_net(&self, r: f64) -> Result<Vec<usize>> {
        if r <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "net radius must be positive, got {r}"
            )));
        }
        let mut net: Vec<usize> = Vec::new();
        for x in 0..self.n {
            if net.iter().all(|&y| !self.lt(self.d(x, y), r)) {
                net.push(x);
            }
        }
        Ok(net)
    }

    /// Restriction to a subset of points, in the given order.
    pub fn subspace(&self, points: &[usize]) -> Result<Self> {
        self.check_points(points)?;
        let k = points.len();
        let mut dist = Vec::with_capacity(k * k);
        for &a in points {
            for &b in points {
                dist.push(self.d(a, b));
            }
        }
        Self::from_flat(k, dist, self.tol)
    }
}

/// Coarse disjoint union: blocks keep their metrics and points of distinct
/// blocks `i`, `j` sit at distance `diam(X_i) + diam(X_j)`.
///
/// Returns the space and the block offset of each input.
pub fn coarse_disjoint_union(spaces: &[FiniteMetricSpace]) -> Result<(FiniteMetricSpace, Vec<usize>)> {
    if spaces.is_empty() {
        return Err(Error::Empty("coarse disjoint union of no spaces"));
    }
    let total: usize = spaces.iter().map(|s| s.len()).sum();
    let tol = spaces.iter().map(|s| s.tol).fold(0.0, f64::max);
    let diams: Vec<f64> = spaces.iter().map(|s| s.diameter()).collect();
    let mut offsets = Vec::with_capacity(spaces.len());
    let mut block_of = Vec::with_capacity(total);
    let mut local = Vec::with_capacity(total);
    let mut acc = 0;
    for (b, s) in spaces.iter().enumerate() {
        offsets.push(acc);
        for i in 0..s.len() {
            block_of.push(b);
            local.push(i);
        }
        acc += s.len();
    }
    let mut dist = vec![0.0; total * total];
    for x in 0..total {
        for y in 0..total {
            let (bx, by) = (block_of[x], block_of[y]);
            dist[x * total + y] = if bx == by {
                spaces[bx].d(local[x], local[y])
            } else {
                diams[bx] + diams[by]
            };
        }
    }
    let space = FiniteMetricSpace::from_flat(total, dist, tol)?;
    Ok((space, offsets))
}
