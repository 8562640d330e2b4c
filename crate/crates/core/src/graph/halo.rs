use itertools::Itertools;
use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{coarse_disjoint_union, Cover, FiniteMetricSpace};

/// Largest number of subsets [`halo_ratio_search`] enumerates.
pub const HALO_EXHAUSTIVE_CAP: u128 = 10_000_000;

/// `{x ∉ A : B(x, 2) ∩ A ≠ ∅}` in the ambient metric.
pub fn halo(space: &FiniteMetricSpace, set: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; space.len()];
    for &a in set {
        inside[a] = true;
    }
    (0..space.len())
        .filter(|&x| !inside[x] && set.iter().any(|&a| space.lt(space.d(x, a), 2.0)))
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Smallest `|halo(A)| / |A|` found over nonempty `A` with `|A| ≤ max_size`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HaloSearch {
    pub min_ratio: Ratio<u64>,
    pub set: Vec<usize>,
    pub max_size: usize,
    /// `false` when subsets were sampled; the ratio is then only an upper
    /// bound on the true minimum.
    pub exhaustive: bool,
    pub checked: u64,
}

/// Minimizes `|halo(A)| / |A|` over nonempty `A ⊆ domain` with
/// `|A| ≤ max_size` (domain defaults to every point). Enumerates all
/// subsets when there are at most [`HALO_EXHAUSTIVE_CAP`] of them, otherwise
/// draws `samples` seeded random subsets. Ties keep the first set found.
pub fn halo_ratio_search(
    space: &FiniteMetricSpace,
    max_size: usize,
    domain: Option<&[usize]>,
    seed: u64,
    samples: u64,
) -> Result<HaloSearch> {
    let domain: Vec<usize> = match domain {
        Some(d) => {
            space.check_points(d)?;
            d.iter().copied().sorted().dedup().collect()
        }
        None => (0..space.len()).collect(),
    };
    if max_size == 0 || domain.is_empty() {
        return Err(Error::InvalidArgument("need max_size ≥ 1 and a nonempty domain".into()));
    }
    if max_size >= space.len() {
        return Err(Error::InvalidArgument(format!(
            "max_size {max_size} must stay below the {} points (the whole space has an empty halo)",
            space.len()
        )));
    }
    let max_size = max_size.min(domain.len());
    let total: u128 = (1..=max_size).map(|k| binomial(domain.len(), k)).sum();
    let mut best: Option<(Ratio<u64>, Vec<usize>)> = None;
    let mut consider = |set: Vec<usize>| {
        let r = Ratio::new(halo(space, &set).len() as u64, set.len() as u64);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, set));
        }
    };
    let (exhaustive, checked) = if total <= HALO_EXHAUSTIVE_CAP {
        for k in 1..=max_size {
            for set in domain.iter().copied().combinations(k) {
                consider(set);
            }
        }
        (true, total as u64)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let k = rng.gen_range(1..=max_size);
            let set: Vec<usize> = sample(&mut rng, domain.len(), k)
                .into_iter()
                .map(|i| domain[i])
                .sorted()
                .collect();
            consider(set);
        }
        (false, samples)
    };
    let (min_ratio, set) = best.ok_or_else(|| Error::InvalidArgument("no subsets sampled".into()))?;
    Ok(HaloSearch {
        min_ratio,
        set,
        max_size,
        exhaustive,
        checked,
    })
}

/// Outcome of the double-counting obstruction on one cover.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoubleCountReport {
    /// `Σ_s |halo(U_s)|`.
    pub lhs: u64,
    /// `Σ_x (|hor(B(x, 2))| − |hor({x})|)`.
    pub rhs: u64,
    /// `min_x |hor(B(x, 1))| / |hor(B(x, 2))|`.
    pub p_min: Ratio<u64>,
    /// `min_s |halo(U_s)| / |U_s|`.
    pub c_min: Ratio<u64>,
    /// `p_min ≤ 1/(1 + c_min)`; `None` when `c_min = 0` and the bound is vacuous.
    pub bound_ok: Option<bool>,
}

impl DoubleCountReport {
    pub fn identity_holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Double-counts the pairs `(x, s)` with `x ∈ halo(U_s)` both ways and
/// compares the worst point ratio with `1/(1 + c_min)`.
pub fn double_counting_check(g: &Graph, cover: &Cover) -> Result<DoubleCountReport> {
    double_counting_on_space(&g.metric()?, cover)
}

pub fn double_counting_on_space(space: &FiniteMetricSpace, cover: &Cover) -> Result<DoubleCountReport> {
    if cover.space_len() != space.len() {
        return Err(Error::InvalidCover(format!(
            "cover is over {} points but the space has {}",
            cover.space_len(),
            space.len()
        )));
    }
    let mut lhs = 0u64;
    let mut c_min: Option<Ratio<u64>> = None;
    for s in 0..cover.len() {
        let h = halo(space, cover.element(s)).len() as u64;
        lhs += h;
        let c = Ratio::new(h, cover.element(s).len() as u64);
        c_min = Some(c_min.map_or(c, |m| m.min(c)));
    }
    let mut rhs = 0u64;
    let mut p_min: Option<Ratio<u64>> = None;
    for x in 0..space.len() {
        let outer = cover.ball_horizon(space, x, 2.0).len() as u64;
        let point = cover.memberships(x).len() as u64;
        rhs += outer - point;
        let p = Ratio::new(cover.ball_horizon(space, x, 1.0).len() as u64, outer);
        p_min = Some(p_min.map_or(p, |m| m.min(p)));
    }
    let c_min = c_min.ok_or(Error::Empty("cover has no elements"))?;
    let p_min = p_min.expect("space is nonempty");
    let bound_ok = if *c_min.numer() == 0 {
        None
    } else {
        Some(p_min * (Ratio::from_integer(1) + c_min) <= Ratio::from_integer(1))
    };
    Ok(DoubleCountReport {
        lhs,
        rhs,
        p_min,
        c_min,
        bound_ok,
    })
}

/// Result of an exhaustive or sampled `|halo(A)| ≥ |A|` check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HaloClaim {
    pub holds: bool,
    pub exhaustive: bool,
    pub checked: u64,
    pub counterexample: Option<Vec<usize>>,
}

/// Checks `|halo(A)| ≥ |A|` for every nonempty `A ⊆ domain` with
/// `|A| ≤ M` in a graph of girth `> 4M` whose domain vertices have degree
/// at least 3. `domain` defaults to every vertex; halos are taken in the
/// whole graph.
pub fn girth_halo_check(g: &Graph, m: usize, domain: Option<&[usize]>) -> Result<HaloClaim> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let domain: Vec<usize> = match domain {
        Some(d) => {
            g.check_vertices(d)?;
            d.iter().copied().sorted().dedup().collect()
        }
        None => (0..g.len()).collect(),
    };
    if let Some(&v) = domain.iter().find(|&&v| g.degree(v) < 3) {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree {} < 3",
            g.degree(v)
        )));
    }
    let girth = g.girth();
    if !(girth.value() > 4.0 * m as f64) {
        return Err(Error::Precondition(format!(
            "girth {girth} is not above 4M = {}",
            4 * m
        )));
    }
    let total: u128 = (1..=m.min(domain.len())).map(|k| binomial(domain.len(), k)).sum();
    if total > HALO_EXHAUSTIVE_CAP {
        return Err(Error::Infeasible(format!(
            "{total} subsets exceed the exhaustive cap {HALO_EXHAUSTIVE_CAP}"
        )));
    }
    for k in 1..=m.min(domain.len()) {
        for set in domain.iter().copied().combinations(k) {
            if g.vertex_halo(&set).len() < set.len() {
                return Ok(HaloClaim {
                    holds: false,
                    exhaustive: true,
                    checked: total as u64,
                    counterexample: Some(set),
                });
            }
        }
    }
    Ok(HaloClaim {
        holds: true,
        exhaustive: true,
        checked: total as u64,
        counterexample: None,
    })
}

/// Prefix certificate for expander-lightness of a graph sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpanderLightReport {
    pub c: f64,
    pub max_size: usize,
    /// Halo search inside each member, measured in the coarse disjoint union.
    pub members: Vec<HaloSearch>,
    /// Every member had `|halo(A)| ≥ c·|A|` for all checked `A`.
    pub holds: bool,
}

/// Measures halos of sets with at most `max_size` points inside each member
/// of the coarse disjoint union of the graphs' metrics. This certifies only
/// the checked members and set sizes.
pub fn expander_light_check(
    graphs: &[Graph],
    max_size: usize,
    c: f64,
    seed: u64,
    samples: u64,
) -> Result<ExpanderLightReport> {
    if graphs.is_empty() {
        return Err(Error::Empty("graph sequence is empty"));
    }
    let spaces = graphs.iter().map(Graph::metric).collect::<Result<Vec<_>>>()?;
    let (union, offsets) = coarse_disjoint_union(&spaces)?;
    let mut members = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let block: Vec<usize> = (offsets[i]..offsets[i] + g.len()).collect();
        let size = max_size.min(g.len().saturating_sub(1)).max(1);
        let mut search = halo_ratio_search(&union, size, Some(&block), seed.wrapping_add(i as u64), samples)?;
        search.set.iter_mut().for_each(|v| *v -= offsets[i]);
        members.push(search);
    }
    let holds = members
        .iter()
        .all(|m| *m.min_ratio.numer() as f64 >= c * *m.min_ratio.denom() as f64 - 1e-12);
    Ok(ExpanderLightReport {
        c,
        max_size,
        members,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halo_examples() {
        let c6 = Graph::cycle(6).unwrap().metric().unwrap();
        assert_eq!(halo(&c6, &[0]), vec![1, 5]);
        assert!(halo(&c6, &[]).is_empty());
        assert!(halo(&c6, &(0..6).collect::<Vec<_>>()).is_empty());
    }

    #[test]
    fn halo_search_examples() {
        let c6 = Graph::cycle(6).unwrap().metric().unwrap();
        let s = halo_ratio_search(&c6, 2, None, 0, 0).unwrap();
        assert_eq!((s.min_ratio, s.set.clone()), (Ratio::from_integer(1), vec![0, 1]));
        assert!(s.exhaustive);
        let p = Graph::petersen().metric().unwrap();
        assert_eq!(halo_ratio_search(&p, 1, None, 0, 0).unwrap().min_ratio, Ratio::from_integer(3));
        assert!(halo_ratio_search(&c6, 6, None, 0, 0).is_err());
    }

    #[test]
    fn double_count_c4() {
        let g = Graph::cycle(4).unwrap();
        let x = g.metric().unwrap();
        let u = Cover::from_sets(&x, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let rep = double_counting_check(&g, &u).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (4, 4));
        assert_eq!(rep.p_min, Ratio::new(1, 2));
        assert_eq!(rep.c_min, Ratio::from_integer(1));
        assert_eq!(rep.bound_ok, Some(true));

        let whole = double_counting_check(&g, &Cover::whole_space(&x)).unwrap();
        assert_eq!((whole.lhs, whole.rhs, whole.bound_ok), (0, 0, None));
    }

    #[test]
    fn girth_halo_examples() {
        assert!(girth_halo_check(&Graph::petersen(), 1, None).unwrap().holds);
        let err = girth_halo_check(&Graph::complete(4).unwrap(), 1, None).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let (tree, depth) = Graph::regular_tree(3, 4).unwrap();
        let interior: Vec<usize> = (0..tree.len()).filter(|&v| depth[v] < 4).collect();
        assert!(girth_halo_check(&tree, 2, Some(&interior)).unwrap().holds);
        assert!(girth_halo_check(&tree, 2, None).is_err());
    }

    #[test]
    fn expander_light_prefix() {
        let graphs = vec![Graph::petersen(), Graph::random_regular(12, 3, 1).unwrap()];
        let rep = expander_light_check(&graphs, 2, 1.0, 0, 100).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.members.len(), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(46, 3), 15180);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
