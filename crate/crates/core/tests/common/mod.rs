//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use coarse_core::graph::Graph;
use coarse_core::metric::{Cover, FiniteMetricSpace};
use coarse_core::pou::{barycentric_from_carriers, PartitionOfUnity};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shortest-path metric of a random connected graph with integer edge
/// weights in `1..=max_w`.
pub fn random_space(rng: &mut impl Rng, n: usize, max_w: u32) -> FiniteMetricSpace {
    let inf = f64::INFINITY;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let link = |d: &mut Vec<Vec<f64>>, a: usize, b: usize, w: f64| {
        if w < d[a][b] {
            d[a][b] = w;
            d[b][a] = w;
        }
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let w = rng.gen_range(1..=max_w) as f64;
        link(&mut d, order[i], order[j], w);
    }
    for _ in 0..n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let w = rng.gen_range(1..=max_w) as f64;
            link(&mut d, a, b, w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::new(d).expect("shortest-path metrics are metrics")
}

/// Random spanning tree plus `extra` random chords.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert((j, i));
    }
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Graph::new(n, &edges.into_iter().collect::<Vec<_>>()).expect("simple graph")
}

/// `k` random sets of roughly `size` points, patched to cover every point.
pub fn random_cover(rng: &mut impl Rng, space: &FiniteMetricSpace, k: usize, size: usize) -> Cover {
    let n = space.len();
    let mut sets: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let mut pts: Vec<usize> = (0..n).collect();
            pts.shuffle(rng);
            pts.truncate(size.clamp(1, n));
            pts.sort_unstable();
            pts
        })
        .collect();
    for x in 0..n {
        if !sets.iter().any(|s| s.contains(&x)) {
            let s = rng.gen_range(0..sets.len());
            sets[s].push(x);
            sets[s].sort_unstable();
        }
    }
    Cover::from_sets(space, sets).expect("patched sets cover")
}

pub fn cycle_space(n: usize) -> FiniteMetricSpace {
    Graph::cycle(n).unwrap().metric().unwrap()
}

pub fn hypercube_space(d: usize) -> FiniteMetricSpace {
    Graph::hypercube(d).unwrap().metric().unwrap()
}

/// Arcs `{i, .., i + len − 1}` of the `n`-cycle for `i = 0, stride, ..`.
pub fn cycle_arcs(space: &FiniteMetricSpace, len: usize, stride: usize) -> Cover {
    let n = space.len();
    let sets = (0..n)
        .step_by(stride)
        .map(|i| {
            let mut arc: Vec<usize> = (0..len).map(|j| (i + j) % n).collect();
            arc.sort_unstable();
            arc
        })
        .collect();
    Cover::from_sets(space, sets).unwrap()
}

/// Closed balls of radius `r` around every point.
pub fn closed_ball_cover(space: &FiniteMetricSpace, r: f64) -> Cover {
    let sets = (0..space.len()).map(|x| space.closed_ball(x, r)).collect();
    Cover::from_sets(space, sets).unwrap()
}

/// Barycentric partition whose carrier at `x` is the set of width-`k`
/// windows `[s, s + k)` containing `x`, on a path (`wrap = false`) or a
/// cycle of `n` points.
pub fn sliding_window_pou(n: usize, k: usize, wrap: bool) -> PartitionOfUnity<usize> {
    let carriers = (0..n)
        .map(|x| {
            if wrap {
                (0..k).map(|j| (x + n - j) % n).collect()
            } else {
                // windows indexed by start + k − 1 so starts before 0 stay distinct
                (0..k).map(|j| x + k - 1 - j).collect()
            }
        })
        .collect();
    barycentric_from_carriers(carriers).unwrap()
}

/// Covers of points on a line by half-open intervals `[a, a + len)` with
/// starts every `stride`. Empty intervals are dropped; intervals with the
/// same points are kept so membership counts track interval length.
pub fn interval_cover(space: &FiniteMetricSpace, coords: &[f64], len: f64, stride: f64) -> Cover {
    let lo = coords.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = coords.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut a = lo - len + stride;
    while a <= hi {
        let set: Vec<usize> = (0..coords.len())
            .filter(|&i| coords[i] >= a && coords[i] < a + len)
            .collect();
        if !set.is_empty() {
            sets.push(set);
        }
        a += stride;
    }
    Cover::from_sets(space, sets).unwrap()
}

/// `n` distinct integer points in `[0, span)`, sorted.
pub fn random_line_points(rng: &mut impl Rng, n: usize, span: u32) -> Vec<f64> {
    let mut all: Vec<u32> = (0..span).collect();
    all.shuffle(rng);
    let mut pts: Vec<f64> = all[..n].iter().map(|&v| v as f64).collect();
    pts.sort_by(f64::total_cmp);
    pts
}
