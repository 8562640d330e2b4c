use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{ExtendedReal, FiniteMetricSpace};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile {
            n: self.len(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let file = GraphFile::deserialize(de)?;
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(file.n, &edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) references a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("repeated edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// BFS hop counts from `src`; `None` for unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs(0).iter().all(Option::is_some)
    }

    /// All-pairs shortest-path metric with unit edge lengths.
    pub fn metric(&self) -> Result<FiniteMetricSpace> {
        let n = self.len();
        if n == 0 {
            return Err(Error::Empty("graph has no vertices"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for v in 0..n {
            for (w, d) in self.bfs(v).into_iter().enumerate() {
                match d {
                    Some(d) => flat.push(d as f64),
                    None => {
                        return Err(Error::InvalidGraph(format!(
                            "graph is disconnected: no path from {v} to {w}"
                        )))
                    }
                }
            }
        }
        Ok(FiniteMetricSpace::from_flat_trusted(n, flat))
    }

    /// Length of a shortest cycle, `+∞` for forests.
    pub fn girth(&self) -> ExtendedReal {
        let n = self.len();
        let mut best = usize::MAX;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            ExtendedReal::INFINITY
        } else {
            ExtendedReal::finite(best as f64)
        }
    }

    /// Edges with exactly one endpoint in `set`, oriented out of `set`.
    pub fn edge_boundary(&self, set: &[usize]) -> Vec<(usize, usize)> {
        let inside = self.indicator(set);
        let mut out = Vec::new();
        for &a in set {
            out.extend(self.adj[a].iter().filter(|&&b| !inside[b]).map(|&b| (a, b)));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertices outside `set` adjacent to it.
    pub fn vertex_halo(&self, set: &[usize]) -> Vec<usize> {
        let inside = self.indicator(set);
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for &a in set {
            for &b in &self.adj[a] {
                if !inside[b] && !seen[b] {
                    seen[b] = true;
                    out.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn indicator(&self, set: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.len()];
        for &a in set {
            inside[a] = true;
        }
        inside
    }

    pub(crate) fn check_vertices(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&v| v >= self.len()) {
            Some(&v) => Err(Error::PointOutOfRange { index: v, n: self.len() }),
            None => Ok(()),
        }
    }

    // --- generators ---

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n ≥ 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("path needs at least one vertex".into()));
        }
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("complete graph needs n ≥ 1".into()));
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::new(n, &edges)
    }

    /// `Q_d` on bit strings; adjacent iff they differ in one bit.
    pub fn hypercube(d: usize) -> Result<Self> {
        if d == 0 || d > 20 {
            return Err(Error::InvalidArgument(format!("hypercube dimension {d} outside 1..=20")));
        }
        let n = 1usize << d;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..d {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Graph::new(n, &edges)
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i — i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::new(10, &edges).expect("petersen edges are valid")
    }

    /// Seeded random connected `d`-regular graph by the pairing model,
    /// restarting on loops, repeated edges or disconnection.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Self> {
        if d >= n || (n * d) % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "no simple {d}-regular graph on {n} vertices"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        for _ in 0..10_000 {
            stubs.shuffle(&mut rng);
            let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
            match Graph::new(n, &edges) {
                Ok(g) if g.is_connected() => return Ok(g),
                _ => {}
            }
        }
        Err(Error::Infeasible(format!(
            "pairing model found no simple connected {d}-regular graph on {n} vertices"
        )))
    }

    /// The `d`-regular tree truncated at `radius` around vertex 0, with
    /// vertices numbered breadth-first. Returns the graph and each vertex's
    /// depth; vertices at depth `< radius` have full degree `d`.
    pub fn regular_tree(d: usize, radius: usize) -> Result<(Self, Vec<usize>)> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("tree degree must be ≥ 2, got {d}")));
        }
        let mut depth = vec![0usize];
        let mut edges = Vec::new();
        let mut frontier = vec![0usize];
        for level in 1..=radius {
            let mut next = Vec::new();
            for &p in &frontier {
                let children = if p == 0 { d } else { d - 1 };
                for _ in 0..children {
                    let v = depth.len();
                    depth.push(level);
                    edges.push((p, v));
                    next.push(v);
                }
            }
            if depth.len() > 1 << 20 {
                return Err(Error::Infeasible("truncated tree exceeds 2^20 vertices".into()));
            }
            frontier = next;
        }
        Ok((Graph::new(depth.len(), &edges)?, depth))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Shortest cycle by enumerating simple paths; exponential, tiny graphs only.
    fn girth_oracle(g: &Graph) -> Option<usize> {
        fn dfs(g: &Graph, start: usize, u: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
            for &w in g.neighbors(u) {
                if w == start && path.len() >= 3 {
                    *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
                } else if w > start && !path.contains(&w) {
                    path.push(w);
                    dfs(g, start, w, path, best);
                    path.pop();
                }
            }
        }
        let mut best = None;
        for s in 0..g.len() {
            dfs(g, s, s, &mut vec![s], &mut best);
        }
        best
    }

    #[test]
    fn metric_examples() {
        let k3 = Graph::complete(3).unwrap().metric().unwrap();
        assert_eq!(k3.d(0, 2), 1.0);
        assert_eq!(Graph::path(4).unwrap().metric().unwrap().d(0, 3), 3.0);
        assert_eq!(Graph::petersen().metric().unwrap().diameter(), 2.0);
        let broken = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(broken.metric().is_err());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(Graph::complete(3).unwrap().girth(), ExtendedReal::finite(3.0));
        assert!(Graph::path(6).unwrap().girth().is_infinite());
        assert_eq!(Graph::petersen().girth(), ExtendedReal::finite(5.0));
        assert_eq!(Graph::hypercube(3).unwrap().girth(), ExtendedReal::finite(4.0));
        let (tree, _) = Graph::regular_tree(3, 3).unwrap();
        assert!(tree.girth().is_infinite());
    }

    #[test]
    fn girth_matches_cycle_enumeration() {
        let mut graphs = vec![Graph::petersen(), Graph::hypercube(3).unwrap(), Graph::cycle(7).unwrap()];
        for seed in 0..8 {
            graphs.push(Graph::random_regular(10, 3, seed).unwrap());
        }
        for g in graphs {
            let oracle = girth_oracle(&g).map(|k| k as f64).unwrap_or(f64::INFINITY);
            assert_eq!(g.girth().value(), oracle);
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(2, &[(0, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn generators_have_expected_degrees() {
        let g = Graph::random_regular(12, 3, 7).unwrap();
        assert!((0..12).all(|v| g.degree(v) == 3));
        assert_eq!(Graph::random_regular(12, 3, 7).unwrap(), g);
        let (t, depth) = Graph::regular_tree(3, 5).unwrap();
        assert_eq!(t.len(), 94);
        assert!((0..t.len()).filter(|&v| depth[v] < 5).all(|v| t.degree(v) == 3));
        assert_eq!(Graph::petersen().edge_count(), 15);
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&s).unwrap(), g);
    }
}
