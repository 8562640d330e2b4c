use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count searched exhaustively by default.
pub const CHEEGER_EXACT_CAP: usize = 22;

/// `h(G) = min |∂A| / |A|` over `0 < |A| ≤ n/2`, with a minimizing set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerResult {
    pub h: Ratio<u64>,
    pub set: Vec<usize>,
    /// `false` for the sweep heuristic, whose `h` is only an upper bound.
    pub exact: bool,
}

/// Whether `a` precedes `b` as sorted vertex lists.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff & diff.wrapping_neg();
    if a & low != 0 {
        // a has the first differing vertex; b is smaller only if it ends there
        b & !(low - 1) != 0
    } else {
        a & !(low - 1) == 0
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Exhaustive Cheeger constant with the default cap.
pub fn cheeger_constant(g: &Graph) -> Result<CheegerResult> {
    cheeger_constant_with_cap(g, CHEEGER_EXACT_CAP)
}

/// Exhaustive search over all subsets of at most half the vertices;
/// returns the lexicographically least minimizer.
pub fn cheeger_constant_with_cap(g: &Graph, cap: usize) -> Result<CheegerResult> {
    let n = g.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Cheeger constant needs at least 2 vertices, got {n}"
        )));
    }
    if n > cap.min(63) {
        return Err(Error::Infeasible(format!(
            "{n} vertices exceed the exact-search cap {cap}; use the sweep heuristic"
        )));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let half = n / 2;
    let mut best: Option<(u64, u64, u64)> = None; // (boundary, size, mask)
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as u64;
        if size as usize > half {
            continue;
        }
        let mut boundary = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            boundary += (adj[v] & !mask).count_ones() as u64;
        }
        let better = match best {
            None => true,
            Some((bb, bs, bm)) => {
                let lhs = boundary * bs;
                let rhs = bb * size;
                lhs < rhs || (lhs == rhs && lex_less(mask, bm))
            }
        };
        if better {
            best = Some((boundary, size, mask));
        }
    }
    let (b, s, m) = best.expect("n ≥ 2 gives a singleton");
    Ok(CheegerResult {
        h: Ratio::new(b, s),
        set: bits(m),
        exact: true,
    })
}

/// Upper bound on `h(G)` from prefixes of BFS orders started at every
/// vertex. Labelled non-exact.
pub fn cheeger_sweep(g: &Graph) -> Result<CheegerResult> {
    let n = g.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Cheeger constant needs at least 2 vertices, got {n}"
        )));
    }
    let mut best: Option<(Ratio<u64>, Vec<usize>)> = None;
    for root in 0..n {
        let dist = g.bfs(root);
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[v].is_some()).collect();
        order.sort_by_key(|&v| (dist[v], v));
        let mut inside = vec![false; n];
        let mut boundary: i64 = 0;
        for (k, &v) in order.iter().take(n / 2).enumerate() {
            inside[v] = true;
            for &w in g.neighbors(v) {
                boundary += if inside[w] { -1 } else { 1 };
            }
            let h = Ratio::new(boundary as u64, (k + 1) as u64);
            let mut set = order[..=k].to_vec();
            set.sort_unstable();
            if best.as_ref().is_none_or(|(bh, bs)| h < *bh || (h == *bh && set < *bs)) {
                best = Some((h, set));
            }
        }
    }
    let (h, set) = best.expect("n ≥ 2");
    Ok(CheegerResult { h, set, exact: false })
}

/// Expander test: maximum degree at most `k` and `h(G) ≥ ε`.
pub fn expander_check(g: &Graph, k: usize, eps: f64) -> Result<bool> {
    let h = cheeger_constant(g)?;
    let hv = *h.h.numer() as f64 / *h.h.denom() as f64;
    Ok(g.max_degree() <= k && hv >= eps - 1e-12)
}
