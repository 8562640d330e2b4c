use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pou::{barycentric_expansion, Label, PartitionOfUnity, SparseL1Vector};

/// Dimension `n`, multiplier `m` and target `ε` for integer rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundingParams {
    pub n: usize,
    pub m: u64,
    pub eps: f64,
}

impl RoundingParams {
    /// Smallest admissible multiplier: `m ≥ 2(n+1)/ε + (n+1)(n+2)`.
    pub fn min_multiplier(n: usize, eps: f64) -> u64 {
        let n1 = (n + 1) as f64;
        (2.0 * n1 / eps + n1 * (n1 + 1.0)).ceil() as u64
    }

    pub fn minimal(n: usize, eps: f64) -> Result<Self> {
        Self::new(n, Self::min_multiplier(n, eps), eps)
    }

    pub fn new(n: usize, m: u64, eps: f64) -> Result<Self> {
        if eps <= 0.0 {
            return Err(Error::InvalidArgument(format!("ε must be positive, got {eps}")));
        }
        let n1 = (n + 1) as f64;
        let need = 2.0 * n1 / eps + n1 * (n1 + 1.0);
        if (m as f64) < need {
            return Err(Error::InvalidArgument(format!(
                "m = {m} is below 2(n+1)/ε + (n+1)(n+2) = {need}"
            )));
        }
        Ok(RoundingParams { n, m, eps })
    }
}

/// Output of the rounding split `m·g = G₁ + G₂`.
#[derive(Debug, Clone)]
pub struct RoundingOutput<L: Label> {
    pub m: u64,
    /// Dimension of the input (max carrier size minus one).
    pub n: usize,
    /// Fractional remainder after the correction step.
    pub remainder: Vec<SparseL1Vector<L>>,
    /// Integer part after the correction step; `‖G₂(x)‖ = m`.
    pub integer_part: Vec<BTreeMap<L, u64>>,
    /// `k(x) = Σ_v G₁(x)(v)` before correction.
    pub k_before: Vec<i64>,
    /// `h = normalize(G₂)`.
    pub h: PartitionOfUnity<L>,
    /// Barycentric expansion of `G₂`.
    pub p: PartitionOfUnity<(L, u64)>,
    /// `max_x ‖h(x) − g(x)‖₁`.
    pub max_deviation: f64,
}

/// Splits `m·g` into an integer part with norm exactly `m` and the same
/// carriers, plus a remainder of norm at most `2n + 2`.
///
/// Entries in `(0, 1)` round up, others round down; the resulting norm
/// defect `k(x)` is moved onto the label with the largest integer weight
/// (ties to the least label). All clauses are re-verified.
pub fn round_with_multiplier<L: Label>(g: &PartitionOfUnity<L>, m: u64) -> Result<RoundingOutput<L>> {
    if m == 0 {
        return Err(Error::InvalidArgument("multiplier must be positive".into()));
    }
    let n = g.max_carrier().saturating_sub(1);
    let mf = m as f64;
    let snap = 1e-9 * mf.max(1.0);
    let mut remainder = Vec::with_capacity(g.len());
    let mut integer_part = Vec::with_capacity(g.len());
    let mut k_before = Vec::with_capacity(g.len());

    for (x, v) in g.values().iter().enumerate() {
        let mut g1: BTreeMap<L, f64> = BTreeMap::new();
        let mut g2: BTreeMap<L, u64> = BTreeMap::new();
        for (l, w) in v.iter() {
            let big = mf * w;
            let nearest = big.round();
            let big = if (big - nearest).abs() <= snap { nearest } else { big };
            let int = if big < 1.0 { 1.0 } else { big.floor() };
            g1.insert(l.clone(), big - int);
            g2.insert(l.clone(), int as u64);
        }
        let total: u64 = g2.values().sum();
        let k = m as i64 - total as i64;
        if k.unsigned_abs() as usize > n {
            return Err(Error::Inconsistency(format!(
                "norm defect k = {k} at point {x} is not below n + 1 = {}",
                n + 1
            )));
        }
        k_before.push(k);
        if k != 0 {
            // first maximal entry in label order
            let (w, &gw) = g2
                .iter()
                .fold(None::<(&L, &u64)>, |best, cur| match best {
                    Some(b) if b.1 >= cur.1 => Some(b),
                    _ => Some(cur),
                })
                .expect("nonempty carrier");
            if k < 0 && gw <= k.unsigned_abs() {
                return Err(Error::Inconsistency(format!(
                    "no label at point {x} has integer weight above |k| = {}; m = {m} is too small",
                    -k
                )));
            }
            let w = w.clone();
            *g2.get_mut(&w).unwrap() = (gw as i64 + k) as u64;
            *g1.get_mut(&w).unwrap() -= k as f64;
        }
        remainder.push(g1.into_iter().collect::<SparseL1Vector<L>>());
        integer_part.push(g2);
    }

    let (_, p) = barycentric_expansion(&integer_part)?;
    let h_values: Vec<SparseL1Vector<L>> = integer_part
        .iter()
        .map(|row| row.iter().map(|(l, &c)| (l.clone(), c as f64 / mf)).collect())
        .collect();
    let h = PartitionOfUnity::new(h_values, g.universe().clone(), 1e-9)?;

    let bound = (2 * n + 2) as f64 / mf;
    let mut max_deviation = 0.0f64;
    for x in 0..g.len() {
        let norm: u64 = integer_part[x].values().sum();
        if norm != m {
            return Err(Error::Inconsistency(format!("‖G₂({x})‖ = {norm} ≠ m = {m}")));
        }
        let same_carrier = integer_part[x].len() == g.value(x).carrier_len()
            && integer_part[x]
                .iter()
                .all(|(l, &c)| c > 0 && g.value(x).get(l) > 0.0);
        if !same_carrier {
            return Err(Error::Inconsistency(format!("carrier changed at point {x}")));
        }
        if remainder[x].norm() > (2 * n + 2) as f64 + 1e-9 {
            return Err(Error::Inconsistency(format!(
                "‖G₁({x})‖ = {} exceeds 2n + 2",
                remainder[x].norm()
            )));
        }
        let dev = h.value(x).l1_distance(g.value(x));
        if dev > bound + 1e-9 {
            return Err(Error::Inconsistency(format!(
                "‖h({x}) − g({x})‖ = {dev} exceeds (2n+2)/m = {bound}"
            )));
        }
        max_deviation = max_deviation.max(dev);
    }
    Ok(RoundingOutput {
        m,
        n,
        remainder,
        integer_part,
        k_before,
        h,
        p,
        max_deviation,
    })
}

/// Rounds an `n`-dimensional partition to a nearby one with rational
/// weights over `m`, then expands it to a barycentric partition.
pub fn round_to_barycentric<L: Label>(
    g: &PartitionOfUnity<L>,
    params: RoundingParams,
) -> Result<RoundingOutput<L>> {
    if g.max_carrier() > params.n + 1 {
        return Err(Error::Precondition(format!(
            "partition has a carrier of size {} > n + 1 = {}",
            g.max_carrier(),
            params.n + 1
        )));
    }
    RoundingParams::new(params.n, params.m, params.eps)?;
    round_with_multiplier(g, params.m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(weights: &[(&'static str, f64)]) -> PartitionOfUnity<&'static str> {
        PartitionOfUnity::from_values(vec![SparseL1Vector::from_entries(weights.iter().copied())])
            .unwrap()
    }

    #[test]
    fn already_integral() {
        let g = single(&[("a", 2.0 / 3.0), ("b", 1.0 / 3.0)]);
        let out = round_with_multiplier(&g, 3).unwrap();
        assert_eq!(out.integer_part[0], BTreeMap::from([("a", 2), ("b", 1)]));
        assert!(out.h.approx_eq(&g, 1e-12));
        assert_eq!(out.p.value(0).carrier_len(), 3);
        assert_eq!(out.k_before, vec![0]);
    }

    #[test]
    fn halves_with_tie_break() {
        let g = single(&[("a", 0.5), ("b", 0.5)]);
        let out = round_with_multiplier(&g, 3).unwrap();
        assert_eq!(out.k_before, vec![1]);
        assert_eq!(out.integer_part[0], BTreeMap::from([("a", 2), ("b", 1)]));
        assert!((out.h.value(0).get(&"a") - 2.0 / 3.0).abs() < 1e-12);
        assert!((out.max_deviation - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn barycentric_with_dividing_carrier_is_fixed() {
        let g = single(&[("a", 0.25), ("b", 0.25), ("c", 0.25), ("d", 0.25)]);
        let out = round_with_multiplier(&g, 8).unwrap();
        assert!(out.h.approx_eq(&g, 1e-12));
        assert_eq!(out.max_deviation, 0.0);
    }

    #[test]
    fn negative_defect_moves_mass_off_the_heaviest_label() {
        // 10·(0.05, 0.05, 0.9) = (0.5, 0.5, 9): rounding up gives 11, k = −1
        let g = single(&[("a", 0.05), ("b", 0.05), ("c", 0.9)]);
        let out = round_with_multiplier(&g, 10).unwrap();
        assert_eq!(out.k_before, vec![-1]);
        assert_eq!(out.integer_part[0], BTreeMap::from([("a", 1), ("b", 1), ("c", 8)]));
    }

    #[test]
    fn params_validation() {
        assert_eq!(RoundingParams::min_multiplier(1, 1.0), 4 + 6);
        assert!(RoundingParams::new(1, 9, 1.0).is_err());
        assert!(RoundingParams::new(1, 10, 1.0).is_ok());
        let g = single(&[("a", 0.5), ("b", 0.25), ("c", 0.25)]);
        let params = RoundingParams::minimal(1, 1.0).unwrap();
        assert!(matches!(round_to_barycentric(&g, params), Err(Error::Precondition(_))));
    }
}
