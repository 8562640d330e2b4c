use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::pou::{
    barycentric_from_carriers, coboundedness, lipschitz_number, relabel_product, Label,
    PartitionOfUnity,
};

/// A finite-subset witness: `A(x) ⊆ B(x, S) × ℕ` for each point `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyAWitness {
    #[serde(rename = "S_bound")]
    pub s_bound: f64,
    pub sets: Vec<BTreeSet<(usize, usize)>>,
}

/// Result of checking a witness at scale `R` and ratio `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessCheck {
    /// Every `A(x)` is nonempty and lies in `B(x, S) × ℕ`.
    pub containment: bool,
    /// For all `d(x, y) < R`: `A(x) ∩ A(y) ≠ ∅` and `|A(x) Δ A(y)| < ε·|A(x) ∩ A(y)|`.
    pub overlap: bool,
    /// Largest `|Δ| / |∩|` over pairs with `d < R` (infinite when some pair is disjoint).
    pub worst_ratio: f64,
    /// A pair violating the overlap clause, if any.
    pub offending_pair: Option<(usize, usize)>,
}

impl WitnessCheck {
    pub fn holds(&self) -> bool {
        self.containment && self.overlap
    }
}

fn overlap_counts(a: &BTreeSet<(usize, usize)>, b: &BTreeSet<(usize, usize)>) -> (usize, usize) {
    let common = a.intersection(b).count();
    (a.len() + b.len() - 2 * common, common)
}

/// Evaluates both witness clauses; `ratio_bound` plays the role of `ε`.
pub fn check_witness(
    space: &FiniteMetricSpace,
    witness: &PropertyAWitness,
    scale: f64,
    ratio_bound: f64,
) -> Result<WitnessCheck> {
    if witness.sets.len() != space.len() {
        return Err(Error::InvalidArgument(format!(
            "witness has {} sets for {} points",
            witness.sets.len(),
            space.len()
        )));
    }
    let containment = witness.sets.iter().enumerate().all(|(x, a)| {
        !a.is_empty()
            && a.iter()
                .all(|&(y, _)| y < space.len() && space.lt(space.d(x, y), witness.s_bound))
    });
    let mut worst = 0.0f64;
    let mut offending = None;
    for x in 0..space.len() {
        for y in x + 1..space.len() {
            if !space.lt(space.d(x, y), scale) {
                continue;
            }
            let (sym, common) = overlap_counts(&witness.sets[x], &witness.sets[y]);
            let ratio = if common == 0 {
                f64::INFINITY
            } else {
                sym as f64 / common as f64
            };
            worst = worst.max(ratio);
            let ok = common > 0 && (sym as f64) < ratio_bound * common as f64;
            if !ok && offending.is_none() {
                offending = Some((x, y));
            }
        }
    }
    Ok(WitnessCheck {
        containment,
        overlap: offending.is_none(),
        worst_ratio: worst,
        offending_pair: offending,
    })
}

/// `min(ε, 1/2) / (R + 1)`: the Lipschitz level a barycentric partition
/// needs for [`pou_to_witness`] at `(R, ε)`.
pub fn witness_lipschitz_level(scale: f64, eps: f64) -> f64 {
    eps.min(0.5) / (scale + 1.0)
}

/// Converts a cobounded barycentric partition with small Lipschitz number
/// into a witness at `(R, ε)`.
///
/// The partition is relabelled into `X × ℕ` so each label is anchored at a
/// point within `bound` of everything carrying it; `A(x)` is the relabelled
/// carrier. `bound` defaults to the coboundedness plus one. Both witness
/// clauses are re-verified before returning.
pub fn pou_to_witness<L: Label>(
    space: &FiniteMetricSpace,
    f: &PartitionOfUnity<L>,
    scale: f64,
    eps: f64,
    bound: Option<f64>,
) -> Result<PropertyAWitness> {
    if scale <= 0.0 || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "R and ε must be positive, got R = {scale}, ε = {eps}"
        )));
    }
    f.check_space(space)?;
    if !f.is_barycentric(space.tol()) {
        return Err(Error::Precondition("partition is not barycentric".into()));
    }
    let level = witness_lipschitz_level(scale, eps);
    let lip = lipschitz_number(space, f);
    if !space.le(lip, level) {
        return Err(Error::Precondition(format!(
            "Lipschitz number {lip} exceeds min(ε, 1/2)/(R+1) = {level}"
        )));
    }
    let bound = bound.unwrap_or_else(|| coboundedness(space, f).value() + 1.0);
    let (_, g) = relabel_product(space, f, bound)?;
    let witness = PropertyAWitness {
        s_bound: bound,
        sets: g
            .values()
            .iter()
            .map(|v| v.carrier().copied().collect())
            .collect(),
    };
    let check = check_witness(space, &witness, scale, eps)?;
    if !check.holds() {
        return Err(Error::Inconsistency(format!(
            "witness from a {lip}-Lipschitz partition fails its clauses: {check:?}"
        )));
    }
    Ok(witness)
}

/// Converts a witness into the barycentric partition `χ_{A(x)}/|A(x)|`.
///
/// Requires, for `d(x, y) < (2 − ε)/ε`, nonempty overlaps with
/// `|Δ| < (ε/2)·|∩|`. The output is verified `(ε, ε)`-Lipschitz; its star
/// preimages lie in `S`-balls around their anchor, so its coboundedness is
/// verified below `2S`.
pub fn witness_to_pou(
    space: &FiniteMetricSpace,
    witness: &PropertyAWitness,
    eps: f64,
) -> Result<PartitionOfUnity<(usize, usize)>> {
    if !(eps > 0.0 && eps < 2.0) {
        return Err(Error::InvalidArgument(format!("ε must lie in (0, 2), got {eps}")));
    }
    let threshold = (2.0 - eps) / eps;
    let check = check_witness(space, witness, threshold, eps / 2.0)?;
    if !check.containment {
        return Err(Error::Precondition(format!(
            "some A(x) is empty or leaves B(x, {})",
            witness.s_bound
        )));
    }
    if let Some((x, y)) = check.offending_pair {
        return Err(Error::Precondition(format!(
            "pair ({x},{y}) at distance {} < (2−ε)/ε = {threshold} has overlap ratio {} ≥ ε/2",
            space.d(x, y),
            {
                let (sym, common) = overlap_counts(&witness.sets[x], &witness.sets[y]);
                if common == 0 { f64::INFINITY } else { sym as f64 / common as f64 }
            }
        )));
    }
    let f = barycentric_from_carriers(
        witness
            .sets
            .iter()
            .map(|a| a.iter().copied().collect())
            .collect(),
    )?;
    let lip = lipschitz_number(space, &f);
    if !space.le(lip, eps) {
        return Err(Error::Inconsistency(format!(
            "partition from witness has Lipschitz number {lip} > ε = {eps}"
        )));
    }
    let cob = coboundedness(space, &f);
    if !space.lt(cob.value(), 2.0 * witness.s_bound) {
        return Err(Error::Inconsistency(format!(
            "partition from witness has coboundedness {cob} ≥ 2S"
        )));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pou::SparseL1Vector;

    #[test]
    fn constant_partition_gives_constant_witness() {
        let x = FiniteMetricSpace::unit_line(4);
        let f = barycentric_from_carriers(vec![vec!["a", "b"]; 4]).unwrap();
        let w = pou_to_witness(&x, &f, 3.0, 0.5, None).unwrap();
        assert!(w.sets.windows(2).all(|p| p[0] == p[1]));
        let check = check_witness(&x, &w, 3.0, 0.5).unwrap();
        assert_eq!(check.worst_ratio, 0.0);
    }

    #[test]
    fn distinct_deltas_fail_the_lipschitz_precondition() {
        let x = FiniteMetricSpace::unit_line(2);
        let f = barycentric_from_carriers(vec![vec!["a"], vec!["b"]]).unwrap();
        let err = pou_to_witness(&x, &f, 1.0, 0.1, None).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(err.to_string().contains("Lipschitz number 1"), "{err}");
    }

    #[test]
    fn sparse_deltas_witness() {
        // min positive distance 3 ≥ (2 − ε)/ε for ε = 0.5
        let x = FiniteMetricSpace::from_line(&[0.0, 3.0, 6.0]).unwrap();
        let w = PropertyAWitness {
            s_bound: 1.0,
            sets: (0..3).map(|p| BTreeSet::from([(p, 1)])).collect(),
        };
        let f = witness_to_pou(&x, &w, 0.5).unwrap();
        for p in 0..3 {
            assert_eq!(f.value(p), &SparseL1Vector::delta((p, 1)));
        }
    }

    #[test]
    fn constant_witness_gives_constant_partition() {
        let x = FiniteMetricSpace::unit_line(3);
        let w = PropertyAWitness {
            s_bound: 3.0,
            sets: vec![BTreeSet::from([(1, 1), (1, 2)]); 3],
        };
        let f = witness_to_pou(&x, &w, 0.5).unwrap();
        assert_eq!(lipschitz_number(&x, &f), 0.0);
    }

    #[test]
    fn witness_precondition_reports_pair() {
        let x = FiniteMetricSpace::unit_line(2);
        let w = PropertyAWitness {
            s_bound: 1.0,
            sets: vec![BTreeSet::from([(0, 1)]), BTreeSet::from([(1, 1)])],
        };
        let err = witness_to_pou(&x, &w, 0.5).unwrap_err();
        assert!(err.to_string().contains("(0,1)"), "{err}");
    }
}
