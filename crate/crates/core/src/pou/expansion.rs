use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, DEFAULT_TOL};
use crate::pou::{coboundedness, Label, PartitionOfUnity, SparseL1Vector};

/// Barycentric expansion of an integer-valued function with constant norm.
///
/// Each label `v` with multiplicity `F(x)(v)` is split into atoms
/// `(v, 1), .., (v, F(x)(v))`, each carrying weight `1/m`. Contracting along
/// `(v, i) ↦ v` gives back `normalize(F)`, and `l1` distances between points
/// are unchanged.
pub fn barycentric_expansion<L: Label>(
    counts: &[BTreeMap<L, u64>],
) -> Result<(u64, PartitionOfUnity<(L, u64)>)> {
    let mut norm = None;
    for (x, row) in counts.iter().enumerate() {
        let s: u64 = row.values().sum();
        match norm {
            None => norm = Some(s),
            Some(m) if m != s => {
                return Err(Error::InvalidArgument(format!(
                    "norm {s} at point {x} differs from {m} at point 0"
                )))
            }
            _ => {}
        }
    }
    let m = norm.ok_or(Error::Empty("expansion of an empty function"))?;
    if m == 0 {
        return Err(Error::InvalidArgument("expansion of the zero function".into()));
    }
    let w = 1.0 / m as f64;
    let values = counts
        .iter()
        .map(|row| {
            row.iter()
                .flat_map(|(v, &k)| (1..=k).map(move |i| ((v.clone(), i), w)))
                .collect::<SparseL1Vector<_>>()
        })
        .collect();
    Ok((m, PartitionOfUnity::from_values(values)?))
}

/// Validates that real-valued input is a nonnegative integer function and
/// converts it for [`barycentric_expansion`].
pub fn integer_counts<L: Label>(values: &[SparseL1Vector<L>]) -> Result<Vec<BTreeMap<L, u64>>> {
    values
        .iter()
        .enumerate()
        .map(|(x, v)| {
            v.iter()
                .map(|(l, w)| {
                    let k = w.round();
                    if w < 0.0 || (w - k).abs() > DEFAULT_TOL {
                        Err(Error::InvalidArgument(format!(
                            "entry {w} on label {l:?} at point {x} is not a nonnegative integer"
                        )))
                    } else {
                        Ok((l.clone(), k as u64))
                    }
                })
                .collect()
        })
        .collect()
}

/// The projection `(v, i) ↦ v` on the expansion's universe.
pub fn expansion_projection<L: Label>(g: &PartitionOfUnity<(L, u64)>) -> BTreeMap<(L, u64), L> {
    g.universe().iter().map(|l| (l.clone(), l.0.clone())).collect()
}

/// Injective relabelling `α : V → X × ℕ` and the contracted partition
/// `g = α_* ∘ f` whose star preimages satisfy `g⁻¹(st(x, n)) ⊆ B(x, M)`.
///
/// `α(w) = (x(w), n)` where `x(w)` is the lowest-index point carrying `w`
/// and `n` is the 1-based position of `w` in that point's carrier.
#[allow(clippy::type_complexity)]
pub fn relabel_product<L: Label>(
    space: &FiniteMetricSpace,
    f: &PartitionOfUnity<L>,
    bound: f64,
) -> Result<(BTreeMap<L, (usize, usize)>, PartitionOfUnity<(usize, usize)>)> {
    f.check_space(space)?;
    let preimages = f.star_preimages();
    if let Some(w) = f.universe().iter().find(|w| !preimages.contains_key(*w)) {
        return Err(Error::Precondition(format!(
            "label {w:?} has an empty star preimage"
        )));
    }
    let cob = coboundedness(space, f);
    if !space.lt(cob.value(), bound) {
        return Err(Error::Precondition(format!(
            "partition is not {bound}-cobounded: a star preimage has diameter {cob}"
        )));
    }
    let mut alpha = BTreeMap::new();
    for (w, pre) in &preimages {
        let base = pre[0];
        let n = f
            .value(base)
            .carrier()
            .position(|l| l == w)
            .expect("base point carries w")
            + 1;
        alpha.insert(w.clone(), (base, n));
    }
    let g = f.contract(&alpha)?;
    for (&(x, n), pre) in &g.star_preimages() {
        if let Some(&y) = pre.iter().find(|&&y| !space.lt(space.d(x, y), bound)) {
            return Err(Error::Inconsistency(format!(
                "g⁻¹(st({x},{n})) contains {y} outside B({x}, {bound})"
            )));
        }
    }
    Ok((alpha, g))
}
