use serde::Serialize;

use crate::constructions::ratio::check_cover;
use crate::error::{Error, Result};
use crate::metric::{Cover, ExtendedReal, FiniteMetricSpace};
use crate::pou::{lebesgue, lipschitz_number, Label, PartitionOfUnity, SparseL1Vector};

/// Verified numbers of an averaging run.
#[derive(Debug, Clone, Serialize)]
pub struct AveragingReport {
    /// Measured Lipschitz number of the input partition.
    pub delta: f64,
    pub cobound: f64,
    pub lebesgue: ExtendedReal,
    /// Largest `‖g(x) − g(y)‖ − (δ(2(M + 1/ε) + d) + δ)`; never positive.
    pub max_excess: f64,
    /// Whether the tighter `δ(2M + d) + δ` also held on every pair.
    pub tight_bound_held: bool,
    /// Whether `g` came out `(ε, ε)`-Lipschitz.
    pub eps_lipschitz: bool,
}

/// Averages `f` over basepoints of nearby cover elements:
/// `g(x) = Σ_{s ∈ S(x)} f(x_s) / |S(x)|` with `S(x) = hor(B(x, 1/ε), U)`.
///
/// `cobound` is `M`: every element must have diameter `< M`, and `M > 1/2`.
/// The input must be `(δ, δ)`-Lipschitz with `δ < ε/(2M + 1)`. Basepoints
/// default to each element's lowest-index point.
///
/// Verified on return: `Leb(g) ≥ 1/ε`, and for every pair
/// `‖g(x) − g(y)‖ ≤ δ(2(M + 1/ε) + d(x, y)) + δ`. The `1/ε` inside the bound
/// accounts for basepoints of elements that only meet `B(x, 1/ε)`.
pub fn average_pou<L: Label>(
    space: &FiniteMetricSpace,
    f: &PartitionOfUnity<L>,
    cover: &Cover,
    basepoints: Option<&[usize]>,
    eps: f64,
    cobound: f64,
) -> Result<(PartitionOfUnity<L>, AveragingReport)> {
    check_cover(space, cover)?;
    f.check_space(space)?;
    if eps <= 0.0 {
        return Err(Error::InvalidArgument(format!("ε must be positive, got {eps}")));
    }
    if cobound <= 0.5 {
        return Err(Error::Precondition(format!("need M > 1/2, got M = {cobound}")));
    }
    let diam = cover.diameter(space).value();
    if !space.lt(diam, cobound) {
        return Err(Error::Precondition(format!(
            "cover is not {cobound}-cobounded: diameter {diam}"
        )));
    }
    let bases: Vec<usize> = match basepoints {
        Some(b) => {
            if b.len() != cover.len() {
                return Err(Error::InvalidArgument(format!(
                    "{} basepoints for {} elements",
                    b.len(),
                    cover.len()
                )));
            }
            for (s, &p) in b.iter().enumerate() {
                if !cover.contains(s, p) {
                    return Err(Error::InvalidArgument(format!(
                        "basepoint {p} is not in element {:?}",
                        cover.label(s)
                    )));
                }
            }
            b.to_vec()
        }
        None => (0..cover.len()).map(|s| cover.element(s)[0]).collect(),
    };
    let delta = lipschitz_number(space, f);
    let level = eps / (2.0 * cobound + 1.0);
    if !(delta < level) {
        return Err(Error::Precondition(format!(
            "input is only {delta}-Lipschitz; need δ < ε/(2M+1) = {level}"
        )));
    }

    let reach = 1.0 / eps;
    let values: Vec<SparseL1Vector<L>> = (0..space.len())
        .map(|x| {
            let near = cover.ball_horizon(space, x, reach);
            let k = near.len() as f64;
            let mut acc = SparseL1Vector::new();
            for &s in &near.indices {
                for (l, w) in f.value(bases[s]).iter() {
                    acc.add(l.clone(), w / k);
                }
            }
            acc
        })
        .collect();
    let g = PartitionOfUnity::new(values, f.universe().clone(), space.tol().max(1e-9))?;

    let leb = lebesgue(space, &g);
    if !space.le(reach, leb.value()) {
        return Err(Error::Inconsistency(format!(
            "averaged partition has Lebesgue number {leb} < 1/ε = {reach}"
        )));
    }
    let mut max_excess = f64::NEG_INFINITY;
    let mut tight = true;
    let mut eps_lip = true;
    for x in 0..space.len() {
        for y in x + 1..space.len() {
            let d = space.d(x, y);
            let gap = g.distance(x, y);
            let bound = delta * (2.0 * (cobound + reach) + d) + delta;
            max_excess = max_excess.max(gap - bound);
            tight &= space.le(gap, delta * (2.0 * cobound + d) + delta);
            eps_lip &= space.le(gap, eps * d + eps);
        }
    }
    if max_excess > space.tol() {
        return Err(Error::Inconsistency(format!(
            "averaged partition exceeds its Lipschitz bound by {max_excess}"
        )));
    }
    Ok((
        g,
        AveragingReport {
            delta,
            cobound,
            lebesgue: leb,
            max_excess: if max_excess.is_finite() { max_excess } else { 0.0 },
            tight_bound_held: tight,
            eps_lipschitz: eps_lip,
        },
    ))
}
