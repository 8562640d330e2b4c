use crate::error::{Error, Result};
use crate::metric::{Cover, CoverElement, ExtendedReal, FiniteMetricSpace};
use crate::pou::{barycentric_from_cover, coboundedness, lebesgue, PartitionOfUnity};

/// Output of [`levin_pou`] with its verified numbers.
#[derive(Debug, Clone)]
pub struct LevinOutput {
    pub partition: PartitionOfUnity<String>,
    pub cover: Cover,
    pub coboundedness: ExtendedReal,
    pub lebesgue: ExtendedReal,
}

/// Barycentric partition from an `r`-dense ordered subset `dense`.
///
/// With `U_n = B(x_n, 2r)`, `V_n = U_n \ ⋃_{i<n} U_i` and
/// `W_n = B(V_n, r) ∪ V_n`, the induced partition of `{W_n}` (empty `V_n`
/// dropped) is `6r`-cobounded with Lebesgue number at least `r`. Both bounds
/// are checked before returning. Element labels are the indices of the
/// generating points within `dense`.
pub fn levin_pou(space: &FiniteMetricSpace, dense: &[usize], r: f64) -> Result<LevinOutput> {
    if r <= 0.0 {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    space.check_points(dense)?;
    let n = space.len();
    if let Some(x) = (0..n).find(|&x| !dense.iter().any(|&s| space.lt(space.d(x, s), r))) {
        return Err(Error::Precondition(format!(
            "dense set is not {r}-dense: point {x} is at distance ≥ {r} from every member"
        )));
    }
    let mut claimed = vec![false; n];
    let mut elements = Vec::new();
    for (idx, &center) in dense.iter().enumerate() {
        let fresh: Vec<usize> = space
            .ball_unchecked(center, 2.0 * r)
            .into_iter()
            .filter(|&y| !claimed[y])
            .collect();
        if fresh.is_empty() {
            continue;
        }
        for &y in &fresh {
            claimed[y] = true;
        }
        elements.push(CoverElement {
            label: idx.to_string(),
            points: space.neighborhood(&fresh, r),
        });
    }
    let cover = Cover::new(space, elements)?;
    let partition = barycentric_from_cover(&cover);
    let cob = coboundedness(space, &partition);
    let leb = lebesgue(space, &partition);
    if !space.le(cob.value(), 6.0 * r) {
        return Err(Error::Inconsistency(format!(
            "Levin partition has coboundedness {cob} > 6r = {}",
            6.0 * r
        )));
    }
    if !space.le(r, leb.value()) {
        return Err(Error::Inconsistency(format!(
            "Levin partition has Lebesgue number {leb} < r = {r}"
        )));
    }
    Ok(LevinOutput {
        partition,
        cover,
        coboundedness: cob,
        lebesgue: leb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_line_trace() {
        let x = FiniteMetricSpace::unit_line(4);
        let out = levin_pou(&x, &[0, 1, 2, 3], 1.0).unwrap();
        assert_eq!(out.cover.sets(), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(out.lebesgue, ExtendedReal::finite(1.0));
        assert_eq!(out.coboundedness, ExtendedReal::finite(1.0));
    }

    #[test]
    fn single_point() {
        let x = FiniteMetricSpace::unit_line(1);
        let out = levin_pou(&x, &[0], 0.5).unwrap();
        assert_eq!(out.cover.sets(), vec![vec![0]]);
    }

    #[test]
    fn rejects_sparse_subset() {
        let x = FiniteMetricSpace::unit_line(4);
        assert!(matches!(levin_pou(&x, &[0], 1.0), Err(Error::Precondition(_))));
    }
}
