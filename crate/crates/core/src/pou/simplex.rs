use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pou::Label;

/// Exact bounds relating set overlap to the `l1` distance between the
/// uniform vectors `χ_A/|A|` and `χ_B/|B|`.
///
/// `lower1 ≤ lower2 ≤ exact ≤ upper` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimplexBounds {
    /// `|A Δ B| / max(|A|, |B|)`
    pub lower1: Ratio<u64>,
    /// `|A \ B|/|A| + |B \ A|/|B|`
    pub lower2: Ratio<u64>,
    /// `‖χ_A/|A| − χ_B/|B|‖₁`
    pub exact: Ratio<u64>,
    /// `2 |A Δ B| / min(|A|, |B|)`
    pub upper: Ratio<u64>,
}

impl SimplexBounds {
    pub fn is_sandwich(&self) -> bool {
        self.lower1 <= self.lower2 && self.lower2 <= self.exact && self.exact <= self.upper
    }
}

pub fn simplex_bounds<L: Label>(a: &BTreeSet<L>, b: &BTreeSet<L>) -> Result<SimplexBounds> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("simplex bounds need nonempty sets"));
    }
    let na = a.len() as u64;
    let nb = b.len() as u64;
    let common = a.intersection(b).count() as u64;
    let a_only = na - common;
    let b_only = nb - common;
    let sym = a_only + b_only;
    let lower2 = Ratio::new(a_only, na) + Ratio::new(b_only, nb);
    // Shared labels carry |1/|A| − 1/|B|| each.
    let gap = if na >= nb {
        Ratio::new(1, nb) - Ratio::new(1, na)
    } else {
        Ratio::new(1, na) - Ratio::new(1, nb)
    };
    Ok(SimplexBounds {
        lower1: Ratio::new(sym, na.max(nb)),
        lower2,
        exact: lower2 + gap * common,
        upper: Ratio::new(2 * sym, na.min(nb)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    fn r(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn examples() {
        let b = simplex_bounds(&set(&[1, 2]), &set(&[1, 2])).unwrap();
        assert_eq!((b.lower1, b.lower2, b.exact, b.upper), (r(0, 1), r(0, 1), r(0, 1), r(0, 1)));

        let b = simplex_bounds(&set(&[1, 2]), &set(&[2, 3])).unwrap();
        assert_eq!((b.lower1, b.lower2, b.exact, b.upper), (r(1, 1), r(1, 1), r(1, 1), r(2, 1)));

        let b = simplex_bounds(&set(&[1]), &set(&[2])).unwrap();
        assert_eq!((b.lower1, b.lower2, b.exact, b.upper), (r(2, 1), r(2, 1), r(2, 1), r(4, 1)));

        assert!(simplex_bounds(&set(&[]), &set(&[1])).is_err());
    }
}
