use std::collections::BTreeMap;
use std::fmt::Debug;

/// Anything usable as an `l1` coordinate label.
pub trait Label: Ord + Clone + Debug {}

impl<T: Ord + Clone + Debug> Label for T {}

/// A finitely supported real vector in `l1(V)`. Zero entries are never
/// stored, so the key set is exactly the carrier.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseL1Vector<L: Label> {
    weights: BTreeMap<L, f64>,
}

impl<L: Label> SparseL1Vector<L> {
    pub fn new() -> Self {
        SparseL1Vector {
            weights: BTreeMap::new(),
        }
    }

    /// Sums repeated labels and drops zero entries.
    pub fn from_entries<I: IntoIterator<Item = (L, f64)>>(entries: I) -> Self {
        let mut v = Self::new();
        for (l, w) in entries {
            v.add(l, w);
        }
        v
    }

    pub fn delta(label: L) -> Self {
        Self::from_entries([(label, 1.0)])
    }

    /// Uniform weight `1/|C|` on the carrier `C`.
    pub fn uniform<I: IntoIterator<Item = L>>(carrier: I) -> Self {
        let labels: Vec<L> = carrier.into_iter().collect();
        let w = 1.0 / labels.len() as f64;
        Self::from_entries(labels.into_iter().map(|l| (l, w)))
    }

    pub fn add(&mut self, label: L, w: f64) {
        if w == 0.0 {
            return;
        }
        let slot = self.weights.entry(label.clone()).or_insert(0.0);
        *slot += w;
        if *slot == 0.0 {
            self.weights.remove(&label);
        }
    }

    pub fn get(&self, label: &L) -> f64 {
        self.weights.get(label).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, f64)> {
        self.weights.iter().map(|(l, &w)| (l, w))
    }

    pub fn carrier(&self) -> impl Iterator<Item = &L> {
        self.weights.keys()
    }

    pub fn carrier_len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.weights.values().map(|w| w.abs()).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.values().all(|&w| w >= 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_entries(self.iter().map(|(l, w)| (l.clone(), w * factor)))
    }

    /// `‖self − other‖₁` by a merge over both carriers.
    pub fn l1_distance(&self, other: &Self) -> f64 {
        let mut a = self.weights.iter().peekable();
        let mut b = other.weights.iter().peekable();
        let mut total = 0.0;
        loop {
            match (a.peek(), b.peek()) {
                (Some((la, wa)), Some((lb, wb))) => match la.cmp(lb) {
                    std::cmp::Ordering::Less => {
                        total += wa.abs();
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        total += wb.abs();
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        total += (*wa - *wb).abs();
                        a.next();
                        b.next();
                    }
                },
                (Some((_, wa)), None) => {
                    total += wa.abs();
                    a.next();
                }
                (None, Some((_, wb))) => {
                    total += wb.abs();
                    b.next();
                }
                (None, None) => return total,
            }
        }
    }

    /// Pushforward along `alpha`: weights of a fibre are summed.
    pub fn map_labels<M: Label, F: FnMut(&L) -> M>(&self, mut alpha: F) -> SparseL1Vector<M> {
        SparseL1Vector::from_entries(self.iter().map(|(l, w)| (alpha(l), w)))
    }

    /// Entrywise equality within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.weights.len() == other.weights.len()
            && self
                .weights
                .iter()
                .all(|(l, &w)| other.weights.get(l).is_some_and(|&v| (w - v).abs() <= tol))
    }
}

impl<L: Label> FromIterator<(L, f64)> for SparseL1Vector<L> {
    fn from_iter<I: IntoIterator<Item = (L, f64)>>(iter: I) -> Self {
        Self::from_entries(iter)
    }
}
