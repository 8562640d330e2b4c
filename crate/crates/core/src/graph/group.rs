use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pou::{lipschitz_number, simplex_bounds, PartitionOfUnity, SparseL1Vector};

/// Largest group order [`product_group_space`] will build.
pub const PRODUCT_VERTEX_CAP: usize = 1 << 16;

/// A finite group on `0..order` with a symmetric generating set.
pub trait Group {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> &[usize];
}

/// Cayley graph with edges `x — x·σ` for generators `σ ≠ 1`.
pub fn cayley_graph<G: Group + ?Sized>(group: &G) -> Result<Graph> {
    let mut edges = BTreeSet::new();
    for x in 0..group.order() {
        for &s in group.generators() {
            if s == group.identity() {
                continue;
            }
            let y = group.mul(x, s);
            edges.insert((x.min(y), x.max(y)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::new(group.order(), &edges)
}

/// Group given by its multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    /// Set when inverses had to be added to the supplied generators.
    pub notice: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    generators: Vec<usize>,
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GroupFile {
            order: self.order(),
            table: self.table.clone(),
            identity: self.identity,
            generators: self.generators.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let f = GroupFile::deserialize(de)?;
        if f.table.len() != f.order {
            return Err(serde::de::Error::custom(format!(
                "table has {} rows but order is {}",
                f.table.len(),
                f.order
            )));
        }
        FiniteGroup::new(f.table, f.identity, f.generators).map_err(serde::de::Error::custom)
    }
}

impl FiniteGroup {
    /// Validates the group axioms, symmetrizes the generators and checks
    /// that they generate.
    pub fn new(table: Vec<Vec<usize>>, identity: usize, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(b) = row.iter().position(|&c| c >= n) {
                return Err(Error::InvalidGroup(format!("product {a}·{b} = {} out of range", row[b])));
            }
        }
        if identity >= n {
            return Err(Error::InvalidGroup(format!("identity {identity} out of range")));
        }
        for (a, row) in table.iter().enumerate() {
            if table[identity][a] != a || row[identity] != a {
                return Err(Error::InvalidGroup(format!("{identity} is not an identity for {a}")));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses[a] = b,
                None => return Err(Error::InvalidGroup(format!("{a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        if let Some(&s) = generators.iter().find(|&&s| s >= n) {
            return Err(Error::InvalidGroup(format!("generator {s} out of range")));
        }
        let given: BTreeSet<usize> = generators.iter().copied().collect();
        let sym: BTreeSet<usize> = given.iter().flat_map(|&s| [s, inverses[s]]).collect();
        let notice = (sym.len() > given.len()).then(|| {
            format!(
                "added inverses {:?} to the generating set",
                sym.difference(&given).collect::<Vec<_>>()
            )
        });
        let group = FiniteGroup {
            table,
            identity,
            generators: sym.into_iter().collect(),
            inverses,
            notice,
        };
        if !cayley_graph(&group)?.is_connected() {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        Ok(group)
    }

    /// `ℤ/n` with generators `±1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group needs n ≥ 1".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(table, 0, vec![1 % n, (n - 1) % n])
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

impl Group for FiniteGroup {
    fn order(&self) -> usize {
        self.table.len()
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
    fn generators(&self) -> &[usize] {
        &self.generators
    }
}

/// `Gⁿ` with elements encoded as base-`|G|` digit strings (factor 0 is the
/// least significant digit) and generators `(1, …, σ, …, 1)`.
#[derive(Debug, Clone)]
pub struct ProductGroup {
    factor: FiniteGroup,
    n: usize,
    order: usize,
    generators: Vec<usize>,
}

impl ProductGroup {
    pub fn new(factor: FiniteGroup, n: usize) -> Result<Self> {
        let k = factor.order();
        if k < 2 {
            return Err(Error::InvalidArgument("factor group must be nontrivial".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one factor".into()));
        }
        let order = (0..n)
            .try_fold(1usize, |acc, _| acc.checked_mul(k).filter(|&o| o <= PRODUCT_VERTEX_CAP))
            .ok_or_else(|| {
                Error::Infeasible(format!("|G|^n = {k}^{n} exceeds the cap {PRODUCT_VERTEX_CAP}"))
            })?;
        let mut product = ProductGroup {
            factor,
            n,
            order,
            generators: Vec::new(),
        };
        let id = product.identity();
        let mut gens = Vec::new();
        for i in 0..n {
            for &s in product.factor.generators() {
                if s != product.factor.identity() {
                    gens.push(product.with_digit(id, i, s));
                }
            }
        }
        gens.sort_unstable();
        product.generators = gens;
        Ok(product)
    }

    pub fn factor(&self) -> &FiniteGroup {
        &self.factor
    }

    pub fn factors(&self) -> usize {
        self.n
    }

    pub fn digits(&self, x: usize) -> Vec<usize> {
        let k = self.factor.order();
        (0..self.n).map(|i| x / k.pow(i as u32) % k).collect()
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        let k = self.factor.order();
        digits.iter().rev().fold(0, |acc, &d| acc * k + d)
    }

    fn with_digit(&self, x: usize, i: usize, d: usize) -> usize {
        let mut ds = self.digits(x);
        ds[i] = d;
        self.encode(&ds)
    }
}

impl Group for ProductGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        self.encode(&vec![self.factor.identity(); self.n])
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let d: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| self.factor.mul(x, y)).collect();
        self.encode(&d)
    }
    fn inv(&self, a: usize) -> usize {
        let d: Vec<usize> = self.digits(a).iter().map(|&x| self.factor.inv(x)).collect();
        self.encode(&d)
    }
    fn generators(&self) -> &[usize] {
        &self.generators
    }
}

/// Builds `Gⁿ` and its Cayley graph, verifying that the word metric is the
/// `l1` sum of the factor word metrics. By left invariance it suffices to
/// compare distances from the identity to every element.
pub fn product_group_space(factor: &FiniteGroup, n: usize) -> Result<(ProductGroup, Graph)> {
    let product = ProductGroup::new(factor.clone(), n)?;
    let graph = cayley_graph(&product)?;
    let factor_dist = cayley_graph(factor)?.bfs(factor.identity());
    let dist = graph.bfs(product.identity());
    for (x, &dx) in dist.iter().enumerate() {
        let l1: usize = product
            .digits(x)
            .iter()
            .map(|&d| factor_dist[d].expect("factor Cayley graph is connected"))
            .sum();
        if dx != Some(l1) {
            return Err(Error::Inconsistency(format!(
                "word length of {x} is {dx:?}, but the l1 sum of factor lengths is {l1}"
            )));
        }
    }
    Ok((product, graph))
}

/// Checks `|halo(A)| ≥ |A|` for nonempty `A` inside the closed `M`-ball
/// around the identity of `Gⁿ`, requiring `n > 3M + 2`. All subsets are
/// checked when there are at most `2²⁰`; otherwise `samples` seeded ones.
pub fn product_halo_claim_check(
    factor: &FiniteGroup,
    n: usize,
    m: usize,
    seed: u64,
    samples: u64,
) -> Result<crate::graph::HaloClaim> {
    if n <= 3 * m + 2 {
        return Err(Error::Precondition(format!("need n > 3M + 2 = {}, got n = {n}", 3 * m + 2)));
    }
    let (product, graph) = product_group_space(factor, n)?;
    let dist = graph.bfs(product.identity());
    let ball: Vec<usize> = (0..product.order())
        .filter(|&x| dist[x].is_some_and(|d| d <= m))
        .collect();
    let check = |set: &[usize]| graph.vertex_halo(set).len() >= set.len();
    let k = ball.len();
    if k <= 20 {
        for mask in 1u64..(1u64 << k) {
            let set: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| ball[i]).collect();
            if !check(&set) {
                return Ok(crate::graph::HaloClaim {
                    holds: false,
                    exhaustive: true,
                    checked: mask,
                    counterexample: Some(set),
                });
            }
        }
        return Ok(crate::graph::HaloClaim {
            holds: true,
            exhaustive: true,
            checked: (1u64 << k) - 1,
            counterexample: None,
        });
    }
    if samples == 0 {
        return Err(Error::Infeasible(format!(
            "2^{k} subsets exceed the exhaustive cap and no samples were requested"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let size = rng.gen_range(1..=k);
        let set: Vec<usize> = sample(&mut rng, k, size).into_iter().map(|j| ball[j]).sorted().collect();
        if !check(&set) {
            return Ok(crate::graph::HaloClaim {
                holds: false,
                exhaustive: false,
                checked: i + 1,
                counterexample: Some(set),
            });
        }
    }
    Ok(crate::graph::HaloClaim {
        holds: true,
        exhaustive: false,
        checked: samples,
        counterexample: None,
    })
}

/// Translation data of a finite set `F` in a group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FolnerReport {
    /// `max_{σ ∈ Σ} |σF Δ F| / |F|`.
    pub max_gen_ratio: Ratio<u64>,
    pub worst_generator: usize,
    /// Lipschitz number of `φ_F(x) = χ_{xF}/|F|` in the word metric.
    pub phi_lipschitz: f64,
    /// For every edge `x — xσ`: `|σFΔF|/|F| ≤ ‖φ_F(x) − φ_F(xσ)‖ ≤ 2|σFΔF|/|F|`.
    pub sandwich_holds: bool,
}

/// Measures how far generator translates move `F`, and the Lipschitz
/// number of the induced partition `φ_F`.
pub fn folner_analysis<G: Group + ?Sized>(group: &G, set: &[usize]) -> Result<FolnerReport> {
    let f: BTreeSet<usize> = set.iter().copied().collect();
    if f.is_empty() {
        return Err(Error::Empty("Følner set is empty"));
    }
    if let Some(&x) = f.iter().find(|&&x| x >= group.order()) {
        return Err(Error::PointOutOfRange { index: x, n: group.order() });
    }
    let size = f.len() as u64;
    let translate = |g: usize| -> BTreeSet<usize> { f.iter().map(|&y| group.mul(g, y)).collect() };
    let mut best = (Ratio::from_integer(0u64), group.identity());
    for &s in group.generators() {
        let moved = translate(s);
        let r = Ratio::new(moved.symmetric_difference(&f).count() as u64, size);
        if r > best.0 {
            best = (r, s);
        }
    }
    let graph = cayley_graph(group)?;
    let space = graph.metric()?;
    let phi = PartitionOfUnity::from_values(
        (0..group.order())
            .map(|x| SparseL1Vector::uniform(translate(x)))
            .collect(),
    )?;
    let phi_lipschitz = lipschitz_number(&space, &phi);
    let mut sandwich = true;
    for (x, y) in graph.edges() {
        let a: BTreeSet<usize> = translate(x);
        let b: BTreeSet<usize> = translate(y);
        let bounds = simplex_bounds(&a, &b)?;
        let sigma = group.mul(group.inv(x), y);
        let ratio = Ratio::new(translate(sigma).symmetric_difference(&f).count() as u64, size);
        let gap = phi.distance(x, y);
        let r = *ratio.numer() as f64 / *ratio.denom() as f64;
        sandwich &= bounds.is_sandwich() && r <= gap + 1e-12 && gap <= 2.0 * r + 1e-12;
    }
    Ok(FolnerReport {
        max_gen_ratio: best.0,
        worst_generator: best.1,
        phi_lipschitz,
        sandwich_holds: sandwich,
    })
}
