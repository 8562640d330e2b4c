mod common;

use std::collections::{BTreeMap, BTreeSet};

use coarse_core::graph::{double_counting_check, folner_analysis, halo, product_group_space, FiniteGroup, Group};
use coarse_core::measures::boundary_identity;
use coarse_core::metric::{shrink_set, ExtendedReal};
use coarse_core::pou::{
    barycentric_expansion, barycentric_from_cover, lipschitz_number, normalize, simplex_bounds,
    SparseL1Vector,
};
use itertools::Itertools;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;

use common::*;

fn small_config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(small_config())]

    #[test]
    fn simplex_sandwich(a in prop::collection::btree_set(0u8..64, 1..40), b in prop::collection::btree_set(0u8..64, 1..40)) {
        let s = simplex_bounds(&a, &b).unwrap();
        prop_assert!(s.is_sandwich(), "{:?}", s);
        // exact value against a direct sum
        let (na, nb) = (a.len() as u64, b.len() as u64);
        let direct = a.union(&b).fold(Ratio::from_integer(0u64), |acc, l| {
            let pa = if a.contains(l) { Ratio::new(1, na) } else { Ratio::from_integer(0) };
            let pb = if b.contains(l) { Ratio::new(1, nb) } else { Ratio::from_integer(0) };
            acc + if pa > pb { pa - pb } else { pb - pa }
        });
        prop_assert_eq!(s.exact, direct);
    }

    #[test]
    fn thicken_then_shrink_contains_the_original(seed: u64, n in 2usize..24, s in 0.5f64..6.0) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, n, 5);
        let cover = random_cover(&mut rng, &space, 3, n / 2 + 1);
        let thick = cover.thicken(&space, s).unwrap();
        for i in 0..cover.len() {
            let orig = cover.element(i);
            let grown = thick.element(i);
            prop_assert!(orig.iter().all(|x| grown.contains(x)));
            for &y in grown {
                prop_assert!(orig.contains(&y) || space.lt(space.dist_to_set(y, orig), s));
            }
            let back = shrink_set(&space, grown, s);
            prop_assert!(orig.iter().all(|x| back.contains(x)));
        }
    }

    #[test]
    fn lebesgue_and_diameter_match_brute_force(seed: u64, n in 2usize..16) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, n, 5);
        let k = rng.gen_range(1..=4);
        let cover = random_cover(&mut rng, &space, k, n / 2 + 1);
        let sets = cover.sets();
        let diam = sets
            .iter()
            .flat_map(|e| e.iter().tuple_combinations().map(|(&a, &b)| space.d(a, b)))
            .fold(0.0, f64::max);
        prop_assert_eq!(cover.diameter(&space), ExtendedReal::finite(diam));

        // largest radius r (a distance, or +∞) whose open ball fits some element
        let mut radii: Vec<f64> = (0..n).flat_map(|x| space.row(x).to_vec()).filter(|&d| d > 0.0).collect();
        radii.push(f64::INFINITY);
        let fits = |x: usize, r: f64| {
            let ball: Vec<usize> = (0..n).filter(|&y| space.d(x, y) < r).collect();
            sets.iter().any(|e| ball.iter().all(|y| e.contains(y)))
        };
        let leb = (0..n)
            .map(|x| radii.iter().copied().filter(|&r| fits(x, r)).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(cover.lebesgue_number(&space), ExtendedReal::from(leb));
    }

    #[test]
    fn contraction_never_raises_lipschitz_number(seed: u64, n in 2usize..16, target in 1u32..4) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, n, 4);
        let cover = random_cover(&mut rng, &space, 6, n / 3 + 1);
        let f = barycentric_from_cover(&cover);
        let alpha: BTreeMap<String, u32> = f.universe().iter().map(|l| (l.clone(), rng.gen_range(0..target))).collect();
        let g = f.contract(&alpha).unwrap();
        prop_assert!(lipschitz_number(&space, &g) <= lipschitz_number(&space, &f) + 1e-12);
        for x in 0..n {
            for y in 0..n {
                prop_assert!(g.distance(x, y) <= f.distance(x, y) + 1e-12);
            }
        }
    }

    #[test]
    fn expansion_preserves_distances(rows in prop::collection::vec(prop::collection::vec(0u64..4, 3), 2..10)) {
        let m = rows[0].iter().sum::<u64>().max(1);
        // pad every row to the first row's norm on an extra label
        let counts: Vec<BTreeMap<u32, u64>> = rows
            .iter()
            .map(|r| {
                let mut row: BTreeMap<u32, u64> = r.iter().enumerate().filter(|(_, &c)| c > 0).map(|(l, &c)| (l as u32, c)).collect();
                let s: u64 = row.values().sum();
                if s < m {
                    row.insert(9, m - s);
                } else if s > m {
                    row = BTreeMap::from([(9, m)]);
                }
                row
            })
            .collect();
        let (norm, p) = barycentric_expansion(&counts).unwrap();
        prop_assert_eq!(norm, m);
        let f = normalize(counts.iter().map(|r| r.iter().map(|(&l, &c)| (l, c as f64)).collect()).collect()).unwrap();
        for x in 0..counts.len() {
            for y in 0..counts.len() {
                prop_assert!((p.distance(x, y) - f.distance(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn normalize_is_idempotent(rows in prop::collection::vec(prop::collection::btree_map(0u8..8, 0.01f64..5.0, 1..5), 1..8)) {
        let once = normalize(rows.into_iter().map(|r| r.into_iter().collect::<SparseL1Vector<_>>()).collect()).unwrap();
        let twice = normalize(once.values().to_vec()).unwrap();
        prop_assert!(once.approx_eq(&twice, 1e-12));
    }

    #[test]
    fn double_counting_identity(seed: u64, n in 3usize..40) {
        let mut rng = rng(seed);
        let extra = rng.gen_range(0..n);
        let g = random_connected_graph(&mut rng, n, extra);
        let space = g.metric().unwrap();
        let k = rng.gen_range(1..=n);
        let size = rng.gen_range(1..=n);
        let cover = random_cover(&mut rng, &space, k, size);
        let r = double_counting_check(&g, &cover).unwrap();
        prop_assert_eq!(r.lhs, r.rhs);
        prop_assert_ne!(r.bound_ok, Some(false));
    }

    #[test]
    fn halo_dominates_edge_boundary_over_degree(seed: u64, n in 3usize..30) {
        let mut rng = rng(seed);
        let extra = rng.gen_range(0..2 * n);
        let g = random_connected_graph(&mut rng, n, extra);
        let space = g.metric().unwrap();
        let set: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let h = halo(&space, &set);
        prop_assert_eq!(&h, &g.vertex_halo(&set));
        prop_assert!(h.len() * g.max_degree() >= g.edge_boundary(&set).len());
    }

    #[test]
    fn boundary_identity_is_exact(seed: u64, n in 2usize..25, r in 0.5f64..6.0) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, n, 5);
        let (k, size) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let cover = random_cover(&mut rng, &space, k, size);
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0..7) as f64).collect();
        let (lhs, rhs) = boundary_identity(&space, &w, &cover, r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn folner_interval_ratio(n in 3usize..40, l_frac in 0.0f64..1.0) {
        let l = 1 + ((n - 2) as f64 * l_frac) as usize;
        let z = FiniteGroup::cyclic(n).unwrap();
        let rep = folner_analysis(&z, &(0..l).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(rep.max_gen_ratio, Ratio::new(2, l as u64));
        prop_assert!(rep.sandwich_holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn cube_word_metric_is_hamming(d in 1usize..=8) {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let (product, graph) = product_group_space(&z2, d).unwrap();
        let space = graph.metric().unwrap();
        for x in 0..product.order() {
            for y in 0..product.order() {
                prop_assert_eq!(space.d(x, y), (x ^ y).count_ones() as f64);
            }
        }
        let gens: BTreeSet<usize> = product.generators().iter().copied().collect();
        prop_assert_eq!(gens, (0..d).map(|i| 1usize << i).collect::<BTreeSet<_>>());
    }
}
