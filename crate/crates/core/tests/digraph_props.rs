mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hcyclic::digraph::{
    cyclic_index, digraph_of, find_h_partition, is_h_cyclic, to_consecutive, Digraph,
};
use hcyclic::random::random_shuffled_h_cyclic;
use hcyclic::Tolerance;

fn arcs_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=6).prop_flat_map(|n| {
        (Just(n), prop::collection::vec((1..=n, 1..=n), 0..=2 * n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partition_search_agrees_with_brute_force((n, arcs) in arcs_strategy()) {
        let g = Digraph::new(n, arcs).unwrap();
        for h in 1..=n {
            let found = find_h_partition(&g, h);
            prop_assert_eq!(found.is_some(), common::brute_force_partition_exists(&g, h), "h = {}", h);
            if let Some(p) = found {
                prop_assert_eq!(p.h(), h);
                prop_assert!(p.respects(&g).unwrap());
                prop_assert!(p.class(1).contains(&1));
            }
        }
    }

    #[test]
    fn cyclic_index_is_relabelling_invariant((n, arcs) in arcs_strategy(), seed: u64) {
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let g = Digraph::new(n, arcs.clone()).unwrap();
        let moved = Digraph::new(n, arcs.iter().map(|&(i, j)| (perm[i - 1], perm[j - 1]))).unwrap();
        prop_assert_eq!(cyclic_index(&g), cyclic_index(&moved));
    }

    #[test]
    fn planted_partitions_are_detected(seed: u64, h in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sizes: Vec<usize> = (0..h).map(|_| rng.gen_range(1..=3)).collect();
        let (a, p) = random_shuffled_h_cyclic(&mut rng, &sizes, 1.0);
        let tol = Tolerance::default();
        prop_assert!(is_h_cyclic(&a, &p, tol).unwrap());
        let g = digraph_of(&a, tol).unwrap();
        prop_assert_eq!(cyclic_index(&g) % h as u64, 0);
        let found = find_h_partition(&g, h).unwrap();
        prop_assert!(is_h_cyclic(&a, &found, tol).unwrap());
        let (ca, cp, _) = to_consecutive(&a, &p).unwrap();
        prop_assert!(cp.is_consecutive());
        prop_assert!(is_h_cyclic(&ca, &cp, tol).unwrap());
    }
}
