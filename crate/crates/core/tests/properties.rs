mod common;

use std::collections::BTreeSet;

use common::{brute_force_btrees, close_building_set, random_graph};
use nestoq::btree::Plan;
use nestoq::combinat::braid_fan_posets;
use nestoq::graph::{graphical_building_set, tubing_stats};
use nestoq::{
    check_involution_palindromicity, enumerate_btrees, f_vector, h_combined, h_polynomial,
    perm_stats, BuildingSet, ElementSet, Poset, Tubing, Var, Vars,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn building_set(max_n: u32) -> impl Strategy<Value = BuildingSet> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 0..5)
            .prop_map(move |seeds| close_building_set(n, &seeds))
    })
}

/// Seeds closed together with their mirror images stay omega-invariant.
fn symmetric_building_set(max_n: u32) -> impl Strategy<Value = BuildingSet> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 0..4).prop_map(move |seeds| {
            let mirrored: Vec<u64> = seeds
                .iter()
                .flat_map(|&s| [s, ElementSet::from_bits(s).reflect(n).bits()])
                .collect();
            close_building_set(n, &mirrored)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn restriction_components_partition(b in building_set(7), mask in 1u64..128) {
        let s = ElementSet::from_bits(mask) & b.ground();
        prop_assume!(!s.is_empty());
        let r = b.restrict(s);
        let supports: Vec<ElementSet> = r.components().into_iter().map(|(s, _)| s).collect();
        let mut union = ElementSet::EMPTY;
        for c in &supports {
            prop_assert!(!c.intersects(union));
            union |= *c;
        }
        prop_assert_eq!(union, s);
        for (support, part) in r.components() {
            prop_assert!(part.is_connected());
            prop_assert_eq!(part.ground(), support);
        }
    }

    #[test]
    fn connected_set_is_its_own_component(b in building_set(7)) {
        let comps = b.components();
        prop_assert_eq!(comps.len(), 1);
        prop_assert_eq!(&comps[0].1, &b);
    }

    #[test]
    fn involution_is_an_involution(b in building_set(7)) {
        let w = b.apply_involution();
        prop_assert!(w.is_connected());
        prop_assert!(BuildingSet::on_ground(w.ground(), w.sets().iter().copied()).is_ok());
        prop_assert_eq!(w.apply_involution(), b);
    }

    #[test]
    fn combine_then_components(a in building_set(3), b in building_set(3)) {
        let shift = a.size();
        let moved = |s: ElementSet| ElementSet::from_bits(s.bits() << shift);
        let b = BuildingSet::on_ground(moved(b.ground()), b.sets().iter().map(|&s| moved(s))).unwrap();
        let combined = BuildingSet::combine(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(combined.is_connected());
        // Dropping the added full set leaves exactly the two parts.
        let split: Vec<BuildingSet> = BuildingSet::on_ground(
            combined.ground(),
            combined.sets().iter().copied().filter(|&s| s != combined.ground()),
        )
        .unwrap()
        .components()
        .into_iter()
        .map(|(_, p)| p)
        .collect();
        prop_assert_eq!(split, vec![a, b]);
    }

    #[test]
    fn enumeration_matches_brute_force(b in building_set(5)) {
        let streamed: Vec<_> = enumerate_btrees(&b).unwrap().collect();
        let unique: BTreeSet<_> = streamed.iter().cloned().collect();
        prop_assert_eq!(unique.len(), streamed.len());
        prop_assert_eq!(unique, brute_force_btrees(&b));
    }

    #[test]
    fn counts_agree_everywhere(b in building_set(7)) {
        let trees = enumerate_btrees(&b).unwrap().count();
        let h3 = h_polynomial(&b, Vars::TQU).unwrap();
        prop_assert_eq!(h3.evaluate(1, 1, 1), trees.into());
        prop_assert_eq!(f_vector(&b).unwrap()[0].clone(), trees.into());
        prop_assert_eq!(Plan::new(&b).unwrap().count(), trees as u128);
    }

    #[test]
    fn specialization_chain(b in building_set(7)) {
        let h3 = h_polynomial(&b, Vars::TQU).unwrap();
        let h2 = h_polynomial(&b, Vars::TQ).unwrap();
        let h1 = h_polynomial(&b, Vars::T).unwrap();
        prop_assert_eq!(h3.specialize(Var::U), h2.clone());
        prop_assert_eq!(h2.specialize(Var::Q), h1.clone());
        prop_assert!(h1.is_palindromic_in_t(b.size() as u64 - 1).unwrap());
    }

    #[test]
    fn tree_statistics_bounds(b in building_set(6)) {
        for t in enumerate_btrees(&b).unwrap() {
            let s = t.stats();
            prop_assert!(s.des < b.size() as u64);
            prop_assert!(s.maj <= s.des * s.depth);
            prop_assert!(s.maj <= s.mu);
        }
    }

    #[test]
    fn omega_pairing(b in symmetric_building_set(6)) {
        prop_assert!(b.is_omega_invariant());
        let n = b.size();
        for t in enumerate_btrees(&b).unwrap() {
            let w = t.apply_involution(n);
            prop_assert!(nestoq::validate_btree(&b, &w));
            prop_assert_eq!(t.stats().maj + w.stats().maj, t.stats().mu);
        }
        prop_assert!(check_involution_palindromicity(&b).unwrap().holds);
    }

    #[test]
    fn reverse_transform_round_trip(b in symmetric_building_set(6)) {
        let h = h_polynomial(&b, Vars::TQU).unwrap();
        let d = b.size() as u64 - 1;
        let once = h.reverse_transform(d).unwrap();
        prop_assert_eq!(once.reverse_transform(d).unwrap(), h);
    }

    #[test]
    fn product_formula(sizes in prop::collection::vec(1u32..=3, 1..=3), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut offset = 0;
        let mut parts = Vec::new();
        for m in sizes {
            let p = common::random_building_set(&mut rng, m);
            let moved = |s: ElementSet| ElementSet::from_bits(s.bits() << offset);
            parts.push(BuildingSet::on_ground(moved(p.ground()), p.sets().iter().map(|&s| moved(s))).unwrap());
            offset += m;
        }
        prop_assert!(h_combined(&parts).unwrap().agrees());
    }

    #[test]
    fn tubings_match_trees(seed in any::<u64>(), n in 1u32..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        for t in enumerate_btrees(&graphical_building_set(&g)).unwrap() {
            let chi = Tubing::from_btree(&t);
            prop_assert!(chi.check(&g).is_ok());
            let s = tubing_stats(&g, &chi).unwrap();
            let ts = t.stats();
            prop_assert_eq!((s.nest_des, s.nest_maj, s.nest, s.mu), (ts.des, ts.maj, ts.depth, ts.mu));
        }
    }

    #[test]
    fn minimal_rank_is_start_independent(parents in prop::collection::vec(any::<prop::sample::Index>(), 1..8),
                                         flips in prop::collection::vec(any::<bool>(), 8)) {
        // A random tree on [n]: vertex i + 2 hangs off an earlier vertex,
        // with the cover pointing up or down.
        let n = parents.len() as u32 + 1;
        let covers: Vec<(u32, u32)> = parents
            .iter()
            .enumerate()
            .map(|(i, ix)| {
                let child = i as u32 + 2;
                let other = ix.index(i + 1) as u32 + 1;
                if flips[i] { (child, other) } else { (other, child) }
            })
            .collect();
        let p = Poset::new(n, covers).unwrap();
        prop_assert!(p.is_tree_poset());
        let base = p.minimal_rank().unwrap();
        prop_assert_eq!(base.as_slice().iter().min(), Some(&0));
        for &(a, b) in p.covers() {
            prop_assert_eq!(base.get(b), base.get(a) + 1);
        }
        for start in 1..=n {
            prop_assert_eq!(&p.minimal_rank_from(start).unwrap(), &base);
        }
    }
}

#[test]
fn chain_posets_have_permutation_statistics() {
    for n in 1..=6 {
        for p in braid_fan_posets(n) {
            // Recover the word from the chain covers.
            let mut word = p.minimal_elements();
            while let Some(&(_, up)) = p
                .covers()
                .iter()
                .find(|&&(a, _)| a == *word.last().unwrap())
            {
                word.push(up);
            }
            let s = p.stats().unwrap();
            let w = perm_stats(&word);
            assert_eq!((s.des, s.maj), (w.des as u64, w.maj as u64));
        }
    }
}
