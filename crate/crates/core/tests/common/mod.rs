//! Helpers shared by the integration tests: brute-force tree filtering and
//! seeded random inputs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nestoq::{validate_btree, BTree, BuildingSet, ElementSet, Graph};
use rand::Rng;

/// Every rooted labelled tree on `[n]`, kept when it is a B-tree of `b`.
/// Independent of the root construction: it walks all parent arrays.
pub fn brute_force_btrees(b: &BuildingSet) -> BTreeSet<BTree> {
    let n = b.size();
    let ground = ElementSet::interval(n);
    let mut out = BTreeSet::new();
    for root in 1..=n {
        let others: Vec<u32> = (1..=n).filter(|&x| x != root).collect();
        let total = (n as u64).pow(others.len() as u32);
        'arrays: for code in 0..total {
            let mut c = code;
            let mut edges = Vec::with_capacity(others.len());
            for &x in &others {
                let p = (c % n as u64) as u32 + 1;
                c /= n as u64;
                if p == x {
                    continue 'arrays;
                }
                edges.push((x, p));
            }
            // `from_edges` rejects cycles and disconnected arrays.
            if let Ok(t) = BTree::from_edges(ground, root, &edges) {
                if validate_btree(b, &t) {
                    out.insert(t);
                }
            }
        }
    }
    out
}

/// Closes a family under unions of intersecting members, adds the
/// singletons and `[n]`.
pub fn close_building_set(n: u32, seeds: &[u64]) -> BuildingSet {
    let full = ElementSet::interval(n);
    let mut sets: BTreeSet<ElementSet> = (1..=n).map(ElementSet::singleton).collect();
    sets.insert(full);
    for &s in seeds {
        let s = ElementSet::from_bits(s) & full;
        if !s.is_empty() {
            sets.insert(s);
        }
    }
    loop {
        let current: Vec<ElementSet> = sets.iter().copied().collect();
        let mut grew = false;
        for (i, &a) in current.iter().enumerate() {
            for &b in &current[i + 1..] {
                if a.intersects(b) && sets.insert(a | b) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    BuildingSet::on_ground(full, sets).expect("closure is a building set")
}

pub fn random_building_set(rng: &mut impl Rng, n: u32) -> BuildingSet {
    let seeds: Vec<u64> = (0..rng.gen_range(0..5))
        .map(|_| rng.gen_range(1..(1u64 << n)))
        .collect();
    close_building_set(n, &seeds)
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: u32, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("simple graph")
}
