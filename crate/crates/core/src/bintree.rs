//! Unlabelled binary trees and the right-edge statistics that refine the
//! Narayana numbers.
//!
//! Labelling the nodes in in-order turns a binary tree on `n` nodes into a
//! B-tree of the path building set: smaller labels go left, larger labels go
//! right, so descents are exactly the right edges.

use serde::Serialize;

use crate::btree::BTree;
use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Empty,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

/// Right-edge statistics. `depth` is the largest vertex depth, with the
/// root at depth 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RightStats {
    /// Depth of the upper endpoint of each right edge, ascending.
    pub right: Vec<u64>,
    pub r: u64,
    pub depth: u64,
    pub rindex: u64,
}

/// How `depth(T)` is measured when forming `rindex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DepthConvention {
    /// Largest vertex depth; agrees with the B-tree major index.
    Vertex,
    /// Largest `dp(e)` over edges, i.e. one less than the vertex depth.
    Edge,
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Empty => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// A chain of `n` nodes hanging to the right (`true`) or left.
    pub fn chain(n: usize, right: bool) -> Self {
        (0..n).fold(BinaryTree::Empty, |t, _| {
            if right {
                BinaryTree::node(BinaryTree::Empty, t)
            } else {
                BinaryTree::node(t, BinaryTree::Empty)
            }
        })
    }

    pub fn right_stats(&self) -> RightStats {
        self.right_stats_with(DepthConvention::Vertex)
    }

    pub fn right_stats_with(&self, convention: DepthConvention) -> RightStats {
        let mut right = Vec::new();
        let mut depth = 0;
        let mut any_edge = false;
        let mut stack = vec![(self, 0u64)];
        while let Some((t, d)) = stack.pop() {
            if let BinaryTree::Node(l, r) = t {
                depth = depth.max(d);
                if let BinaryTree::Node(..) = **l {
                    any_edge = true;
                    stack.push((l, d + 1));
                }
                if let BinaryTree::Node(..) = **r {
                    any_edge = true;
                    right.push(d);
                    stack.push((r, d + 1));
                }
            }
        }
        right.sort_unstable();
        let depth = match convention {
            DepthConvention::Vertex => depth,
            DepthConvention::Edge if any_edge => depth - 1,
            DepthConvention::Edge => 0,
        };
        let r = right.len() as u64;
        // Upper endpoints sit at most one above the deepest vertex, so this
        // cannot underflow under either convention.
        let rindex = depth * r - right.iter().sum::<u64>();
        RightStats {
            right,
            r,
            depth,
            rindex,
        }
    }

    /// The B-tree on `[n]` obtained by in-order labelling; `None` when empty.
    pub fn to_btree(&self) -> Option<BTree> {
        fn walk(t: &BinaryTree, next: &mut u32, edges: &mut Vec<(u32, u32)>) -> Option<u32> {
            let BinaryTree::Node(l, r) = t else {
                return None;
            };
            let left = walk(l, next, edges);
            *next += 1;
            let me = *next;
            let right = walk(r, next, edges);
            edges.extend(left.map(|c| (c, me)));
            edges.extend(right.map(|c| (c, me)));
            Some(me)
        }
        let mut next = 0;
        let mut edges = Vec::new();
        let root = walk(self, &mut next, &mut edges)?;
        Some(
            BTree::from_edges(ElementSet::interval(next), root, &edges)
                .expect("in-order labelling is a tree"),
        )
    }
}

/// All shapes on `n` nodes, ordered by left subtree size, then recursively.
pub fn enumerate_binary_trees(n: usize) -> Box<dyn Iterator<Item = BinaryTree> + Send> {
    if n == 0 {
        return Box::new(std::iter::once(BinaryTree::Empty));
    }
    Box::new((0..n).flat_map(move |l| {
        enumerate_binary_trees(l).flat_map(move |left| {
            enumerate_binary_trees(n - 1 - l)
                .map(move |right| BinaryTree::node(left.clone(), right))
        })
    }))
}

/// `sum over binary trees on n nodes` of `t^r q^rindex`.
pub fn h_associahedron_via_binary(n: usize) -> Polynomial {
    h_associahedron_with(n, DepthConvention::Vertex)
}

pub fn h_associahedron_with(n: usize, convention: DepthConvention) -> Polynomial {
    Polynomial::from_terms(enumerate_binary_trees(n).map(|t| {
        let s = t.right_stats_with(convention);
        (1, Monomial::tq(s.r, s.rindex))
    }))
}

/// `N(n, k, q)`: `sum of q^rindex` over trees with `k - 1` right edges.
pub fn q_narayana(n: usize, k: usize) -> Result<Polynomial> {
    if k == 0 || k > n {
        return Err(Error::BadParams(format!(
            "q-Narayana needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok(Polynomial::from_terms(
        enumerate_binary_trees(n).filter_map(|t| {
            let s = t.right_stats();
            (s.r == k as u64 - 1).then(|| (1, Monomial::tq(0, s.rindex)))
        }),
    ))
}

/// `(1/n) C(n, k) C(n, k-1)`.
pub fn narayana(n: u64, k: u64) -> num_bigint::BigInt {
    if n == 0 || k == 0 || k > n {
        return 0.into();
    }
    binomial(n, k) * binomial(n, k - 1) / n
}

pub fn catalan(n: u64) -> num_bigint::BigInt {
    binomial(2 * n, n) / (n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btree::{h_polynomial, Vars};
    use crate::buildset::path;

    #[test]
    fn counts_are_catalan() {
        for (n, c) in [(0, 1), (1, 1), (3, 5), (4, 14), (6, 132)] {
            assert_eq!(enumerate_binary_trees(n).count(), c);
            assert_eq!(catalan(n as u64), c.into());
        }
    }

    #[test]
    fn enumeration_order_starts_with_empty_left() {
        let first = enumerate_binary_trees(3).next().unwrap();
        assert_eq!(first, BinaryTree::chain(3, true));
        let last = enumerate_binary_trees(3).last().unwrap();
        assert_eq!(last, BinaryTree::chain(3, false));
    }

    #[test]
    fn right_stats_examples() {
        let s = BinaryTree::chain(3, true).right_stats();
        assert_eq!(
            (s.right.clone(), s.r, s.depth, s.rindex),
            (vec![0, 1], 2, 2, 3)
        );
        let s = BinaryTree::chain(5, false).right_stats();
        assert_eq!((s.r, s.rindex), (0, 0));
        let cherry = BinaryTree::node(BinaryTree::chain(1, true), BinaryTree::chain(1, true));
        let s = cherry.right_stats();
        assert_eq!(
            (s.right.clone(), s.r, s.depth, s.rindex),
            (vec![0], 1, 1, 1)
        );
    }

    #[test]
    fn rindex_is_tree_maj() {
        for n in 1..=6 {
            for t in enumerate_binary_trees(n) {
                let s = t.right_stats();
                let ts = t.to_btree().unwrap().stats();
                assert_eq!((s.r, s.rindex), (ts.des, ts.maj));
            }
        }
    }

    #[test]
    fn associahedron_examples() {
        assert_eq!(
            h_associahedron_via_binary(3).to_string(),
            "1 + 2*t*q + t*q^2 + t^2*q^3"
        );
        assert_eq!(h_associahedron_via_binary(1), Polynomial::one());
        assert_eq!(
            h_associahedron_via_binary(4).specialize(crate::Var::Q),
            Polynomial::from_t_coefficients([1, 6, 6, 1])
        );
        for n in 1..=7 {
            assert_eq!(
                h_associahedron_via_binary(n),
                h_polynomial(&path(n as u32).unwrap(), Vars::TQ).unwrap()
            );
        }
    }

    #[test]
    fn edge_depth_breaks_the_identity() {
        let literal = h_associahedron_with(3, DepthConvention::Edge);
        assert_eq!(literal.to_string(), "1 + 2*t + t*q + t^2*q");
        let oracle = h_polynomial(&path(3).unwrap(), Vars::TQ).unwrap();
        assert_eq!(literal.first_difference(&oracle), Some(Monomial::tq(1, 0)));
    }

    #[test]
    fn q_narayana_examples() {
        assert_eq!(q_narayana(3, 2).unwrap().to_string(), "2*q + q^2");
        assert_eq!(q_narayana(5, 1).unwrap(), Polynomial::one());
        assert_eq!(q_narayana(3, 3).unwrap(), Polynomial::tq(1, 0, 3));
        assert!(q_narayana(3, 0).is_err());
        assert!(q_narayana(3, 4).is_err());
        for n in 1..=8u64 {
            for k in 1..=n {
                let at1 = q_narayana(n as usize, k as usize)
                    .unwrap()
                    .evaluate(1, 1, 1);
                assert_eq!(at1, narayana(n, k));
            }
        }
    }
}
