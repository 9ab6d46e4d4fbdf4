//! B-trees of a connected building set and the h-polynomials they generate.
//!
//! Trees are produced by the recursive root construction: a tree rooted at
//! `i` is a choice of one tree for each connected component of the
//! restriction to `ground \ {i}`, with the component roots hung below `i`.
//! Every support that can appear in that recursion is a member of the
//! building set, so the whole recursion is precomputed once into a
//! [`Plan`] keyed by support. Streaming then only walks the plan.
//!
//! Order is fixed: roots ascending, components by minimum element, and the
//! Cartesian product over components in lexicographic order (last
//! component varies fastest).

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::buildset::BuildingSet;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::set::ElementSet;

const NO_PARENT: u32 = 0;

/// A rooted tree on a set of labels; the root is the poset maximum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BTree {
    ground: ElementSet,
    root: u32,
    /// Indexed by label; `NO_PARENT` for the root and for labels outside
    /// the ground set.
    parent: Vec<u32>,
}

impl BTree {
    /// Builds a tree from `(child, parent)` edges. Fails unless the edges
    /// form a single tree on `ground` rooted at `root`.
    pub fn from_edges(ground: ElementSet, root: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let bad = |msg: String| Error::BadParams(format!("tree: {msg}"));
        if !ground.contains(root) {
            return Err(bad(format!("root {root} outside ground set")));
        }
        let max = ground.last().unwrap_or(0) as usize;
        let mut parent = vec![NO_PARENT; max + 1];
        for &(c, p) in edges {
            if !ground.contains(c) || !ground.contains(p) || c == p {
                return Err(bad(format!("edge ({c},{p}) invalid")));
            }
            if c == root || parent[c as usize] != NO_PARENT {
                return Err(bad(format!("{c} has two parents or is the root")));
            }
            parent[c as usize] = p;
        }
        if edges.len() + 1 != ground.len() {
            return Err(bad(format!(
                "{} edges on {} vertices",
                edges.len(),
                ground.len()
            )));
        }
        let tree = BTree {
            ground,
            root,
            parent,
        };
        for x in ground.iter() {
            // Every walk upward must reach the root within |ground| steps.
            let mut y = x;
            let mut steps = 0;
            while y != root {
                y = tree.parent[y as usize];
                steps += 1;
                if y == NO_PARENT || steps > ground.len() {
                    return Err(bad(format!("{x} does not reach the root")));
                }
            }
        }
        Ok(tree)
    }

    fn from_parent_array(ground: ElementSet, root: u32, parent: &[u32]) -> Self {
        let max = ground.last().unwrap_or(0) as usize;
        let mut p = parent[..=max].to_vec();
        p[root as usize] = NO_PARENT;
        BTree {
            ground,
            root,
            parent: p,
        }
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn parent(&self, x: u32) -> Option<u32> {
        match self.parent.get(x as usize) {
            Some(&p) if p != NO_PARENT && self.ground.contains(x) => Some(p),
            _ => None,
        }
    }

    /// Sorted children of `x`.
    pub fn children(&self, x: u32) -> Vec<u32> {
        self.ground
            .iter()
            .filter(|&c| self.parent(c) == Some(x))
            .collect()
    }

    /// `(child, parent)` pairs sorted by child.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.ground
            .iter()
            .filter_map(|c| self.parent(c).map(|p| (c, p)))
            .collect()
    }

    /// Vertex depth: `dp(root) = 0`.
    pub fn depths(&self) -> Vec<u32> {
        let mut dp = vec![u32::MAX; self.parent.len()];
        dp[self.root as usize] = 0;
        for x in self.ground.iter() {
            let mut chain = Vec::new();
            let mut y = x;
            while dp[y as usize] == u32::MAX {
                chain.push(y);
                y = self.parent[y as usize];
            }
            let mut d = dp[y as usize];
            for &z in chain.iter().rev() {
                d += 1;
                dp[z as usize] = d;
            }
        }
        dp
    }

    /// `T_{≤i}`: `i` and everything below it.
    pub fn descendant_set(&self, i: u32) -> ElementSet {
        self.ground
            .iter()
            .filter(|&x| {
                let mut y = x;
                loop {
                    if y == i {
                        return true;
                    }
                    match self.parent(y) {
                        Some(p) => y = p,
                        None => return false,
                    }
                }
            })
            .collect()
    }

    pub fn stats(&self) -> TreeStats {
        let dp = self.depths();
        let depth = self
            .ground
            .iter()
            .map(|x| dp[x as usize])
            .max()
            .unwrap_or(0) as u64;
        let mut s = TreeStats {
            des: 0,
            maj: 0,
            depth,
            mu: 0,
        };
        for (child, parent) in self.edges() {
            let rank = depth - dp[parent as usize] as u64;
            s.mu += rank;
            if child > parent {
                s.des += 1;
                s.maj += rank;
            }
        }
        s
    }

    /// Relabels through `i -> n - i + 1`.
    pub fn apply_involution(&self, n: u32) -> BTree {
        let ground = self.ground.reflect(n);
        let edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .map(|(c, p)| (n + 1 - c, n + 1 - p))
            .collect();
        BTree::from_edges(ground, n + 1 - self.root, &edges).expect("relabeling keeps a tree")
    }

    /// `{"root": r, "edges": [[child, parent], ...]}` sorted by child.
    pub fn to_json(&self) -> Value {
        let edges: Vec<[u32; 2]> = self.edges().into_iter().map(|(c, p)| [c, p]).collect();
        json!({ "root": self.root, "edges": edges })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TreeStats {
    pub des: u64,
    pub maj: u64,
    pub depth: u64,
    pub mu: u64,
}

impl TreeStats {
    pub fn monomial(&self, vars: Vars) -> Monomial {
        match vars {
            Vars::T => Monomial::new(self.des, 0, 0),
            Vars::TQ => Monomial::new(self.des, self.maj, 0),
            Vars::TQU => Monomial::new(self.des, self.maj, self.mu),
        }
    }
}

/// Which statistics an h-polynomial records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vars {
    T,
    TQ,
    TQU,
}

impl FromStr for Vars {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(Vars::T),
            "tq" => Ok(Vars::TQ),
            "tqu" => Ok(Vars::TQU),
            other => Err(Error::BadParams(format!("unknown variable set `{other}`"))),
        }
    }
}

/// Checks both B-tree conditions directly.
///
/// Condition (2) is reduced to siblings: if incomparable nodes have a union
/// in `B`, union closure lifts the violation to the children of their
/// lowest common ancestor. Among siblings every sub-family of size at least
/// two is covered by asking, for each member of `B`, whether it is a union
/// of two or more whole sibling subtrees.
pub fn validate_btree(b: &BuildingSet, tree: &BTree) -> bool {
    if tree.ground() != b.ground() {
        return false;
    }
    let ground = b.ground();
    let desc: HashMap<u32, ElementSet> =
        ground.iter().map(|i| (i, tree.descendant_set(i))).collect();
    if desc.values().any(|&d| !b.contains(d)) {
        return false;
    }
    for x in ground.iter() {
        let kids: Vec<ElementSet> = tree.children(x).iter().map(|c| desc[c]).collect();
        if kids.len() < 2 {
            continue;
        }
        let below = desc[&x].without(x);
        for &m in b.sets() {
            if !m.is_subset(below) {
                continue;
            }
            let mut whole = 0;
            let mut clean = true;
            for &k in &kids {
                if k.is_subset(m) {
                    whole += 1;
                } else if k.intersects(m) {
                    clean = false;
                    break;
                }
            }
            if clean && whole >= 2 {
                return false;
            }
        }
    }
    true
}

/// One way to split a support: its root and the component supports of the
/// rest.
#[derive(Debug, Clone)]
struct Split {
    root: u32,
    components: Vec<ElementSet>,
}

/// The root construction, precomputed for every support it can reach.
#[derive(Debug)]
pub struct Plan {
    ground: ElementSet,
    splits: HashMap<ElementSet, Vec<Split>>,
}

impl Plan {
    pub fn new(b: &BuildingSet) -> Result<Self> {
        b.require_connected()?;
        let mut splits = HashMap::new();
        let mut pending = vec![b.ground()];
        while let Some(support) = pending.pop() {
            if splits.contains_key(&support) {
                continue;
            }
            let list: Vec<Split> = support
                .iter()
                .map(|root| Split {
                    root,
                    components: b.component_supports(support.without(root)),
                })
                .collect();
            for s in &list {
                pending.extend(s.components.iter().filter(|c| !splits.contains_key(*c)));
            }
            splits.insert(support, list);
        }
        Ok(Plan {
            ground: b.ground(),
            splits,
        })
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    /// Candidate roots of the whole tree, ascending.
    pub fn roots(&self) -> Vec<u32> {
        self.ground.iter().collect()
    }

    /// Number of trees, by the product recursion (no enumeration).
    pub fn count(&self) -> u128 {
        fn go(plan: &Plan, s: ElementSet, memo: &mut HashMap<ElementSet, u128>) -> u128 {
            if let Some(&c) = memo.get(&s) {
                return c;
            }
            let c = plan.splits[&s]
                .iter()
                .map(|sp| {
                    sp.components
                        .iter()
                        .map(|&c| go(plan, c, memo))
                        .product::<u128>()
                })
                .sum();
            memo.insert(s, c);
            c
        }
        go(self, self.ground, &mut HashMap::new())
    }
}

/// Odometer over the trees of one support.
#[derive(Debug)]
struct Cursor {
    support: ElementSet,
    split: usize,
    split_end: usize,
    children: Vec<Cursor>,
    started: bool,
}

impl Cursor {
    fn new(plan: &Plan, support: ElementSet) -> Self {
        let n = plan.splits[&support].len();
        Cursor {
            support,
            split: 0,
            split_end: n,
            children: Vec::new(),
            started: false,
        }
    }

    fn with_root(plan: &Plan, support: ElementSet, root: u32) -> Self {
        let idx = plan.splits[&support]
            .iter()
            .position(|s| s.root == root)
            .expect("root lies in support");
        Cursor {
            support,
            split: idx,
            split_end: idx + 1,
            children: Vec::new(),
            started: false,
        }
    }

    fn root(&self, plan: &Plan) -> u32 {
        plan.splits[&self.support][self.split].root
    }

    /// Enters the current split and loads the first tree of every component.
    fn enter_split(&mut self, plan: &Plan, parent: &mut [u32]) {
        let split = &plan.splits[&self.support][self.split];
        self.children = split
            .components
            .iter()
            .map(|&c| Cursor::new(plan, c))
            .collect();
        for child in &mut self.children {
            let ok = child.advance(plan, parent);
            debug_assert!(ok, "connected supports have at least one tree");
            parent[child.root(plan) as usize] = split.root;
        }
    }

    /// Moves to the next tree, writing parent pointers for every non-root
    /// element of the support. Returns `false` when exhausted.
    fn advance(&mut self, plan: &Plan, parent: &mut [u32]) -> bool {
        if !self.started {
            self.started = true;
            self.enter_split(plan, parent);
            return true;
        }
        let root = self.root(plan);
        for j in (0..self.children.len()).rev() {
            if self.children[j].advance(plan, parent) {
                parent[self.children[j].root(plan) as usize] = root;
                for l in j + 1..self.children.len() {
                    let support = self.children[l].support;
                    self.children[l] = Cursor::new(plan, support);
                    self.children[l].advance(plan, parent);
                    parent[self.children[l].root(plan) as usize] = root;
                }
                return true;
            }
        }
        self.split += 1;
        if self.split >= self.split_end {
            return false;
        }
        self.enter_split(plan, parent);
        true
    }
}

/// Deterministic stream of the B-trees of a connected building set.
///
/// The stream owns its plan through an `Arc`, so it can be moved to another
/// thread.
#[derive(Debug)]
pub struct BTreeStream {
    plan: Arc<Plan>,
    cursor: Cursor,
    parent: Vec<u32>,
}

impl BTreeStream {
    pub fn new(plan: Arc<Plan>) -> Self {
        let cursor = Cursor::new(&plan, plan.ground);
        Self::from_cursor(plan, cursor)
    }

    /// Only the trees rooted at `root`.
    pub fn rooted(plan: Arc<Plan>, root: u32) -> Result<Self> {
        if !plan.ground.contains(root) {
            return Err(Error::BadParams(format!("root {root} outside ground set")));
        }
        let cursor = Cursor::with_root(&plan, plan.ground, root);
        Ok(Self::from_cursor(plan, cursor))
    }

    fn from_cursor(plan: Arc<Plan>, cursor: Cursor) -> Self {
        let len = plan.ground.last().unwrap_or(0) as usize + 1;
        BTreeStream {
            plan,
            cursor,
            parent: vec![NO_PARENT; len],
        }
    }

    /// Advances without materializing a [`BTree`]; the callback sees the
    /// current root and parent array.
    fn step(&mut self) -> Option<u32> {
        if self.cursor.advance(&self.plan, &mut self.parent) {
            let root = self.cursor.root(&self.plan);
            self.parent[root as usize] = NO_PARENT;
            Some(root)
        } else {
            None
        }
    }
}

impl Iterator for BTreeStream {
    type Item = BTree;

    fn next(&mut self) -> Option<BTree> {
        let root = self.step()?;
        Some(BTree::from_parent_array(
            self.plan.ground,
            root,
            &self.parent,
        ))
    }
}

pub fn enumerate_btrees(b: &BuildingSet) -> Result<BTreeStream> {
    Ok(BTreeStream::new(Arc::new(Plan::new(b)?)))
}

/// Statistics straight from a parent array, without building a `BTree`.
fn stats_from_parents(ground: ElementSet, root: u32, parent: &[u32], dp: &mut [u32]) -> TreeStats {
    for x in ground.iter() {
        dp[x as usize] = u32::MAX;
    }
    dp[root as usize] = 0;
    let mut depth = 0;
    for x in ground.iter() {
        let mut y = x;
        let mut steps = 0;
        while dp[y as usize] == u32::MAX {
            y = parent[y as usize];
            steps += 1;
        }
        let base = dp[y as usize];
        let mut z = x;
        for k in 0..steps {
            dp[z as usize] = base + steps - k;
            z = parent[z as usize];
        }
        depth = depth.max(dp[x as usize]);
    }
    let mut s = TreeStats {
        des: 0,
        maj: 0,
        depth: depth as u64,
        mu: 0,
    };
    for c in ground.iter() {
        if c == root {
            continue;
        }
        let p = parent[c as usize];
        let rank = (depth - dp[p as usize]) as u64;
        s.mu += rank;
        if c > p {
            s.des += 1;
            s.maj += rank;
        }
    }
    s
}

/// `sum over B-trees` of `t^des`, `t^des q^maj` or `t^des q^maj u^mu`.
///
/// Roots are summed in parallel; each worker accumulates machine-integer
/// counts that are folded into the exact polynomial at the end.
pub fn h_polynomial(b: &BuildingSet, vars: Vars) -> Result<Polynomial> {
    let plan = Arc::new(Plan::new(b)?);
    let partials: Vec<HashMap<Monomial, u64>> = plan
        .roots()
        .into_par_iter()
        .map(|root| {
            let mut stream = BTreeStream::rooted(plan.clone(), root).expect("root from plan");
            let mut counts: HashMap<Monomial, u64> = HashMap::new();
            let mut dp = vec![0u32; stream.parent.len()];
            while let Some(r) = stream.step() {
                let s = stats_from_parents(plan.ground, r, &stream.parent, &mut dp);
                *counts.entry(s.monomial(vars)).or_default() += 1;
            }
            counts
        })
        .collect();
    let mut h = Polynomial::zero();
    for counts in partials {
        for (m, c) in counts {
            h.add_term(c, m);
        }
    }
    Ok(h)
}

/// `f_i` = number of `i`-dimensional faces, from `f(t) = h(t + 1)`.
pub fn f_vector(b: &BuildingSet) -> Result<Vec<num_bigint::BigInt>> {
    h_polynomial(b, Vars::T)?.shift_t_by_one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionCheck {
    pub holds: bool,
    /// `h(t, q, u)`.
    pub lhs: Polynomial,
    /// `t^(n-1) h(1/t, 1/q, q u)`.
    pub rhs: Polynomial,
}

pub fn check_involution_palindromicity(b: &BuildingSet) -> Result<InvolutionCheck> {
    b.require_connected()?;
    if !b.is_omega_invariant() {
        return Err(Error::NotOmegaInvariant);
    }
    let lhs = h_polynomial(b, Vars::TQU)?;
    let rhs = lhs.reverse_transform(b.size() as u64 - 1)?;
    Ok(InvolutionCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCheck {
    /// `h` of the combined building set, by enumeration.
    pub direct: Polynomial,
    /// `(1 + t + ... + t^(r-1)) * prod h_i(t)`.
    pub formula: Polynomial,
}

impl ProductCheck {
    pub fn agrees(&self) -> bool {
        self.direct == self.formula
    }
}

pub fn h_combined(parts: &[BuildingSet]) -> Result<ProductCheck> {
    let combined = BuildingSet::combine(parts)?;
    let direct = h_polynomial(&combined, Vars::T)?;
    let mut formula = Polynomial::t_geometric(parts.len() as u64);
    for p in parts {
        formula = &formula * &h_polynomial(p, Vars::T)?;
    }
    Ok(ProductCheck { direct, formula })
}
