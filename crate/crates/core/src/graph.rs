//! Graph associahedra through their graphical building sets.
//!
//! Maximal tubings are read off B-trees: the tubes of a tubing are the
//! descendant sets of the non-root vertices. The nesting statistics are
//! nevertheless computed from the tubes alone, so that comparing them with
//! the tree statistics is a real check of the bijection.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde_json::{json, Value};

use crate::btree::{enumerate_btrees, h_polynomial, BTree, BTreeStream, ProductCheck, Vars};
use crate::buildset::BuildingSet;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::set::ElementSet;

/// Largest vertex count for which the graphical building set is built by
/// scanning subsets.
pub const MAX_GRAPH_VERTICES: u32 = 20;

/// A simple graph on `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>,
    adj: Vec<ElementSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Edges are unordered; loops and repeated edges are rejected.
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::GroundTooLarge(n as usize));
        }
        let mut adj = vec![ElementSet::EMPTY; n as usize + 1];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph(format!("edge {a} {b} outside [{n}]")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if adj[a as usize].contains(b) {
                return Err(Error::InvalidGraph(format!("repeated edge {a} {b}")));
            }
            adj[a as usize].insert(b);
            adj[b as usize].insert(a);
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    /// Parses `n <N>` followed by one `i j` edge per line; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad =
                |what: &str| Error::InvalidGraph(format!("line {}: {what}: `{line}`", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            match (n, fields.as_slice()) {
                (None, ["n", count]) => {
                    n = Some(count.parse::<u32>().map_err(|_| bad("bad vertex count"))?)
                }
                (None, _) => return Err(bad("expected header `n <N>`")),
                (Some(_), [a, b]) => {
                    let a = a.parse::<u32>().map_err(|_| bad("bad vertex"))?;
                    let b = b.parse::<u32>().map_err(|_| bad("bad vertex"))?;
                    edges.push((a, b));
                }
                (Some(_), _) => return Err(bad("expected `i j`")),
            }
        }
        let n = n.ok_or_else(|| Error::InvalidGraph("missing header `n <N>`".into()))?;
        Graph::new(n, edges)
    }

    pub fn complete(n: u32) -> Result<Self> {
        Graph::new(n, (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))))
    }

    /// The edgeless graph.
    pub fn null(n: u32) -> Result<Self> {
        Graph::new(n, [])
    }

    pub fn path(n: u32) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i, i + 1)))
    }

    /// `K_{1,n}` with center `n + 1`.
    pub fn star(n: u32) -> Result<Self> {
        Graph::new(n + 1, (1..=n).map(|i| (i, n + 1)))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn vertices(&self) -> ElementSet {
        ElementSet::interval(self.n)
    }

    pub fn neighbours(&self, v: u32) -> ElementSet {
        self.adj[v as usize]
    }

    /// Whether the induced subgraph on `s` is connected (and `s` nonempty).
    pub fn is_connected_subset(&self, s: ElementSet) -> bool {
        let Some(start) = s.first() else {
            return false;
        };
        let mut seen = ElementSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = ElementSet::EMPTY;
            for v in frontier.iter() {
                next |= self.adj[v as usize] & s;
            }
            frontier = next - seen;
            seen |= frontier;
        }
        seen == s
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_subset(self.vertices())
    }

    /// Vertex sets of connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<ElementSet> {
        let mut uf = UnionFind::<usize>::new(self.n as usize);
        for &(a, b) in &self.edges {
            uf.union(a as usize - 1, b as usize - 1);
        }
        let mut by_rep: Vec<ElementSet> = vec![ElementSet::EMPTY; self.n as usize];
        for v in 1..=self.n {
            by_rep[uf.find(v as usize - 1)].insert(v);
        }
        let mut comps: Vec<ElementSet> = by_rep.into_iter().filter(|s| !s.is_empty()).collect();
        comps.sort_by_key(|s| s.first());
        comps
    }

    /// The graph with vertex `v` renamed `sigma[v - 1]`.
    pub fn relabel(&self, sigma: &[u32]) -> Result<Self> {
        if sigma.len() != self.n as usize {
            return Err(Error::InvalidPermutation(format!(
                "relabelling has {} entries, graph has {} vertices",
                sigma.len(),
                self.n
            )));
        }
        let image: ElementSet = sigma.iter().collect();
        if image != self.vertices() {
            return Err(Error::InvalidPermutation(format!(
                "{sigma:?} is not a permutation of [{}]",
                self.n
            )));
        }
        let s = |v: u32| sigma[v as usize - 1];
        Graph::new(self.n, self.edges.iter().map(|&(a, b)| (s(a), s(b))))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

/// Connected induced vertex sets contained in `ground`, plus `ground`.
fn graphical_sets(g: &Graph, ground: ElementSet) -> BuildingSet {
    let bits = ground.bits();
    let mut sets = vec![ground];
    // Enumerate the subsets of `ground` by the standard submask walk.
    let mut sub = bits;
    while sub != 0 {
        let s = ElementSet::from_bits(sub);
        if s != ground && g.is_connected_subset(s) {
            sets.push(s);
        }
        sub = (sub - 1) & bits;
    }
    BuildingSet::trusted(ground, sets)
}

/// `B(G)` together with `[n]`, which is always connected.
pub fn graphical_building_set(g: &Graph) -> BuildingSet {
    graphical_sets(g, g.vertices())
}

/// A set of tubes, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tubing {
    tubes: Vec<ElementSet>,
}

impl Tubing {
    pub fn new(tubes: impl IntoIterator<Item = ElementSet>) -> Self {
        let mut tubes: Vec<ElementSet> = tubes.into_iter().collect();
        tubes.sort();
        tubes.dedup();
        Tubing { tubes }
    }

    /// The non-root descendant sets of a B-tree.
    pub fn from_btree(tree: &BTree) -> Self {
        Tubing::new(
            tree.ground()
                .iter()
                .filter(|&x| x != tree.root())
                .map(|x| tree.descendant_set(x)),
        )
    }

    pub fn tubes(&self) -> &[ElementSet] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    /// Checks the tubing axioms against `g`: every tube is a proper connected
    /// vertex set, and any two tubes are nested, or disjoint with a
    /// disconnected union.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let all = g.vertices();
        for &a in &self.tubes {
            if a.is_empty() || a == all || !a.is_subset(all) {
                return Err(Error::InvalidTubing(format!(
                    "{a} is not a proper nonempty subset"
                )));
            }
            if !g.is_connected_subset(a) {
                return Err(Error::InvalidTubing(format!(
                    "{a} does not induce a connected subgraph"
                )));
            }
        }
        for (i, &a) in self.tubes.iter().enumerate() {
            for &b in &self.tubes[i + 1..] {
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                if a.intersects(b) {
                    return Err(Error::InvalidTubing(format!("{a} and {b} overlap")));
                }
                if g.is_connected_subset(a | b) {
                    return Err(Error::InvalidTubing(format!("{a} and {b} are adjacent")));
                }
            }
        }
        Ok(())
    }

    pub fn is_maximal(&self, g: &Graph) -> bool {
        self.tubes.len() + 1 == g.n() as usize
    }

    pub fn to_json(&self) -> Value {
        json!({ "tubes": self.tubes.iter().map(|s| s.to_vec()).collect::<Vec<_>>() })
    }
}

/// Maximal tubings of `g`, one per B-tree of its graphical building set.
pub struct TubingStream {
    graph: Graph,
    trees: BTreeStream,
}

impl Iterator for TubingStream {
    type Item = Tubing;

    fn next(&mut self) -> Option<Tubing> {
        let tubing = Tubing::from_btree(&self.trees.next()?);
        debug_assert!(tubing.check(&self.graph).is_ok());
        Some(tubing)
    }
}

pub fn enumerate_maximal_tubings(g: &Graph) -> TubingStream {
    let trees = enumerate_btrees(&graphical_building_set(g))
        .expect("graphical building sets are connected");
    TubingStream {
        graph: g.clone(),
        trees,
    }
}

/// Nesting statistics of a maximal tubing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NestStats {
    pub nest: u64,
    pub nest_des: u64,
    pub nest_maj: u64,
    /// Rank sum over every covering pair, outermost tubes included.
    pub mu: u64,
    /// Rank sum over covering pairs of tubes only.
    pub mu_tubes_only: u64,
}

impl NestStats {
    pub fn monomial(&self, vars: Vars) -> Monomial {
        match vars {
            Vars::T => Monomial::new(self.nest_des, 0, 0),
            Vars::TQ => Monomial::new(self.nest_des, self.nest_maj, 0),
            Vars::TQU => Monomial::new(self.nest_des, self.nest_maj, self.mu),
        }
    }
}

/// `nest`, `nestDes`, `nestMaj` and both readings of `mu`, from the tubes.
pub fn tubing_stats(g: &Graph, chi: &Tubing) -> Result<NestStats> {
    if !chi.is_maximal(g) {
        return Err(Error::NotMaximal {
            tubes: chi.len(),
            n: g.n(),
        });
    }
    chi.check(g)?;
    let tubes = chi.tubes();
    let all = g.vertices();
    let nu = |i: u32| tubes.iter().filter(|a| a.contains(i)).count() as u64;

    // alpha_j: the element of A_j lying in no smaller tube.
    let mut alpha = Vec::with_capacity(tubes.len());
    for &a in tubes {
        let inner = tubes
            .iter()
            .filter(|&&b| b != a && b.is_subset(a))
            .fold(ElementSet::EMPTY, |acc, &b| acc | b);
        let rest = a - inner;
        if rest.len() != 1 {
            return Err(Error::InvalidTubing(format!(
                "tube {a} has no unique new element"
            )));
        }
        alpha.push(rest.first().unwrap());
    }
    let covered = tubes.iter().fold(ElementSet::EMPTY, |acc, &b| acc | b);
    let untubed = all - covered;
    if untubed.len() != 1 {
        return Err(Error::InvalidTubing(
            "expected exactly one untubed vertex".into(),
        ));
    }
    let alpha_n = untubed.first().unwrap();

    let nest = all.iter().map(nu).max().unwrap_or(0);
    let mut s = NestStats {
        nest,
        ..NestStats::default()
    };
    for (k, &a) in tubes.iter().enumerate() {
        // The smallest tube strictly containing A_k covers it.
        let parent = tubes
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b != a && a.is_subset(b))
            .min_by_key(|&(_, b)| b.len());
        let (upper, upper_nu) = match parent {
            Some((j, _)) => (alpha[j], nu(alpha[j])),
            None => (alpha_n, 0),
        };
        let rank = nest - upper_nu;
        s.mu += rank;
        if parent.is_some() {
            s.mu_tubes_only += rank;
        }
        if alpha[k] > upper {
            s.nest_des += 1;
            s.nest_maj += rank;
        }
    }
    Ok(s)
}

/// `sum over maximal tubings` of the nesting statistics. In `TQU` mode the
/// `u` exponent is the rank sum over all covering pairs, which is the
/// B-tree `mu` of the paired tree.
pub fn h_graph(g: &Graph, vars: Vars) -> Result<Polynomial> {
    let mut h = Polynomial::zero();
    for chi in enumerate_maximal_tubings(g) {
        h.add_term(1, tubing_stats(g, &chi)?.monomial(vars));
    }
    Ok(h)
}

/// Both sides of `h_G(t) = (1 + ... + t^(k-1)) prod h_{G_i}(t)` over the
/// connected components `G_1, ..., G_k`.
pub fn h_disconnected_check(g: &Graph) -> Result<ProductCheck> {
    let direct = h_polynomial(&graphical_building_set(g), Vars::T)?;
    let comps = g.components();
    let mut formula = Polynomial::t_geometric(comps.len() as u64);
    for c in comps {
        formula = &formula * &h_polynomial(&graphical_sets(g, c), Vars::T)?;
    }
    Ok(ProductCheck { direct, formula })
}
