//! Permutation and poset statistics.
//!
//! A poset is stored by its cover relations only. For the posets that index
//! maximal cones of a simple generalized permutohedron the Hasse diagram is
//! a tree, which is what [`Poset::is_tree_poset`] checks, and on such posets
//! the minimal rank function is unique. Descents are covers `i ⋖ j` with
//! `i > j` as integers; the major index sums the rank of the upper element
//! over descents.

use std::collections::VecDeque;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// A word of distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if word.contains(&0) {
            return Err(Error::InvalidPermutation("entries must be positive".into()));
        }
        if !word.iter().all_unique() {
            return Err(Error::InvalidPermutation(format!(
                "repeated entry in {word:?}"
            )));
        }
        Ok(Permutation(word))
    }

    /// Parses a compact word such as `"5418"`; single-digit entries only.
    pub fn from_digits(s: &str) -> Result<Self> {
        let word = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::InvalidPermutation(format!("bad digit `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(word)
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn stats(&self) -> PermStats {
        perm_stats(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermStats {
    /// 1-based positions `i` with `w_i > w_{i+1}`.
    pub descents: Vec<usize>,
    pub des: usize,
    pub maj: usize,
}

pub fn perm_stats(word: &[u32]) -> PermStats {
    let descents: Vec<usize> = word
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect();
    PermStats {
        des: descents.len(),
        maj: descents.iter().sum(),
        descents,
    }
}

/// All permutations of `[n]` in lexicographic order.
pub fn permutations(n: u32) -> impl Iterator<Item = Vec<u32>> {
    (1..=n).permutations(n as usize)
}

/// `sum over S_n of t^des q^maj`.
pub fn euler_mahonian(n: u32) -> Polynomial {
    Polynomial::from_terms(permutations(n).map(|w| {
        let s = perm_stats(&w);
        (1, Monomial::tq(s.des as u64, s.maj as u64))
    }))
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `[n]_q! = prod_{i=1}^{n} (1 + q + ... + q^(i-1))`.
pub fn q_factorial(n: u32) -> Polynomial {
    (1..=n as u64)
        .map(|i| Polynomial::from_terms((0..i).map(|j| (1, Monomial::tq(0, j)))))
        .product()
}

/// A finite poset on `[n]` given by its covers `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PosetRepr", into = "PosetRepr")]
pub struct Poset {
    n: u32,
    covers: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct PosetRepr {
    n: u32,
    covers: Vec<[u32; 2]>,
}

impl TryFrom<PosetRepr> for Poset {
    type Error = Error;
    fn try_from(r: PosetRepr) -> Result<Self> {
        Poset::new(r.n, r.covers.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<Poset> for PosetRepr {
    fn from(p: Poset) -> Self {
        PosetRepr {
            n: p.n,
            covers: p.covers.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl Poset {
    /// Validates that the covers are in range, acyclic and irredundant.
    pub fn new(n: u32, covers: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut covers: Vec<(u32, u32)> = covers.into_iter().collect();
        covers.sort_unstable();
        covers.dedup();
        for &(a, b) in &covers {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidPoset(format!(
                    "cover ({a},{b}) outside [{n}]"
                )));
            }
            if a == b {
                return Err(Error::InvalidPoset(format!("self cover ({a},{a})")));
            }
        }
        let p = Poset { n, covers };
        let up = p.upper_covers();
        // Antisymmetry: no element reaches itself.
        for x in 1..=n {
            if p.reachable_from(&up, x, None).contains(&x) {
                return Err(Error::InvalidPoset(format!(
                    "covers contain a cycle through {x}"
                )));
            }
        }
        // Irredundancy: a cover may not be implied by a longer path.
        for &(a, b) in &p.covers {
            if p.reachable_from(&up, a, Some((a, b))).contains(&b) {
                return Err(Error::InvalidPoset(format!(
                    "cover ({a},{b}) is implied by transitivity"
                )));
            }
        }
        Ok(p)
    }

    /// The chain `w_1 < w_2 < ... < w_n` of a permutation of `[n]`.
    pub fn chain(word: &[u32]) -> Result<Self> {
        let n = word.len() as u32;
        let sorted: Vec<u32> = word.iter().copied().sorted().collect();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::InvalidPermutation(format!(
                "{word:?} is not a permutation of [{n}]"
            )));
        }
        Poset::new(n, word.windows(2).map(|w| (w[0], w[1])))
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: u32) -> Self {
        Poset { n, covers: vec![] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Covers `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    fn upper_covers(&self) -> Vec<Vec<u32>> {
        let mut up = vec![Vec::new(); self.n as usize + 1];
        for &(a, b) in &self.covers {
            up[a as usize].push(b);
        }
        up
    }

    /// Elements strictly above `x`, optionally ignoring one cover.
    fn reachable_from(&self, up: &[Vec<u32>], x: u32, skip: Option<(u32, u32)>) -> Vec<u32> {
        let mut seen = vec![false; self.n as usize + 1];
        let mut stack = vec![x];
        let mut out = Vec::new();
        while let Some(y) = stack.pop() {
            for &z in &up[y as usize] {
                if Some((y, z)) == skip || seen[z as usize] {
                    continue;
                }
                seen[z as usize] = true;
                out.push(z);
                stack.push(z);
            }
        }
        out
    }

    /// Whether `a <= b` in the order generated by the covers.
    pub fn leq(&self, a: u32, b: u32) -> bool {
        a == b
            || self
                .reachable_from(&self.upper_covers(), a, None)
                .contains(&b)
    }

    pub fn maximal_elements(&self) -> Vec<u32> {
        (1..=self.n)
            .filter(|&x| !self.covers.iter().any(|&(a, _)| a == x))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<u32> {
        (1..=self.n)
            .filter(|&x| !self.covers.iter().any(|&(_, b)| b == x))
            .collect()
    }

    /// Exactly `n - 1` covers and a connected Hasse diagram.
    pub fn is_tree_poset(&self) -> bool {
        if self.n == 0 || self.covers.len() != self.n as usize - 1 {
            return false;
        }
        let mut uf = UnionFind::<usize>::new(self.n as usize + 1);
        for &(a, b) in &self.covers {
            uf.union(a as usize, b as usize);
        }
        (2..=self.n as usize).all(|x| uf.equiv(1, x))
    }

    fn require_tree(&self) -> Result<()> {
        if self.is_tree_poset() {
            Ok(())
        } else {
            Err(Error::NotTreePoset {
                index: 0,
                reason: format!(
                    "{} covers on {} elements or Hasse diagram disconnected",
                    self.covers.len(),
                    self.n
                ),
            })
        }
    }

    pub fn minimal_rank(&self) -> Result<RankAssignment> {
        self.minimal_rank_from(1)
    }

    /// Propagates a provisional rank over the Hasse tree from `start`
    /// (+1 along upward covers, -1 along downward ones), then shifts so the
    /// minimum is 0.
    pub fn minimal_rank_from(&self, start: u32) -> Result<RankAssignment> {
        self.require_tree()?;
        if !(1..=self.n).contains(&start) {
            return Err(Error::BadParams(format!(
                "start {start} outside [{}]",
                self.n
            )));
        }
        let n = self.n as usize;
        let mut adj: Vec<Vec<(u32, i64)>> = vec![Vec::new(); n + 1];
        for &(a, b) in &self.covers {
            adj[a as usize].push((b, 1));
            adj[b as usize].push((a, -1));
        }
        let mut provisional: Vec<Option<i64>> = vec![None; n + 1];
        provisional[start as usize] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let rx = provisional[x as usize].expect("queued elements are ranked");
            for &(y, step) in &adj[x as usize] {
                if provisional[y as usize].is_none() {
                    provisional[y as usize] = Some(rx + step);
                    queue.push_back(y);
                }
            }
        }
        let ranks: Vec<i64> = provisional[1..]
            .iter()
            .map(|r| r.expect("tree poset is connected"))
            .collect();
        let min = ranks.iter().copied().min().unwrap_or(0);
        Ok(RankAssignment {
            ranks: ranks.into_iter().map(|r| (r - min) as u64).collect(),
        })
    }

    /// `(des, maj)` with respect to the minimal rank function.
    pub fn stats(&self) -> Result<PosetStats> {
        let rank = self.minimal_rank()?;
        let mut stats = PosetStats { des: 0, maj: 0 };
        for &(lower, upper) in &self.covers {
            if lower > upper {
                stats.des += 1;
                stats.maj += rank.get(upper);
            }
        }
        Ok(stats)
    }

    /// `self ⊕ other`: `other` is relabeled by `+ self.n()` and placed above.
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        let shift = self.n;
        let tops = self.maximal_elements();
        let bottoms: Vec<u32> = other.minimal_elements().iter().map(|b| b + shift).collect();
        let covers = self
            .covers
            .iter()
            .copied()
            .chain(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)))
            .chain(
                tops.iter()
                    .flat_map(|&m| bottoms.iter().map(move |&x| (m, x))),
            );
        Poset::new(self.n + other.n, covers).expect("ordinal sum of posets is a poset")
    }

    /// Relation shared by every chain `w_1 < ... < w_n` in `words`, reduced
    /// to its covers. This is the poset of the union of the corresponding
    /// braid cones.
    pub fn common_refinement(words: &[Vec<u32>]) -> Result<Poset> {
        let first = words
            .first()
            .ok_or_else(|| Error::BadParams("no permutations to merge".into()))?;
        let n = first.len() as u32;
        let positions: Vec<Vec<usize>> = words
            .iter()
            .map(|w| {
                Poset::chain(w)?;
                if w.len() as u32 != n {
                    return Err(Error::BadParams("permutations of different sizes".into()));
                }
                let mut pos = vec![0; n as usize + 1];
                for (i, &x) in w.iter().enumerate() {
                    pos[x as usize] = i;
                }
                Ok(pos)
            })
            .collect::<Result<_>>()?;
        let less = |a: u32, b: u32| positions.iter().all(|p| p[a as usize] < p[b as usize]);
        let mut covers = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                if a != b && less(a, b) && !(1..=n).any(|c| less(a, c) && less(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        Poset::new(n, covers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAssignment {
    ranks: Vec<u64>,
}

impl RankAssignment {
    pub fn get(&self, x: u32) -> u64 {
        self.ranks[x as usize - 1]
    }

    /// Ranks of `1, ..., n`.
    pub fn as_slice(&self) -> &[u64] {
        &self.ranks
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PosetStats {
    pub des: u64,
    pub maj: u64,
}

/// `sum t^des(Q) q^maj(Q)` over a list of cone posets. The list is not
/// checked to tile a fan.
pub fn qh_from_posets(posets: &[Poset]) -> Result<Polynomial> {
    let mut h = Polynomial::zero();
    for (index, p) in posets.iter().enumerate() {
        let s = p.stats().map_err(|e| match e {
            Error::NotTreePoset { reason, .. } => Error::NotTreePoset { index, reason },
            other => other,
        })?;
        h.add_term(1, Monomial::tq(s.des, s.maj));
    }
    Ok(h)
}

/// One chain per permutation of `[n]`, in lexicographic order.
pub fn braid_fan_posets(n: u32) -> Vec<Poset> {
    permutations(n)
        .map(|w| Poset::chain(&w).expect("permutation of [n]"))
        .collect()
}

/// Braid fan of `[n]` with each group of permutations merged into a single
/// cone. Unmerged chains come first (lexicographic), then merged cones in
/// the given order.
pub fn coarsened_fan_posets(n: u32, merges: &[Vec<Vec<u32>>]) -> Result<Vec<Poset>> {
    let merged: Vec<&Vec<u32>> = merges.iter().flatten().collect();
    let mut out: Vec<Poset> = permutations(n)
        .filter(|w| !merged.contains(&w))
        .map(|w| Poset::chain(&w))
        .collect::<Result<_>>()?;
    for group in merges {
        out.push(Poset::common_refinement(group)?);
    }
    Ok(out)
}

/// Parses `[{"n":3,"covers":[[1,2],[3,2]]}, ...]`.
pub fn posets_from_json(text: &str) -> Result<Vec<Poset>> {
    serde_json::from_str(text).map_err(|e| Error::InvalidPoset(e.to_string()))
}
