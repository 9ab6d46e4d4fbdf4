//! Building sets: validation, restriction, connected components, the
//! combined connected building set, and the named families.
//!
//! A building set lives on a ground set of at most 64 labels. Restriction
//! keeps the original labels, so a component of a restriction is again a
//! building set on a subset of `[n]`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Labels, Result};
use crate::set::{ElementSet, MAX_LABEL};

#[derive(Clone)]
pub struct BuildingSet {
    ground: ElementSet,
    /// Members in canonical order (size, then lexicographic).
    sets: Vec<ElementSet>,
    index: HashSet<ElementSet>,
}

impl PartialEq for BuildingSet {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.sets == other.sets
    }
}

impl Eq for BuildingSet {}

impl fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BuildingSet")
            .field("ground", &self.ground)
            .field("sets", &self.sets)
            .finish()
    }
}

impl BuildingSet {
    /// Validates a family of subsets of `[n]`.
    pub fn validate(n: u32, sets: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        if n as usize > MAX_LABEL as usize {
            return Err(Error::GroundTooLarge(n as usize));
        }
        let ground = ElementSet::interval(n);
        let mut family = Vec::new();
        for s in sets {
            if s.iter().any(|&x| x == 0 || x > n) || s.is_empty() {
                return Err(Error::SetOutOfRange(Labels(s)));
            }
            family.push(s.iter().collect::<ElementSet>());
        }
        Self::on_ground(ground, family)
    }

    /// Validates a family on an arbitrary ground set.
    pub fn on_ground(
        ground: ElementSet,
        sets: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self> {
        let b = Self::assemble(ground, sets);
        for s in &b.sets {
            if s.is_empty() || !s.is_subset(ground) {
                return Err(Error::SetOutOfRange(s.labels()));
            }
        }
        for i in ground.iter() {
            if !b.index.contains(&ElementSet::singleton(i)) {
                return Err(Error::MissingSingleton(i));
            }
        }
        if let Some((a, c)) = b.first_closure_violation() {
            return Err(Error::UnionClosureViolation(a.labels(), c.labels()));
        }
        Ok(b)
    }

    /// For families that are building sets by construction.
    pub(crate) fn trusted(ground: ElementSet, sets: impl IntoIterator<Item = ElementSet>) -> Self {
        let b = Self::assemble(ground, sets);
        debug_assert!(b.first_closure_violation().is_none());
        b
    }

    fn assemble(ground: ElementSet, sets: impl IntoIterator<Item = ElementSet>) -> Self {
        let index: HashSet<ElementSet> = sets.into_iter().collect();
        let mut sets: Vec<ElementSet> = index.iter().copied().collect();
        sets.sort_unstable();
        BuildingSet {
            ground,
            sets,
            index,
        }
    }

    /// First intersecting pair (in canonical order) whose union is missing.
    fn first_closure_violation(&self) -> Option<(ElementSet, ElementSet)> {
        for (i, &a) in self.sets.iter().enumerate() {
            for &c in &self.sets[i + 1..] {
                if a.intersects(c) && !self.index.contains(&(a | c)) {
                    return Some((a, c));
                }
            }
        }
        None
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    /// Number of ground elements.
    pub fn size(&self) -> u32 {
        self.ground.len() as u32
    }

    /// Members in canonical order.
    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.index.contains(&s)
    }

    pub fn is_connected(&self) -> bool {
        !self.ground.is_empty() && self.contains(self.ground)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }

    /// `{I in B : I ⊆ S}` on the ground set `S ∩ ground`.
    pub fn restrict(&self, s: ElementSet) -> BuildingSet {
        let s = s & self.ground;
        Self::trusted(s, self.sets.iter().copied().filter(|m| m.is_subset(s)))
    }

    /// Inclusion-maximal members contained in `s`, ordered by minimum
    /// element. These partition `s ∩ ground`.
    pub fn component_supports(&self, s: ElementSet) -> Vec<ElementSet> {
        let s = s & self.ground;
        let mut picked = Vec::new();
        let mut covered = ElementSet::EMPTY;
        // Largest first: a member meeting a picked maximal member must lie in it.
        for &m in self.sets.iter().rev() {
            if covered == s {
                break;
            }
            if m.is_subset(s) && !m.intersects(covered) {
                picked.push(m);
                covered |= m;
            }
        }
        picked.sort_unstable_by_key(|m| m.first());
        picked
    }

    /// Connected components as `(support, restriction to support)`.
    pub fn components(&self) -> Vec<(ElementSet, BuildingSet)> {
        self.component_supports(self.ground)
            .into_iter()
            .map(|s| (s, self.restrict(s)))
            .collect()
    }

    /// `(⊔ parts) ⊔ {⋃ supports}` for connected parts on disjoint supports.
    pub fn combine(parts: &[BuildingSet]) -> Result<BuildingSet> {
        if parts.is_empty() {
            return Err(Error::BadParams("combine needs at least one part".into()));
        }
        let mut ground = ElementSet::EMPTY;
        for (i, p) in parts.iter().enumerate() {
            p.require_connected()?;
            if let Some(q) = parts[..i].iter().find(|q| q.ground.intersects(p.ground)) {
                return Err(Error::OverlappingSupports(
                    q.ground.labels(),
                    p.ground.labels(),
                ));
            }
            ground |= p.ground;
        }
        let sets = parts
            .iter()
            .flat_map(|p| p.sets.iter().copied())
            .chain(std::iter::once(ground));
        Ok(Self::trusted(ground, sets))
    }

    /// Image under `i -> n - i + 1`, where `n` is the largest ground label.
    pub fn apply_involution(&self) -> BuildingSet {
        let n = self.ground.last().unwrap_or(0);
        Self::trusted(
            self.ground.reflect(n),
            self.sets.iter().map(|s| s.reflect(n)),
        )
    }

    pub fn is_omega_invariant(&self) -> bool {
        self.apply_involution() == *self
    }

    /// `{"n": 4, "sets": [[1],[2],...]}`. A ground set other than `[n]`
    /// is written out as an extra `"ground"` field.
    pub fn to_json(&self) -> Value {
        let n = self.ground.last().unwrap_or(0);
        let sets: Vec<Vec<u32>> = self.sets.iter().map(|s| s.to_vec()).collect();
        if self.ground == ElementSet::interval(n) {
            json!({ "n": n, "sets": sets })
        } else {
            json!({ "n": n, "ground": self.ground.to_vec(), "sets": sets })
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: BuildingSetFile = serde_json::from_str(text)
            .map_err(|e| Error::BadParams(format!("building-set JSON: {e}")))?;
        match file.ground {
            None => Self::validate(file.n, file.sets),
            Some(g) => {
                if g.iter().any(|&x| x == 0 || x > file.n) {
                    return Err(Error::SetOutOfRange(Labels(g)));
                }
                let sets = file
                    .sets
                    .into_iter()
                    .map(|s| {
                        if s.iter().any(|&x| x == 0 || x > MAX_LABEL) {
                            Err(Error::SetOutOfRange(Labels(s)))
                        } else {
                            Ok(s.iter().collect())
                        }
                    })
                    .collect::<Result<Vec<ElementSet>>>()?;
                Self::on_ground(g.iter().collect(), sets)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BuildingSetFile {
    n: u32,
    #[serde(default)]
    ground: Option<Vec<u32>>,
    sets: Vec<Vec<u32>>,
}

fn check_n(n: u32, min: u32) -> Result<()> {
    if n < min || n > MAX_LABEL {
        Err(Error::BadParams(format!(
            "n = {n} outside [{min}, {MAX_LABEL}]"
        )))
    } else {
        Ok(())
    }
}

fn singletons(ground: ElementSet) -> impl Iterator<Item = ElementSet> {
    ground.iter().map(ElementSet::singleton)
}

/// Every nonempty subset of `ground` with at least `min_size` elements.
fn subsets_of_size_at_least(ground: ElementSet, min_size: usize) -> Vec<ElementSet> {
    let elems = ground.to_vec();
    assert!(
        elems.len() <= 24,
        "subset enumeration over more than 24 elements"
    );
    (1u64..(1u64 << elems.len()))
        .map(|mask| {
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect::<ElementSet>()
        })
        .filter(|s| s.len() >= min_size)
        .collect()
}

/// All nonempty subsets of `[n]` (the permutohedron).
pub fn complete(n: u32) -> Result<BuildingSet> {
    check_n(n, 1)?;
    if n > 16 {
        return Err(Error::BadParams(format!(
            "complete building set on {n} > 16 elements"
        )));
    }
    let g = ElementSet::interval(n);
    Ok(BuildingSet::trusted(g, subsets_of_size_at_least(g, 1)))
}

/// Singletons plus `[n]` (the simplex).
pub fn simplex(n: u32) -> Result<BuildingSet> {
    check_n(n, 1)?;
    let g = ElementSet::interval(n);
    Ok(BuildingSet::trusted(g, singletons(g).chain([g])))
}

/// The `S_n`-invariant building set with minimal nonsingleton size `k`.
pub fn snk(n: u32, k: u32) -> Result<BuildingSet> {
    if k < 2 || k > n {
        return Err(Error::BadParams(format!(
            "snk needs 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    check_n(n, 2)?;
    if n > 16 {
        return Err(Error::BadParams(format!("snk on {n} > 16 elements")));
    }
    let g = ElementSet::interval(n);
    Ok(BuildingSet::trusted(
        g,
        singletons(g).chain(subsets_of_size_at_least(g, k as usize)),
    ))
}

/// Intervals `[i, j]` of `[n]` (graphical building set of the path).
pub fn path(n: u32) -> Result<BuildingSet> {
    check_n(n, 1)?;
    let g = ElementSet::interval(n);
    let sets = (1..=n).flat_map(|i| (i..=n).map(move |j| ElementSet::range(i, j)));
    Ok(BuildingSet::trusted(g, sets))
}

/// Graphical building set of `K_{1,n}` on `[n + 1]`, center `n + 1`.
pub fn star(n: u32) -> Result<BuildingSet> {
    check_n(n, 1)?;
    check_n(n + 1, 2)?;
    if n > 20 {
        return Err(Error::BadParams(format!("star with {n} > 20 leaves")));
    }
    let leaves = ElementSet::interval(n);
    let center = ElementSet::singleton(n + 1);
    let with_center = std::iter::once(center).chain(
        subsets_of_size_at_least(leaves, 1)
            .into_iter()
            .map(move |s| s | center),
    );
    Ok(BuildingSet::trusted(
        leaves | center,
        singletons(leaves).chain(with_center),
    ))
}

/// `{[i, n], {i} : i in [n]}`.
pub fn stanley_pitman(n: u32) -> Result<BuildingSet> {
    check_n(n, 1)?;
    let g = ElementSet::interval(n);
    Ok(BuildingSet::trusted(
        g,
        singletons(g).chain((1..=n).map(|i| ElementSet::range(i, n))),
    ))
}

/// Named family lookup. `k` is only used by `snk`.
pub fn family(name: &str, n: u32, k: Option<u32>) -> Result<BuildingSet> {
    match name {
        "complete" | "permutohedron" => complete(n),
        "simplex" => simplex(n),
        "snk" => snk(
            n,
            k.ok_or_else(|| Error::BadParams("snk requires k".into()))?,
        ),
        "path" | "associahedron" => path(n),
        "star" | "stellohedron" => star(n),
        "stanley_pitman" | "stanley-pitman" => stanley_pitman(n),
        other => Err(Error::BadParams(format!("unknown family `{other}`"))),
    }
}

pub const FAMILY_NAMES: [&str; 6] = [
    "complete",
    "simplex",
    "snk",
    "path",
    "star",
    "stanley_pitman",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn es(v: &[u32]) -> ElementSet {
        v.iter().collect()
    }

    fn lists(b: &BuildingSet) -> Vec<Vec<u32>> {
        b.sets().iter().map(|s| s.to_vec()).collect()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn validate_examples() {
        let err = BuildingSet::validate(3, vec![vec![1], vec![2], vec![3], vec![1, 2], vec![2, 3]])
            .unwrap_err();
        assert_eq!(
            err,
            Error::UnionClosureViolation(Labels(vec![1, 2]), Labels(vec![2, 3]))
        );
        let b = BuildingSet::validate(
            3,
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![2, 3],
                vec![1, 2, 3],
            ],
        )
        .unwrap();
        assert!(b.is_connected());
        assert_eq!(b, path(3).unwrap());
        assert_eq!(
            BuildingSet::validate(2, vec![vec![1], vec![1, 2]]).unwrap_err(),
            Error::MissingSingleton(2)
        );
        assert!(matches!(
            BuildingSet::validate(2, vec![vec![1], vec![2], vec![3]]),
            Err(Error::SetOutOfRange(_))
        ));
    }

    #[test]
    fn restrict_examples() {
        let p3 = path(3).unwrap();
        assert_eq!(lists(&p3.restrict(es(&[1, 3]))), vec![vec![1], vec![3]]);
        assert_eq!(p3.restrict(ElementSet::interval(3)), p3);
        let b43 = snk(4, 3).unwrap();
        assert_eq!(
            lists(&b43.restrict(es(&[1, 2, 3]))),
            vec![vec![1], vec![2], vec![3], vec![1, 2, 3]]
        );
    }

    #[test]
    fn components_examples() {
        let b = BuildingSet::validate(3, vec![vec![1], vec![2], vec![3], vec![2, 3]]).unwrap();
        let supports: Vec<_> = b.components().into_iter().map(|(s, _)| s).collect();
        assert_eq!(supports, vec![es(&[1]), es(&[2, 3])]);
        let p3 = path(3).unwrap();
        assert_eq!(p3.components(), vec![(ElementSet::interval(3), p3.clone())]);
        let singles = BuildingSet::validate(3, vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(singles.components().len(), 3);
        assert!(!singles.is_connected());
    }

    #[test]
    fn combine_examples() {
        let seg = path(2).unwrap();
        let three = BuildingSet::on_ground(es(&[3]), [es(&[3])]).unwrap();
        let c = BuildingSet::combine(&[seg.clone(), three]).unwrap();
        assert_eq!(
            lists(&c),
            vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 2, 3]]
        );
        assert_eq!(
            BuildingSet::combine(std::slice::from_ref(&seg)).unwrap(),
            seg
        );
        let parts: Vec<_> = (1..=4)
            .map(|i| BuildingSet::on_ground(es(&[i]), [es(&[i])]).unwrap())
            .collect();
        assert_eq!(BuildingSet::combine(&parts).unwrap(), simplex(4).unwrap());
        assert!(matches!(
            BuildingSet::combine(&[seg.clone(), seg]),
            Err(Error::OverlappingSupports(..))
        ));
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            lists(&snk(3, 3).unwrap()),
            vec![vec![1], vec![2], vec![3], vec![1, 2, 3]]
        );
        assert_eq!(
            lists(&stanley_pitman(3).unwrap()),
            vec![vec![1], vec![2], vec![3], vec![2, 3], vec![1, 2, 3]]
        );
        assert_eq!(
            lists(&path(3).unwrap()),
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
        assert_eq!(
            lists(&star(2).unwrap()),
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
        assert!(matches!(snk(3, 1), Err(Error::BadParams(_))));
        assert!(matches!(snk(3, 4), Err(Error::BadParams(_))));
        assert!(matches!(
            family("cyclohedron", 3, None),
            Err(Error::BadParams(_))
        ));
        for name in FAMILY_NAMES {
            let b = family(name, 4, Some(3)).unwrap();
            assert!(b.is_connected(), "{name}");
            let raw: Vec<Vec<u32>> = b.sets().iter().map(|s| s.to_vec()).collect();
            assert_eq!(
                BuildingSet::on_ground(b.ground(), b.sets().iter().copied()).unwrap(),
                b
            );
            let n = b.ground().last().unwrap();
            assert_eq!(BuildingSet::validate(n, raw).unwrap(), b);
        }
    }

    #[test]
    fn family_sizes() {
        for n in 1..=8u32 {
            assert_eq!(complete(n).unwrap().len() as u64, (1 << n) - 1);
            for k in 2..=n {
                let expected = n as u64 + (k..=n).map(|j| binom(n as u64, j as u64)).sum::<u64>();
                assert_eq!(snk(n, k).unwrap().len() as u64, expected);
            }
        }
    }

    #[test]
    fn involution_examples() {
        let p3 = path(3).unwrap();
        assert_eq!(p3.apply_involution(), p3);
        for n in 2..=6 {
            for k in 2..=n {
                assert!(snk(n, k).unwrap().is_omega_invariant());
            }
        }
        let sp = stanley_pitman(3).unwrap();
        let image = sp.apply_involution();
        assert_eq!(
            lists(&image),
            vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 2, 3]]
        );
        assert_ne!(image, sp);
        assert_eq!(image.apply_involution(), sp);
    }

    #[test]
    fn json_roundtrip() {
        let b = path(3).unwrap();
        assert_eq!(
            b.to_json().to_string(),
            r#"{"n":3,"sets":[[1],[2],[3],[1,2],[2,3],[1,2,3]]}"#
        );
        assert_eq!(
            BuildingSet::from_json_str(&b.to_json().to_string()).unwrap(),
            b
        );
        let r = b.restrict(es(&[2, 3]));
        assert_eq!(
            BuildingSet::from_json_str(&r.to_json().to_string()).unwrap(),
            r
        );
        let bad = r#"{"n":3,"sets":[[1],[2],[3],[1,2],[2,3]]}"#;
        assert!(matches!(
            BuildingSet::from_json_str(bad),
            Err(Error::UnionClosureViolation(..))
        ));
    }
}
