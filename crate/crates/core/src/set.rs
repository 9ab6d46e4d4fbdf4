//! Subsets of a small labeled ground set, packed into a `u64`.
//!
//! Label `i` (1-based, at most 64) occupies bit `i - 1`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Labels;

pub const MAX_LABEL: u32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `[n] = {1, ..., n}`.
    pub fn interval(n: u32) -> Self {
        assert!(n <= MAX_LABEL, "ground set larger than {MAX_LABEL}");
        if n == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    /// `[lo, hi]`, empty when `lo > hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        if lo > hi {
            return Self::EMPTY;
        }
        (lo..=hi).collect()
    }

    pub fn singleton(i: u32) -> Self {
        assert!((1..=MAX_LABEL).contains(&i), "label {i} out of range");
        ElementSet(1u64 << (i - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: u32) -> bool {
        (1..=MAX_LABEL).contains(&i) && self.0 & (1u64 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: u32) {
        *self |= Self::singleton(i);
    }

    pub fn remove(&mut self, i: u32) {
        self.0 &= !Self::singleton(i).0;
    }

    pub fn without(self, i: u32) -> Self {
        ElementSet(self.0 & !Self::singleton(i).0)
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: ElementSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn first(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn last(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn labels(self) -> Labels {
        Labels(self.to_vec())
    }

    /// Image under `i -> n - i + 1`.
    pub fn reflect(self, n: u32) -> Self {
        self.iter().map(|i| n + 1 - i).collect()
    }
}

impl std::ops::BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        ElementSet(self.0 | rhs.0)
    }
}

impl std::ops::BitOrAssign for ElementSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        ElementSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        ElementSet(self.0 & !rhs.0)
    }
}

impl FromIterator<u32> for ElementSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<'a> FromIterator<&'a u32> for ElementSet {
    fn from_iter<I: IntoIterator<Item = &'a u32>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

/// Canonical order: by cardinality, then lexicographically on the sorted
/// element lists.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // With equal sizes, whoever owns the smallest differing
                // element sorts first.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels())
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> ElementSet {
        v.iter().collect()
    }

    #[test]
    fn canonical_order_matches_sorted_lists() {
        let mut sets = [
            s(&[2, 3]),
            s(&[1, 2, 3]),
            s(&[3]),
            s(&[1, 4]),
            s(&[1]),
            s(&[1, 3]),
        ];
        sets.sort();
        let lists: Vec<Vec<u32>> = sets.iter().map(|x| x.to_vec()).collect();
        assert_eq!(
            lists,
            vec![
                vec![1],
                vec![3],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
    }

    #[test]
    fn basic_ops() {
        let a = ElementSet::interval(4);
        assert_eq!(a.to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.without(2).to_vec(), vec![1, 3, 4]);
        assert_eq!(a.first(), Some(1));
        assert_eq!(a.last(), Some(4));
        assert_eq!(s(&[1, 2]).reflect(4), s(&[3, 4]));
        assert!(s(&[2]).is_subset(a));
        assert_eq!(ElementSet::range(2, 4), s(&[2, 3, 4]));
        assert!(ElementSet::range(3, 2).is_empty());
        assert_eq!(ElementSet::interval(64).len(), 64);
        assert_eq!(ElementSet::singleton(64).last(), Some(64));
    }
}
