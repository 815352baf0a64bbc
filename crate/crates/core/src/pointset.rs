//! Bit-indexed sets of points.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Upper bound on the number of points in any space.
///
/// Exhaustive checks are exponential in the point count, so this is kept
/// well below the 64 bits a [`PointSet`] could address.
pub const MAX_POINTS: usize = 16;

/// A set of points `0..n`, one bit per point.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(point: usize) -> Self {
        PointSet(1u64 << point)
    }

    pub fn contains(self, point: usize) -> bool {
        point < 64 && self.0 & (1u64 << point) != 0
    }

    pub fn insert(&mut self, point: usize) {
        self.0 |= 1u64 << point;
    }

    pub fn remove(&mut self, point: usize) {
        self.0 &= !(1u64 << point);
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> PointSet {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: PointSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True when every member is below `n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(PointSet::full(n))
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `{0, .., n-1}`, in increasing bit order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
        (0..(1u64 << n)).map(PointSet)
    }

    /// Order by cardinality, then lexicographically on the sorted members.
    pub fn canonical_cmp(&self, other: &PointSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = PointSet::EMPTY;
        for point in iter {
            set.insert(point);
        }
        set
    }
}

impl<const N: usize> From<[usize; N]> for PointSet {
    fn from(points: [usize; N]) -> Self {
        points.into_iter().collect()
    }
}

impl From<&[usize]> for PointSet {
    fn from(points: &[usize]) -> Self {
        points.iter().copied().collect()
    }
}

#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let point = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(point)
    }
}

impl IntoIterator for PointSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, point) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{point}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = points.iter().find(|&&p| p >= 64) {
            return Err(serde::de::Error::custom(format!("point {bad} out of range")));
        }
        Ok(points.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let a = PointSet::from([0, 2]);
        let b = PointSet::from([2, 3]);
        assert_eq!(a.union(b), PointSet::from([0, 2, 3]));
        assert_eq!(a.intersection(b), PointSet::from([2]));
        assert_eq!(a.difference(b), PointSet::from([0]));
        assert_eq!(a.complement(4), PointSet::from([1, 3]));
        assert_eq!(a.to_vec(), vec![0, 2]);
        assert!(!a.within(2));
        assert!(a.within(3));
    }

    #[test]
    fn canonical_order_is_size_then_lexicographic() {
        let mut sets = vec![
            PointSet::from([1, 2]),
            PointSet::from([0]),
            PointSet::EMPTY,
            PointSet::from([0, 2]),
            PointSet::from([2]),
        ];
        sets.sort_by(PointSet::canonical_cmp);
        assert_eq!(format!("{sets:?}"), "[{}, {0}, {2}, {0,2}, {1,2}]");
    }
}
