use std::fmt;

/// A subset of the message indices `0..64`, stored as a bitmask.
///
/// Indices are 0-based; the text and JSON formats add one at the boundary.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MessageSet(pub u64);

impl MessageSet {
    pub const EMPTY: MessageSet = MessageSet(0);

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            MessageSet(u64::MAX)
        } else {
            MessageSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        MessageSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(MessageSet::EMPTY, |acc, i| acc.with(i))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        MessageSet(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        MessageSet(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        MessageSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        MessageSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        MessageSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within `0..n`.
    pub fn complement(self, n: usize) -> Self {
        MessageSet(!self.0 & MessageSet::full(n).0)
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Members as 1-based indices, ascending.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Every subset of `self`, including the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            current: 0,
            done: false,
        }
    }
}

impl fmt::Debug for MessageSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
    }
}

impl IntoIterator for MessageSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for MessageSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        MessageSet::from_indices(iter)
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Subset enumeration in increasing mask order.
pub struct Subsets {
    mask: u64,
    current: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = MessageSet;

    fn next(&mut self) -> Option<MessageSet> {
        if self.done {
            return None;
        }
        let out = MessageSet(self.current);
        if self.current == self.mask {
            self.done = true;
        } else {
            self.current = (self.current.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = MessageSet::from_indices([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(MessageSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn complement_stays_in_range() {
        let s = MessageSet::from_indices([0, 2]);
        assert_eq!(s.complement(4), MessageSet::from_indices([1, 3]));
        assert_eq!(MessageSet::full(64).len(), 64);
    }
}
