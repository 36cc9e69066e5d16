use std::fmt;

/// A set of hyperfield elements, stored as a 64-bit mask.
///
/// Element indices are dense, so every table this crate builds has at most
/// 64 elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn full(order: usize) -> ElemSet {
        if order >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << order) - 1)
        }
    }

    pub fn singleton(x: usize) -> ElemSet {
        ElemSet(1u64 << x)
    }

    pub fn from_iter_elems<I: IntoIterator<Item = usize>>(it: I) -> ElemSet {
        let mut s = ElemSet::EMPTY;
        for x in it {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u64 << x);
    }

    pub fn without(self, x: usize) -> ElemSet {
        ElemSet(self.0 & !(1u64 << x))
    }

    pub fn with(self, x: usize) -> ElemSet {
        ElemSet(self.0 | 1u64 << x)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    /// Image of the set under an element map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> ElemSet {
        self.iter().map(f).fold(ElemSet::EMPTY, |s, x| s.with(x))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct ElemIter(u64);

impl Iterator for ElemIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_iter_elems(iter)
    }
}

/// Serialized as a sorted index array.
impl serde::Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_ops() {
        let s: ElemSet = [0, 3, 63].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(63));
        assert!(!s.contains(2));
        assert_eq!(s.to_vec(), vec![0, 3, 63]);
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(ElemSet::full(5).to_vec(), vec![0, 1, 2, 3, 4]);
        assert!(ElemSet::singleton(3).is_subset(s));
        assert_eq!(s.map(|x| x / 2).to_vec(), vec![0, 1, 31]);
    }
}
