use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

const WORD: usize = u64::BITS as usize;

/// A subset of `{0, .., n-1}` packed into 64-bit words.
///
/// Up to 256 vertices live inline. Binary operations require both operands to
/// share the same universe size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: SmallVec<[u64; 4]>,
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: smallvec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet {
            universe,
            words: smallvec![u64::MAX; words_for(universe)],
        };
        s.trim();
        s
    }

    /// Builds a set from members; panics if a member is out of range.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Self {
        let mut s = Self::empty(universe);
        for v in members {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Inserts `v`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let w = &mut self.words[v / WORD];
        let mask = 1u64 << (v % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let w = &mut self.words[v / WORD];
        let mask = 1u64 << (v % WORD);
        let present = *w & mask != 0;
        *w &= !mask;
        present
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    #[inline]
    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    #[inline]
    pub fn difference_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Size of the intersection without materialising it.
    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Members<'a>;

    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SetRepr {
    n: usize,
    members: Vec<usize>,
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SetRepr {
            n: self.universe,
            members: self.to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SetRepr::deserialize(deserializer)?;
        if let Some(&bad) = repr.members.iter().find(|&&v| v >= repr.n) {
            return Err(serde::de::Error::custom(format!(
                "member {bad} outside universe {}",
                repr.n
            )));
        }
        Ok(VertexSet::from_members(repr.n, repr.members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_set_is_trimmed() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69));
        assert!(!s.contains(70));
        assert_eq!(s.complement().len(), 0);
    }

    #[test]
    fn basic_ops() {
        let a = VertexSet::from_members(10, [1, 3, 5, 7]);
        let b = VertexSet::from_members(10, [3, 4, 5]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 5]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 3, 4, 5, 7]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 7]);
        assert_eq!(a.intersection_len(&b), 2);
        assert!(!a.is_subset(&b));
        assert!(VertexSet::from_members(10, [3]).is_subset(&a));
        assert_eq!(b.complement().len(), 7);
    }

    #[test]
    fn serde_round_trip() {
        let a = VertexSet::from_members(300, [0, 64, 299]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":300,"members":[0,64,299]}"#);
        let back: VertexSet = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
        assert!(serde_json::from_str::<VertexSet>(r#"{"n":3,"members":[3]}"#).is_err());
    }

    proptest! {
        #[test]
        fn matches_btreeset(n in 1usize..300, xs in proptest::collection::vec(0usize..300, 0..40),
                            ys in proptest::collection::vec(0usize..300, 0..40)) {
            use std::collections::BTreeSet;
            let xs: BTreeSet<usize> = xs.into_iter().filter(|&v| v < n).collect();
            let ys: BTreeSet<usize> = ys.into_iter().filter(|&v| v < n).collect();
            let a = VertexSet::from_members(n, xs.iter().copied());
            let b = VertexSet::from_members(n, ys.iter().copied());
            prop_assert_eq!(a.to_vec(), xs.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersection(&b).to_vec(), xs.intersection(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.union(&b).to_vec(), xs.union(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.difference(&b).to_vec(), xs.difference(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.complement().len(), n - xs.len());
        }
    }
}
