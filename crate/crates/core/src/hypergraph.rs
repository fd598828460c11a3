//! Exact k-uniform hypergraphs for k in {2, 3, 4}.
//!
//! Vertices are `0..n`. Edge membership is a bitset over colex ranks of sorted
//! k-subsets; a per-word prefix count turns a rank into the edge's position in
//! rank order, which is how per-edge labels (component ids, colours) are stored.
//!
//! [`ThreeGraph`] additionally caches every pair neighbourhood `N(uv)`, which
//! is what all the downstream scans intersect.

use std::fmt;

use crate::bitset::VertexSet;
use crate::combinatorics::{binomial, rank, sort_distinct, unrank};
use crate::error::{Error, Result};

/// Largest vertex count accepted unless a caller raises it explicitly.
pub const DEFAULT_VERTEX_CAP: usize = 256;

const WORD: usize = 64;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TooManyVertices { n, cap });
    }
    Ok(())
}

/// Validates and sorts a candidate edge.
pub(crate) fn normalise<const K: usize>(n: usize, e: [usize; K]) -> Result<[usize; K]> {
    if let Some(&v) = e.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    sort_distinct(e).ok_or_else(|| Error::RepeatedVertex(e.to_vec()))
}

/// A k-graph on `0..n` with exact edge membership.
#[derive(Clone, PartialEq, Eq)]
pub struct UniformGraph<const K: usize> {
    n: usize,
    bits: Vec<u64>,
    prefix: Vec<u32>,
    edge_count: usize,
}

pub type TwoGraph = UniformGraph<2>;
pub type FourGraph = UniformGraph<4>;

impl<const K: usize> UniformGraph<K> {
    pub const ARITY: usize = K;

    pub fn empty(n: usize) -> Result<Self> {
        UniformGraphBuilder::new(n).map(UniformGraphBuilder::build)
    }

    pub fn from_edges<I: IntoIterator<Item = [usize; K]>>(n: usize, edges: I) -> Result<Self> {
        let mut b = UniformGraphBuilder::new(n)?;
        for e in edges {
            b.insert(e)?;
        }
        Ok(b.build())
    }

    /// All k-subsets of `0..n`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut b = UniformGraphBuilder::new(n)?;
        let total = binomial(n as u64, K);
        for r in 0..total {
            b.set_rank(r);
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn contains_rank(&self, r: u64) -> bool {
        let r = r as usize;
        let w = r / WORD;
        w < self.bits.len() && self.bits[w] >> (r % WORD) & 1 == 1
    }

    /// Membership test for a sorted edge.
    #[inline]
    pub fn contains_sorted(&self, e: &[usize; K]) -> bool {
        e[K - 1] < self.n && self.contains_rank(rank(e))
    }

    /// Membership test for an edge given in any order. Out-of-range or
    /// repeated vertices are simply not edges.
    pub fn contains(&self, e: [usize; K]) -> bool {
        match sort_distinct(e) {
            Some(s) => self.contains_sorted(&s),
            None => false,
        }
    }

    /// Position of the edge among all edges in rank order.
    #[inline]
    pub fn edge_index_of_rank(&self, r: u64) -> Option<usize> {
        if !self.contains_rank(r) {
            return None;
        }
        let r = r as usize;
        let w = r / WORD;
        let below = self.bits[w] & ((1u64 << (r % WORD)) - 1);
        Some(self.prefix[w] as usize + below.count_ones() as usize)
    }

    pub fn edge_index(&self, e: [usize; K]) -> Option<usize> {
        let s = sort_distinct(e)?;
        if s[K - 1] >= self.n {
            return None;
        }
        self.edge_index_of_rank(rank(&s))
    }

    /// Ranks of all edges, ascending.
    pub fn edge_ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some((i * WORD + b) as u64)
            })
        })
    }

    /// All edges as sorted tuples, in rank order.
    pub fn edges(&self) -> impl Iterator<Item = [usize; K]> + '_ {
        self.edge_ranks().map(unrank::<K>)
    }

    /// Edges lying inside `keep`, on the same vertex range.
    pub fn induced(&self, keep: &VertexSet) -> Self {
        let mut b = UniformGraphBuilder::new_unchecked(self.n);
        for e in self.edges() {
            if e.iter().all(|&v| keep.contains(v)) {
                b.set_rank(rank(&e));
            }
        }
        b.build()
    }

    /// Degree of a (k-1)-set: number of edges containing it.
    pub fn ridge_degree(&self, ridge: &[usize]) -> usize {
        debug_assert_eq!(ridge.len(), K - 1);
        (0..self.n)
            .filter(|v| !ridge.contains(v))
            .filter(|&v| {
                let mut e = [0usize; K];
                e[..K - 1].copy_from_slice(ridge);
                e[K - 1] = v;
                self.contains(e)
            })
            .count()
    }

    /// Applies a vertex permutation `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(self.n, perm)?;
        let mut b = UniformGraphBuilder::new_unchecked(self.n);
        for e in self.edges() {
            let mapped = e.map(|v| perm[v]);
            b.insert(mapped)?;
        }
        Ok(b.build())
    }
}

fn check_permutation(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidParameter(format!(
            "permutation has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
    }
    Ok(())
}

impl<const K: usize> fmt::Debug for UniformGraph<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UniformGraph")
            .field("arity", &K)
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mutable staging area for a [`UniformGraph`].
pub struct UniformGraphBuilder<const K: usize> {
    n: usize,
    bits: Vec<u64>,
}

impl<const K: usize> UniformGraphBuilder<K> {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        check_cap(n, cap)?;
        Ok(Self::new_unchecked(n))
    }

    pub(crate) fn new_unchecked(n: usize) -> Self {
        let slots = binomial(n as u64, K) as usize;
        UniformGraphBuilder {
            n,
            bits: vec![0; slots.div_ceil(WORD)],
        }
    }

    #[inline]
    pub(crate) fn set_rank(&mut self, r: u64) -> bool {
        let r = r as usize;
        let w = &mut self.bits[r / WORD];
        let mask = 1u64 << (r % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    /// Adds an edge, returning whether it was new.
    pub fn insert(&mut self, e: [usize; K]) -> Result<bool> {
        let s = normalise(self.n, e)?;
        Ok(self.set_rank(rank(&s)))
    }

    pub fn contains(&self, e: [usize; K]) -> bool {
        match sort_distinct(e) {
            Some(s) if s[K - 1] < self.n => {
                let r = rank(&s) as usize;
                self.bits[r / WORD] >> (r % WORD) & 1 == 1
            }
            _ => false,
        }
    }

    pub fn remove(&mut self, e: [usize; K]) -> Result<bool> {
        let s = normalise(self.n, e)?;
        let r = rank(&s) as usize;
        let w = &mut self.bits[r / WORD];
        let mask = 1u64 << (r % WORD);
        let present = *w & mask != 0;
        *w &= !mask;
        Ok(present)
    }

    pub fn build(self) -> UniformGraph<K> {
        let mut prefix = Vec::with_capacity(self.bits.len());
        let mut acc = 0u32;
        for &w in &self.bits {
            prefix.push(acc);
            acc += w.count_ones();
        }
        UniformGraph {
            n: self.n,
            bits: self.bits,
            prefix,
            edge_count: acc as usize,
        }
    }
}

/// Neighbourhood of a vertex set in a 3-graph: completing vertices for a pair,
/// completing pairs for a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Neighbourhood {
    Vertices(VertexSet),
    Pairs(TwoGraph),
}

/// A 3-graph with cached pair neighbourhoods.
#[derive(Clone, PartialEq, Eq)]
pub struct ThreeGraph {
    edges: UniformGraph<3>,
    pair_nbrs: Vec<VertexSet>,
}

impl fmt::Debug for ThreeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThreeGraph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl From<UniformGraph<3>> for ThreeGraph {
    fn from(edges: UniformGraph<3>) -> Self {
        let n = edges.n();
        let mut pair_nbrs = vec![VertexSet::empty(n); n * n];
        for [a, b, c] in edges.edges() {
            pair_nbrs[a * n + b].insert(c);
            pair_nbrs[b * n + a].insert(c);
            pair_nbrs[a * n + c].insert(b);
            pair_nbrs[c * n + a].insert(b);
            pair_nbrs[b * n + c].insert(a);
            pair_nbrs[c * n + b].insert(a);
        }
        ThreeGraph { edges, pair_nbrs }
    }
}

impl ThreeGraph {
    pub fn empty(n: usize) -> Result<Self> {
        UniformGraph::empty(n).map(Self::from)
    }

    pub fn complete(n: usize) -> Result<Self> {
        UniformGraph::complete(n).map(Self::from)
    }

    pub fn from_edges<I: IntoIterator<Item = [usize; 3]>>(n: usize, edges: I) -> Result<Self> {
        UniformGraph::from_edges(n, edges).map(Self::from)
    }

    pub fn builder(n: usize) -> Result<UniformGraphBuilder<3>> {
        UniformGraphBuilder::new(n)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.edges.n()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.edge_count()
    }

    #[inline]
    pub fn as_uniform(&self) -> &UniformGraph<3> {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.edges.edges()
    }

    /// Membership for three vertices in any order.
    #[inline]
    pub fn has_edge(&self, a: usize, b: usize, c: usize) -> bool {
        let n = self.n();
        a < n && b < n && a != b && self.pair_nbrs[a * n + b].contains(c)
    }

    /// `N(uv)`: vertices completing `uv` to an edge. Panics out of range.
    #[inline]
    pub fn pair_neighbourhood(&self, u: usize, v: usize) -> &VertexSet {
        &self.pair_nbrs[u * self.n() + v]
    }

    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        if u == v {
            return 0;
        }
        self.pair_neighbourhood(u, v).len()
    }

    /// `N(ab) ∩ N(ac) ∩ N(bc)`: vertices extending `abc` to a copy of K4.
    #[inline]
    pub fn common_extension(&self, a: usize, b: usize, c: usize) -> VertexSet {
        let mut s = self.pair_neighbourhood(a, b).clone();
        s.intersect_with(self.pair_neighbourhood(a, c));
        s.intersect_with(self.pair_neighbourhood(b, c));
        s
    }

    /// True iff `a, b, c, d` are distinct and all four triples are edges.
    #[inline]
    pub fn is_tetrahedron(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let n = self.n();
        if a >= n || b >= n || c >= n || d >= n {
            return false;
        }
        if a == b || c == d {
            return false;
        }
        let ab = self.pair_neighbourhood(a, b);
        let cd = self.pair_neighbourhood(c, d);
        ab.contains(c) && ab.contains(d) && cd.contains(a) && cd.contains(b)
    }

    fn check_vertices(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            }),
            None => Ok(()),
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// `deg(S)` for `|S|` in {1, 2}.
    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        self.check_vertices(s)?;
        let members = s.to_vec();
        match members.as_slice() {
            [v] => Ok(self.vertex_degree(*v)),
            [u, v] => Ok(self.codegree(*u, *v)),
            _ => Err(Error::InvalidSetSize {
                size: members.len(),
                expected: "1 or 2",
            }),
        }
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        let n = self.n();
        let pairs: usize = (0..n).map(|u| self.codegree(u, v)).sum();
        pairs / 2
    }

    /// `δ₂(H)`.
    pub fn min_codegree(&self) -> Result<usize> {
        let n = self.n();
        if n < 2 {
            return Err(Error::TooFewVertices {
                what: "minimum codegree",
                n,
                min: 2,
            });
        }
        Ok(self.pairs().map(|(u, v)| self.codegree(u, v)).min().unwrap_or(0))
    }

    /// `δ₂⁺(H)`, or `None` for an edgeless graph.
    pub fn min_positive_codegree(&self) -> Option<usize> {
        self.pairs()
            .map(|(u, v)| self.codegree(u, v))
            .filter(|&d| d > 0)
            .min()
    }

    /// All pairs `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n();
        (0..n).flat_map(move |v| (0..v).map(move |u| (u, v)))
    }

    /// `N(S, W)`: completions of `S` inside `W` (all vertices by default).
    pub fn neighborhood(&self, s: &VertexSet, within: Option<&VertexSet>) -> Result<Neighbourhood> {
        self.check_vertices(s)?;
        if let Some(w) = within {
            self.check_vertices(w)?;
        }
        let n = self.n();
        let members = s.to_vec();
        match members.as_slice() {
            [u, v] => {
                let mut out = self.pair_neighbourhood(*u, *v).clone();
                if let Some(w) = within {
                    out = VertexSet::from_members(n, out.iter().filter(|&x| w.contains(x)));
                }
                Ok(Neighbourhood::Vertices(out))
            }
            [v] => {
                let mut b = UniformGraphBuilder::<2>::new_unchecked(n);
                for a in 0..n {
                    if a == *v {
                        continue;
                    }
                    for c in self.pair_neighbourhood(*v, a).iter().filter(|&c| c > a) {
                        let inside = within.is_none_or(|w| w.contains(a) && w.contains(c));
                        if inside {
                            b.insert([a, c])?;
                        }
                    }
                }
                Ok(Neighbourhood::Pairs(b.build()))
            }
            _ => Err(Error::InvalidSetSize {
                size: members.len(),
                expected: "1 or 2",
            }),
        }
    }

    /// `L(v)` on the same vertex range; `v` is isolated.
    pub fn link_graph(&self, v: usize) -> Result<TwoGraph> {
        self.check_vertex(v)?;
        match self.neighborhood(&VertexSet::from_members(self.n(), [v]), None)? {
            Neighbourhood::Pairs(g) => Ok(g),
            Neighbourhood::Vertices(_) => unreachable!(),
        }
    }

    /// `∂H`: pairs covered by some edge.
    pub fn shadow(&self) -> TwoGraph {
        let mut b = UniformGraphBuilder::<2>::new_unchecked(self.n());
        for (u, v) in self.pairs() {
            if self.codegree(u, v) > 0 {
                b.set_rank(rank(&[u, v]));
            }
        }
        b.build()
    }

    /// `H[U]` on the same vertex range.
    pub fn induced(&self, keep: &VertexSet) -> Result<ThreeGraph> {
        self.check_vertices(keep)?;
        Ok(self.edges.induced(keep).into())
    }

    /// `H \ U` relabelled onto `0..n-|U|`. The returned map sends each new
    /// vertex to the original vertex it came from.
    pub fn delete_vertices(&self, remove: &VertexSet) -> Result<(ThreeGraph, Vec<usize>)> {
        self.check_vertices(remove)?;
        let n = self.n();
        let kept: Vec<usize> = (0..n).filter(|&v| !remove.contains(v)).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let mut b = UniformGraphBuilder::<3>::new_unchecked(kept.len());
        for [a, bb, c] in self.edges() {
            if new_id[a] != usize::MAX && new_id[bb] != usize::MAX && new_id[c] != usize::MAX {
                b.insert([new_id[a], new_id[bb], new_id[c]])?;
            }
        }
        Ok((b.build().into(), kept))
    }

    /// Applies a vertex permutation `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ThreeGraph> {
        self.edges.relabel(perm).map(Self::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied())
    }

    #[test]
    fn degree_examples() {
        let k6 = ThreeGraph::complete(6).unwrap();
        assert_eq!(k6.degree(&set(6, &[0, 1])).unwrap(), 4);
        let e6 = ThreeGraph::empty(6).unwrap();
        assert_eq!(e6.degree(&set(6, &[0, 1])).unwrap(), 0);
        assert_eq!(k6.degree(&set(6, &[2])).unwrap(), 10);
        assert!(matches!(
            k6.degree(&set(6, &[0, 1, 2])),
            Err(Error::InvalidSetSize { size: 3, .. })
        ));
        assert!(matches!(
            k6.degree(&set(8, &[0, 7])),
            Err(Error::VertexOutOfRange { vertex: 7, n: 6 })
        ));
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(ThreeGraph::complete(8).unwrap().min_codegree().unwrap(), 6);
        let one = ThreeGraph::from_edges(5, [[0, 1, 2]]).unwrap();
        assert_eq!(one.min_codegree().unwrap(), 0);
        assert!(ThreeGraph::empty(1).unwrap().min_codegree().is_err());

        let one6 = ThreeGraph::from_edges(6, [[0, 1, 2]]).unwrap();
        assert_eq!(one6.min_positive_codegree(), Some(1));
        assert_eq!(ThreeGraph::complete(7).unwrap().min_positive_codegree(), Some(5));
        assert_eq!(ThreeGraph::empty(7).unwrap().min_positive_codegree(), None);
    }

    #[test]
    fn neighbourhood_examples() {
        let k5 = ThreeGraph::complete(5).unwrap();
        let s = set(5, &[0, 1]);
        assert_eq!(
            k5.neighborhood(&s, None).unwrap(),
            Neighbourhood::Vertices(set(5, &[2, 3, 4]))
        );
        assert_eq!(
            k5.neighborhood(&s, Some(&set(5, &[2]))).unwrap(),
            Neighbourhood::Vertices(set(5, &[2]))
        );
        match k5.neighborhood(&set(5, &[0]), Some(&set(5, &[1, 2, 3]))).unwrap() {
            Neighbourhood::Pairs(g) => {
                assert_eq!(g.edges().collect::<Vec<_>>(), vec![[1, 2], [1, 3], [2, 3]])
            }
            other => panic!("{other:?}"),
        }
        assert!(k5.neighborhood(&VertexSet::empty(5), None).is_err());
    }

    #[test]
    fn link_graph_examples() {
        let k4 = ThreeGraph::complete(4).unwrap();
        let l = k4.link_graph(0).unwrap();
        assert_eq!(l.edges().collect::<Vec<_>>(), vec![[1, 2], [1, 3], [2, 3]]);
        assert_eq!(ThreeGraph::empty(5).unwrap().link_graph(2).unwrap().edge_count(), 0);
        let single = ThreeGraph::from_edges(4, [[0, 1, 2]]).unwrap();
        assert_eq!(single.link_graph(3).unwrap().edge_count(), 0);
        assert!(single.link_graph(4).is_err());
    }

    #[test]
    fn shadow_induced_delete() {
        let single = ThreeGraph::from_edges(4, [[0, 1, 2]]).unwrap();
        assert_eq!(
            single.shadow().edges().collect::<Vec<_>>(),
            vec![[0, 1], [0, 2], [1, 2]]
        );
        let k6 = ThreeGraph::complete(6).unwrap();
        let ind = k6.induced(&set(6, &[0, 1, 2, 3])).unwrap();
        assert_eq!(ind.edge_count(), 4);
        assert!(ind.is_tetrahedron(0, 1, 2, 3));
        let (k5, map) = k6.delete_vertices(&set(6, &[5])).unwrap();
        assert_eq!(k5, ThreeGraph::complete(5).unwrap());
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
        let (g, map) = k6.delete_vertices(&set(6, &[0, 3])).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(map, vec![1, 2, 4, 5]);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn vertex_cap_is_enforced() {
        assert!(matches!(
            ThreeGraph::empty(257),
            Err(Error::TooManyVertices { n: 257, cap: 256 })
        ));
        assert!(UniformGraphBuilder::<3>::with_cap(300, 300).is_ok());
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let mut b = ThreeGraph::builder(4).unwrap();
        assert!(matches!(b.insert([0, 1, 4]), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(b.insert([0, 1, 1]), Err(Error::RepeatedVertex(_))));
        assert!(b.insert([2, 0, 1]).unwrap());
        assert!(!b.insert([0, 1, 2]).unwrap());
        let g: ThreeGraph = b.build().into();
        assert!(g.has_edge(1, 2, 0));
        assert_eq!(g.as_uniform().edge_index([2, 1, 0]), Some(0));
    }

    fn arb_graph() -> impl Strategy<Value = ThreeGraph> {
        (3usize..10).prop_flat_map(|n| {
            let total = binomial(n as u64, 3) as usize;
            proptest::collection::vec(any::<bool>(), total).prop_map(move |mask| {
                let edges = mask
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(r, _)| unrank::<3>(r as u64));
                ThreeGraph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn handshake_and_codegree_bounds(h in arb_graph()) {
            let n = h.n();
            let sum: usize = h.pairs().map(|(u, v)| h.codegree(u, v)).sum();
            prop_assert_eq!(sum, 3 * h.edge_count());
            for (u, v) in h.pairs() {
                prop_assert!(h.codegree(u, v) <= n - 2);
            }
            if h.edge_count() > 0 {
                prop_assert!(h.min_codegree().unwrap() <= h.min_positive_codegree().unwrap());
            }
        }

        #[test]
        fn induced_properties(h in arb_graph(), keep_mask in any::<u16>()) {
            let n = h.n();
            let all = VertexSet::full(n);
            prop_assert_eq!(h.induced(&all).unwrap(), h.clone());
            let keep = VertexSet::from_members(n, (0..n).filter(|v| keep_mask >> v & 1 == 1));
            let once = h.induced(&keep).unwrap();
            prop_assert_eq!(once.induced(&keep).unwrap(), once.clone());
            let sh = h.shadow().induced(&keep);
            for e in once.shadow().edges() {
                prop_assert!(sh.contains_sorted(&e));
            }
        }

        #[test]
        fn neighbourhood_splits_over_disjoint_windows(h in arb_graph(), split in any::<u16>(), u in 0usize..10, v in 0usize..10) {
            let n = h.n();
            let (u, v) = (u % n, v % n);
            prop_assume!(u != v);
            let w1 = VertexSet::from_members(n, (0..n).filter(|x| split >> x & 1 == 1));
            let w2 = w1.complement();
            let s = VertexSet::from_members(n, [u, v]);
            let get = |w: Option<&VertexSet>| match h.neighborhood(&s, w).unwrap() {
                Neighbourhood::Vertices(x) => x,
                Neighbourhood::Pairs(_) => unreachable!(),
            };
            prop_assert_eq!(get(Some(&w1)).union(&get(Some(&w2))), get(None));
        }

        #[test]
        fn edge_index_is_position(h in arb_graph()) {
            for (i, e) in h.edges().enumerate() {
                prop_assert_eq!(h.as_uniform().edge_index(e), Some(i));
            }
        }
    }
}
