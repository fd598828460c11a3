//! Tetrahedral graphs, tight components and the induced edge colouring.
//!
//! Two edges of a k-graph are tightly adjacent when they share k-1 vertices;
//! tight components are the classes of the transitive closure. Consecutive
//! windows of a tight walk are tightly adjacent, and two tightly adjacent edges
//! are the two windows of a walk on k+1 vertices, so this closure coincides with
//! reachability by tight walks.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::combinatorics::{binomial, rank, rank_slice};
use crate::error::{Error, Result};
use crate::hypergraph::{FourGraph, ThreeGraph, UniformGraph, UniformGraphBuilder};

/// `T(H)`: the 4-sets spanning a copy of K4 in `h`.
pub fn tetrahedral_graph(h: &ThreeGraph) -> Result<FourGraph> {
    let n = h.n();
    if n < 4 {
        return Err(Error::TooFewVertices {
            what: "tetrahedral graph",
            n,
            min: 4,
        });
    }
    let edges: Vec<[usize; 3]> = h.edges().collect();
    let mut ranks: Vec<u64> = edges
        .par_iter()
        .flat_map_iter(|&[a, b, c]| {
            h.common_extension(a, b, c)
                .iter()
                .filter(move |&d| d > c)
                .map(move |d| rank(&[a, b, c, d]))
                .collect::<Vec<_>>()
        })
        .collect();
    ranks.sort_unstable();
    let mut out = UniformGraphBuilder::<4>::new_unchecked(n);
    for r in ranks {
        out.set_rank(r);
    }
    Ok(out.build())
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Component id of every edge of a k-graph.
///
/// Edges are kept in rank order, so the i-th entry belongs to the graph's i-th
/// edge. Ids are numbered by the rank of each component's first edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightLabeling {
    arity: usize,
    ranks: Vec<u64>,
    ids: Vec<u32>,
    count: usize,
}

impl TightLabeling {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    pub fn edge_ranks(&self) -> &[u64] {
        &self.ranks
    }

    /// Ids aligned with [`Self::edge_ranks`].
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    #[inline]
    pub fn component_of_index(&self, i: usize) -> u32 {
        self.ids[i]
    }

    pub fn component_of_rank(&self, r: u64) -> Option<u32> {
        self.ranks.binary_search(&r).ok().map(|i| self.ids[i])
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &id in &self.ids {
            sizes[id as usize] += 1;
        }
        sizes
    }
}

impl Serialize for TightLabeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<(u64, u32)> = self.ranks.iter().copied().zip(self.ids.iter().copied()).collect();
        let mut st = serializer.serialize_struct("TightLabeling", 3)?;
        st.serialize_field("arity", &self.arity)?;
        st.serialize_field("components", &self.count)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TightLabeling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            arity: usize,
            components: usize,
            edges: Vec<(u64, u32)>,
        }
        use serde::de::Error as _;
        let repr = Repr::deserialize(deserializer)?;
        if !repr.edges.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(D::Error::custom("edge ranks must be strictly increasing"));
        }
        let mut seen = vec![false; repr.components];
        for &(_, id) in &repr.edges {
            match seen.get_mut(id as usize) {
                Some(s) => *s = true,
                None => return Err(D::Error::custom(format!("component id {id} out of range"))),
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(D::Error::custom("component ids are not contiguous"));
        }
        let (ranks, ids) = repr.edges.into_iter().unzip();
        Ok(TightLabeling {
            arity: repr.arity,
            ranks,
            ids,
            count: repr.components,
        })
    }
}

/// Tight components of a k-graph by union-find over shared (k-1)-sets.
pub fn tight_components<const K: usize>(g: &UniformGraph<K>) -> TightLabeling {
    let m = g.edge_count();
    let ranks: Vec<u64> = g.edge_ranks().collect();
    let mut uf = UnionFind::new(m);
    // first edge seen through each (k-1)-set, indexed by its rank
    let mut owner = vec![u32::MAX; binomial(g.n() as u64, K - 1) as usize];
    let mut ridge = [0usize; K];
    for (i, e) in g.edges().enumerate() {
        for skip in 0..K {
            let mut len = 0;
            for (j, &v) in e.iter().enumerate() {
                if j != skip {
                    ridge[len] = v;
                    len += 1;
                }
            }
            let slot = &mut owner[rank_slice(&ridge[..K - 1]) as usize];
            if *slot == u32::MAX {
                *slot = i as u32;
            } else {
                uf.union(*slot, i as u32);
            }
        }
    }
    let mut canon = vec![u32::MAX; m];
    let mut ids = Vec::with_capacity(m);
    let mut count = 0u32;
    for i in 0..m as u32 {
        let root = uf.find(i) as usize;
        if canon[root] == u32::MAX {
            canon[root] = count;
            count += 1;
        }
        ids.push(canon[root]);
    }
    TightLabeling {
        arity: K,
        ranks,
        ids,
        count: count as usize,
    }
}

/// At least one edge and a single tight component.
pub fn is_tightly_connected<const K: usize>(g: &UniformGraph<K>) -> bool {
    g.edge_count() > 0 && tight_components(g).component_count() <= 1
}

/// A sorted set of component ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSet(SmallVec<[u32; 4]>);

impl ColourSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: u32) -> bool {
        match self.0.binary_search(&c) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, c);
                true
            }
        }
    }

    #[inline]
    pub fn contains(&self, c: u32) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn intersects(&self, other: &ColourSet) -> bool {
        self.iter().any(|c| other.contains(c))
    }
}

impl FromIterator<u32> for ColourSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = ColourSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl Serialize for ColourSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(serializer)
    }
}

/// Colouring of the edges of `H` by the tight component of `T(H)` holding
/// their tetrahedra, with the colour sets seen at each vertex and pair.
#[derive(Clone, Debug)]
pub struct PhiColouring<'h> {
    base: &'h ThreeGraph,
    tetra: FourGraph,
    labeling: TightLabeling,
    phi_edge: Vec<u32>,
    phi_vertex: Vec<ColourSet>,
    phi_pair: Vec<ColourSet>,
}

/// Builds the colouring, failing on the first edge (in rank order) that lies
/// in no copy of K4.
pub fn phi_colouring(h: &ThreeGraph) -> Result<PhiColouring<'_>> {
    let tetra = tetrahedral_graph(h)?;
    let labeling = tight_components(&tetra);
    let n = h.n();
    let mut phi_edge = Vec::with_capacity(h.edge_count());
    let mut phi_vertex = vec![ColourSet::new(); n];
    let mut phi_pair = vec![ColourSet::new(); n * n];
    for [a, b, c] in h.edges() {
        let ext = h.common_extension(a, b, c);
        let Some(d) = ext.first() else {
            return Err(Error::EdgeNotInTetrahedron([a, b, c]));
        };
        let colour_with = |d: usize| {
            let mut q = [a, b, c, d];
            q.sort_unstable();
            labeling
                .component_of_rank(rank(&q))
                .expect("every K4 is an edge of the tetrahedral graph")
        };
        let colour = colour_with(d);
        debug_assert!(ext.iter().all(|d| colour_with(d) == colour));
        phi_edge.push(colour);
        for v in [a, b, c] {
            phi_vertex[v].insert(colour);
        }
        for (u, v) in [(a, b), (a, c), (b, c)] {
            phi_pair[u * n + v].insert(colour);
            phi_pair[v * n + u].insert(colour);
        }
    }
    Ok(PhiColouring {
        base: h,
        tetra,
        labeling,
        phi_edge,
        phi_vertex,
        phi_pair,
    })
}

impl<'h> PhiColouring<'h> {
    pub fn base(&self) -> &'h ThreeGraph {
        self.base
    }

    pub fn tetrahedral(&self) -> &FourGraph {
        &self.tetra
    }

    pub fn labeling(&self) -> &TightLabeling {
        &self.labeling
    }

    pub fn component_count(&self) -> usize {
        self.labeling.component_count()
    }

    /// Colour of the edge `abc` (any order), or `None` if it is not an edge.
    #[inline]
    pub fn phi(&self, a: usize, b: usize, c: usize) -> Option<u32> {
        self.base
            .as_uniform()
            .edge_index([a, b, c])
            .map(|i| self.phi_edge[i])
    }

    /// Colours aligned with the base graph's edges in rank order.
    pub fn edge_colours(&self) -> &[u32] {
        &self.phi_edge
    }

    #[inline]
    pub fn phi_vertex(&self, v: usize) -> &ColourSet {
        &self.phi_vertex[v]
    }

    #[inline]
    pub fn phi_pair(&self, u: usize, v: usize) -> &ColourSet {
        &self.phi_pair[u * self.base.n() + v]
    }

    /// Colour of the link edge `uw` at `v`, i.e. of the edge `uvw`.
    #[inline]
    pub fn link_colour(&self, v: usize, u: usize, w: usize) -> Option<u32> {
        self.phi(u, v, w)
    }

    /// Ids present at every vertex, ascending.
    pub fn spanning_components(&self) -> Vec<u32> {
        (0..self.component_count() as u32)
            .filter(|&c| self.phi_vertex.iter().all(|s| s.contains(c)))
            .collect()
    }

    /// The lowest spanning id, or the lowest id if none spans.
    pub fn red(&self) -> Option<u32> {
        if self.component_count() == 0 {
            return None;
        }
        Some(self.spanning_components().first().copied().unwrap_or(0))
    }

    /// `(red, blue)` when there are exactly two components.
    pub fn red_blue(&self) -> Option<(u32, u32)> {
        if self.component_count() != 2 {
            return None;
        }
        let r = self.red()?;
        Some((r, 1 - r))
    }
}

pub fn spanning_components(pc: &PhiColouring<'_>) -> Vec<u32> {
    pc.spanning_components()
}

impl Serialize for PhiColouring<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<(u64, u32)> = self
            .base
            .as_uniform()
            .edge_ranks()
            .zip(self.phi_edge.iter().copied())
            .collect();
        let mut st = serializer.serialize_struct("PhiColouring", 3)?;
        st.serialize_field("arity", &3)?;
        st.serialize_field("components", &self.component_count())?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::VertexSet;
    use crate::combinatorics::subsets;
    use crate::hypergraph::TwoGraph;
    use proptest::prelude::*;
    use std::collections::{BTreeSet, HashMap, VecDeque};

    /// Edge classes by breadth-first search over ordered windows of tight
    /// walks, independent of the union-find.
    fn walk_classes<const K: usize>(g: &UniformGraph<K>) -> Vec<BTreeSet<[usize; K]>> {
        let n = g.n();
        let mut class_of: HashMap<[usize; K], usize> = HashMap::new();
        let mut classes = Vec::new();
        for e in g.edges() {
            if class_of.contains_key(&e) {
                continue;
            }
            let id = classes.len();
            let mut members = BTreeSet::new();
            let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
            let mut seen_windows = BTreeSet::new();
            queue.push_back(e.to_vec());
            while let Some(window) = queue.pop_front() {
                if !seen_windows.insert(window.clone()) {
                    continue;
                }
                let mut sorted = [0usize; K];
                sorted.copy_from_slice(&window);
                sorted.sort_unstable();
                members.insert(sorted);
                // reversing a tight walk gives a tight walk
                let rev: Vec<usize> = window.iter().rev().copied().collect();
                queue.push_back(rev);
                for w in 0..n {
                    let mut next: Vec<usize> = window[1..].to_vec();
                    next.push(w);
                    let mut cand = [0usize; K];
                    cand.copy_from_slice(&next);
                    if g.contains(cand) {
                        queue.push_back(next);
                    }
                }
            }
            for &m in &members {
                class_of.insert(m, id);
            }
            classes.push(members);
        }
        classes
    }

    fn classes_of<const K: usize>(g: &UniformGraph<K>, lab: &TightLabeling) -> Vec<BTreeSet<[usize; K]>> {
        let mut out = vec![BTreeSet::new(); lab.component_count()];
        for (i, e) in g.edges().enumerate() {
            out[lab.component_of_index(i) as usize].insert(e);
        }
        out
    }

    fn canonical<T: Ord + Clone>(mut v: Vec<BTreeSet<T>>) -> Vec<BTreeSet<T>> {
        v.sort();
        v
    }

    #[test]
    fn tetrahedral_examples() {
        let k4 = ThreeGraph::complete(4).unwrap();
        let t = tetrahedral_graph(&k4).unwrap();
        assert_eq!(t.edges().collect::<Vec<_>>(), vec![[0, 1, 2, 3]]);
        let t5 = tetrahedral_graph(&ThreeGraph::complete(5).unwrap()).unwrap();
        assert_eq!(t5.edge_count(), 5);
        assert!(tetrahedral_graph(&ThreeGraph::complete(3).unwrap()).is_err());
    }

    #[test]
    fn component_examples() {
        let single = FourGraph::from_edges(4, [[0, 1, 2, 3]]).unwrap();
        assert_eq!(tight_components(&single).component_count(), 1);
        let disjoint = UniformGraph::<3>::from_edges(6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(tight_components(&disjoint).component_count(), 2);
        let sharing = UniformGraph::<3>::from_edges(4, [[0, 1, 2], [1, 2, 3]]).unwrap();
        assert_eq!(tight_components(&sharing).component_count(), 1);
        let edgeless = FourGraph::empty(6).unwrap();
        assert_eq!(tight_components(&edgeless).component_count(), 0);
        assert!(!is_tightly_connected(&edgeless));
        let t7 = tetrahedral_graph(&ThreeGraph::complete(7).unwrap()).unwrap();
        assert!(is_tightly_connected(&t7));
        // two edges meeting in one vertex are not tightly adjacent
        let bowtie = UniformGraph::<3>::from_edges(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        assert_eq!(tight_components(&bowtie).component_count(), 2);
        let path = TwoGraph::from_edges(4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        assert_eq!(tight_components(&path).component_count(), 1);
    }

    #[test]
    fn ids_follow_first_edge_rank() {
        let g = UniformGraph::<3>::from_edges(6, [[3, 4, 5], [0, 1, 2], [0, 1, 3]]).unwrap();
        let lab = tight_components(&g);
        assert_eq!(lab.ids(), &[0, 0, 1]);
        assert_eq!(lab.component_sizes(), vec![2, 1]);
    }

    #[test]
    fn labeling_json_round_trip() {
        let g = UniformGraph::<3>::from_edges(6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let lab = tight_components(&g);
        let json = serde_json::to_string(&lab).unwrap();
        assert_eq!(json, r#"{"arity":3,"components":2,"edges":[[0,0],[19,1]]}"#);
        let back: TightLabeling = serde_json::from_str(&json).unwrap();
        assert_eq!(back, lab);
        assert!(serde_json::from_str::<TightLabeling>(r#"{"arity":3,"components":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn phi_examples() {
        let k5 = ThreeGraph::complete(5).unwrap();
        let pc = phi_colouring(&k5).unwrap();
        assert!(pc.edge_colours().iter().all(|&c| c == 0));
        for v in 0..5 {
            assert_eq!(pc.phi_vertex(v).as_slice(), &[0]);
        }
        assert_eq!(pc.spanning_components(), vec![0]);

        let single = ThreeGraph::from_edges(5, [[0, 1, 2]]).unwrap();
        assert!(matches!(
            phi_colouring(&single),
            Err(Error::EdgeNotInTetrahedron([0, 1, 2]))
        ));

        assert_eq!(
            phi_colouring(&ThreeGraph::complete(6).unwrap()).unwrap().spanning_components(),
            vec![0]
        );
    }

    fn k4_union(n: usize, quads: &[[usize; 4]]) -> ThreeGraph {
        let mut b = ThreeGraph::builder(n).unwrap();
        for &[a, bb, c, d] in quads {
            for t in [[a, bb, c], [a, bb, d], [a, c, d], [bb, c, d]] {
                b.insert(t).unwrap();
            }
        }
        b.build().into()
    }

    #[test]
    fn disjoint_tetrahedra_do_not_span() {
        // together they cover every vertex, but neither touches all of them
        let h = k4_union(8, &[[0, 1, 2, 3], [4, 5, 6, 7]]);
        let pc = phi_colouring(&h).unwrap();
        assert_eq!(pc.component_count(), 2);
        assert_eq!(pc.spanning_components(), Vec::<u32>::new());
        assert_eq!(pc.red_blue(), Some((0, 1)));
        let h2 = k4_union(4, &[[0, 1, 2, 3]]);
        assert_eq!(phi_colouring(&h2).unwrap().spanning_components(), vec![0]);
    }

    #[test]
    fn three_tetrahedra_through_one_vertex() {
        let h = k4_union(10, &[[0, 1, 2, 9], [3, 4, 5, 9], [6, 7, 8, 9]]);
        let pc = phi_colouring(&h).unwrap();
        assert_eq!(pc.phi_vertex(9).len(), 3);
        assert_eq!(pc.red(), Some(0));
        assert_eq!(pc.red_blue(), None);
    }

    fn arb_k4_union(max_n: usize) -> impl Strategy<Value = ThreeGraph> {
        (4usize..=max_n).prop_flat_map(|n| {
            let quads: Vec<[usize; 4]> = subsets::<4>(n).collect();
            let q = quads.len();
            proptest::collection::vec(0..q, 0..6).prop_map(move |picks| {
                let chosen: Vec<[usize; 4]> = picks.iter().map(|&i| quads[i]).collect();
                k4_union(n, &chosen)
            })
        })
    }

    fn arb_three_graph(max_n: usize) -> impl Strategy<Value = ThreeGraph> {
        (4usize..=max_n).prop_flat_map(|n| {
            let total = binomial(n as u64, 3) as usize;
            proptest::collection::vec(proptest::bool::weighted(0.3), total).prop_map(move |mask| {
                let edges = subsets::<3>(n).zip(mask).filter(|(_, b)| *b).map(|(e, _)| e);
                ThreeGraph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn components_match_walk_search(h in arb_three_graph(8)) {
            let g = h.as_uniform();
            let lab = tight_components(g);
            prop_assert_eq!(canonical(classes_of(g, &lab)), canonical(walk_classes(g)));
            let t = tetrahedral_graph(&h).unwrap();
            let tl = tight_components(&t);
            prop_assert_eq!(canonical(classes_of(&t, &tl)), canonical(walk_classes(&t)));
        }

        #[test]
        fn tetrahedral_matches_brute_force(h in arb_three_graph(9)) {
            let t = tetrahedral_graph(&h).unwrap();
            for q in subsets::<4>(h.n()) {
                let [a, b, c, d] = q;
                let all = h.has_edge(a, b, c) && h.has_edge(a, b, d) && h.has_edge(a, c, d) && h.has_edge(b, c, d);
                prop_assert_eq!(t.contains_sorted(&q), all);
            }
        }

        #[test]
        fn components_invariant_under_relabelling(h in arb_three_graph(8), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let n = h.n();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let g = h.as_uniform();
            let moved = g.relabel(&perm).unwrap();
            let mapped: Vec<BTreeSet<[usize; 3]>> = classes_of(g, &tight_components(g))
                .into_iter()
                .map(|c| c.into_iter().map(|e| {
                    let mut m = e.map(|v| perm[v]);
                    m.sort_unstable();
                    m
                }).collect())
                .collect();
            prop_assert_eq!(canonical(mapped), canonical(classes_of(&moved, &tight_components(&moved))));
        }

        #[test]
        fn tetrahedral_commutes_with_induced(h in arb_three_graph(9), mask in any::<u16>()) {
            let n = h.n();
            let keep = VertexSet::from_members(n, (0..n).filter(|v| mask >> v & 1 == 1));
            let lhs = tetrahedral_graph(&h.induced(&keep).unwrap()).unwrap();
            let rhs = tetrahedral_graph(&h).unwrap().induced(&keep);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn phi_containments(h in arb_k4_union(9)) {
            let pc = phi_colouring(&h).unwrap();
            for [a, b, c] in h.edges() {
                let col = pc.phi(a, b, c).unwrap();
                for (u, v) in [(a, b), (a, c), (b, c)] {
                    prop_assert!(pc.phi_pair(u, v).contains(col));
                    for x in pc.phi_pair(u, v).iter() {
                        prop_assert!(pc.phi_vertex(u).contains(x) && pc.phi_vertex(v).contains(x));
                    }
                }
            }
            for (u, v) in h.pairs() {
                let direct: ColourSet = h.pair_neighbourhood(u, v).iter().map(|w| pc.phi(u, v, w).unwrap()).collect();
                prop_assert_eq!(pc.phi_pair(u, v), &direct);
            }
        }
    }
}
