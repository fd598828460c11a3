//! Vertex sequences whose windows of four consecutive vertices span copies of
//! K4, and the algebra of gluing them.
//!
//! A sequence of three vertices counts as a valid walk exactly when the triple
//! is an edge; it is a degenerate path whose initial and final triples agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::ThreeGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Walk,
    /// No repeated vertex.
    Path,
}

/// An ordered vertex sequence. Serialises as a bare array of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSequence {
    vertices: Vec<usize>,
    kind: SequenceKind,
}

fn all_distinct(vs: &[usize]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

impl VertexSequence {
    pub fn walk(vertices: Vec<usize>) -> Self {
        VertexSequence {
            vertices,
            kind: SequenceKind::Walk,
        }
    }

    pub fn path(vertices: Vec<usize>) -> Result<Self> {
        if !all_distinct(&vertices) {
            return Err(Error::RepeatedVertex(vertices));
        }
        Ok(VertexSequence {
            vertices,
            kind: SequenceKind::Path,
        })
    }

    /// A path if the vertices are distinct, otherwise a walk.
    pub fn classify(vertices: Vec<usize>) -> Self {
        let kind = if all_distinct(&vertices) {
            SequenceKind::Path
        } else {
            SequenceKind::Walk
        };
        VertexSequence { vertices, kind }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn initial_triple(&self) -> Option<TripleOrdered> {
        let v = &self.vertices;
        (v.len() >= 3).then(|| TripleOrdered::new(v[0], v[1], v[2]).ok()).flatten()
    }

    pub fn final_triple(&self) -> Option<TripleOrdered> {
        let v = &self.vertices;
        let l = v.len();
        (l >= 3)
            .then(|| TripleOrdered::new(v[l - 3], v[l - 2], v[l - 1]).ok())
            .flatten()
    }

    /// Vertices strictly between the two end triples.
    pub fn interior(&self) -> &[usize] {
        let l = self.vertices.len();
        if l <= 6 {
            &[]
        } else {
            &self.vertices[3..l - 3]
        }
    }
}

impl Serialize for VertexSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(VertexSequence::classify(Vec::deserialize(d)?))
    }
}

impl fmt::Display for VertexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Three distinct vertices in a fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleOrdered([usize; 3]);

impl TripleOrdered {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == b || a == c || b == c {
            return Err(Error::RepeatedVertex(vec![a, b, c]));
        }
        Ok(TripleOrdered([a, b, c]))
    }

    pub fn as_array(&self) -> [usize; 3] {
        self.0
    }

    pub fn reversed(&self) -> Self {
        let [a, b, c] = self.0;
        TripleOrdered([c, b, a])
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn is_edge_of(&self, h: &ThreeGraph) -> bool {
        let [a, b, c] = self.0;
        h.has_edge(a, b, c)
    }
}

impl Serialize for TripleOrdered {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TripleOrdered {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[usize; 3]>::deserialize(d)?;
        TripleOrdered::new(a, b, c).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for TripleOrdered {
    type Err = Error;

    /// Parses `a,b,c`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidParameter(format!("triple {s:?}: {e}")))?;
        match parts[..] {
            [a, b, c] => TripleOrdered::new(a, b, c),
            _ => Err(Error::InvalidParameter(format!("triple {s:?} needs three vertices"))),
        }
    }
}

fn check_range(h: &ThreeGraph, vs: &[usize]) -> Result<()> {
    match vs.iter().find(|&&v| v >= h.n()) {
        Some(&v) => Err(Error::VertexOutOfRange { vertex: v, n: h.n() }),
        None => Ok(()),
    }
}

fn window_ok(h: &ThreeGraph, w: &[usize]) -> bool {
    h.is_tetrahedron(w[0], w[1], w[2], w[3])
}

/// Every window of four consecutive vertices spans a copy of K4; three
/// vertices are valid iff they form an edge.
pub fn is_squared_tight_walk(h: &ThreeGraph, seq: &VertexSequence) -> Result<bool> {
    let v = seq.vertices();
    check_range(h, v)?;
    Ok(match v.len() {
        0..=2 => false,
        3 => h.has_edge(v[0], v[1], v[2]),
        _ => v.windows(4).all(|w| window_ok(h, w)),
    })
}

/// A valid walk with no repeated vertex.
pub fn is_squared_tight_path(h: &ThreeGraph, seq: &VertexSequence) -> Result<bool> {
    Ok(is_squared_tight_walk(h, seq)? && all_distinct(seq.vertices()))
}

/// At least five distinct vertices with every cyclic window spanning K4.
pub fn is_squared_tight_cycle(h: &ThreeGraph, cycle: &[usize]) -> Result<bool> {
    check_range(h, cycle)?;
    let l = cycle.len();
    if l < 5 || !all_distinct(cycle) {
        return Ok(false);
    }
    Ok((0..l).all(|i| window_ok(h, &[cycle[i], cycle[(i + 1) % l], cycle[(i + 2) % l], cycle[(i + 3) % l]])))
}

/// Result of gluing two sequences, with validity recomputed from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Concatenation {
    pub sequence: VertexSequence,
    pub valid_walk: bool,
    /// The sequence returns to its first vertices and what lies before the
    /// repeat is a cycle of K4 windows.
    pub closes_cycle: bool,
}

fn glue(h: &ThreeGraph, w1: &VertexSequence, w2: &VertexSequence, overlap: usize) -> Result<Concatenation> {
    let (a, b) = (w1.vertices(), w2.vertices());
    if a.len() < overlap || b.len() < overlap || a[a.len() - overlap..] != b[..overlap] {
        return Err(Error::OverlapMismatch {
            left: a[a.len().saturating_sub(overlap)..].to_vec(),
            right: b[..overlap.min(b.len())].to_vec(),
        });
    }
    let mut vertices = a.to_vec();
    vertices.extend_from_slice(&b[overlap..]);
    let shared = &b[..overlap];
    let disjoint = a
        .iter()
        .filter(|v| !shared.contains(v))
        .all(|v| !b.contains(v));
    let kind = if w1.kind() == SequenceKind::Path && w2.kind() == SequenceKind::Path && disjoint {
        SequenceKind::Path
    } else {
        SequenceKind::Walk
    };
    let sequence = VertexSequence { vertices, kind };
    let valid_walk = is_squared_tight_walk(h, &sequence)?;
    let v = sequence.vertices();
    let mut closes_cycle = false;
    for k in [3, 2] {
        if v.len() >= k + 5 && v[v.len() - k..] == v[..k] {
            closes_cycle |= is_squared_tight_cycle(h, &v[..v.len() - k])?;
        }
    }
    Ok(Concatenation {
        sequence,
        valid_walk,
        closes_cycle,
    })
}

/// `x₁…x_ℓ y₃…y_m` when the last two of `w1` are the first two of `w2`.
pub fn concat(h: &ThreeGraph, w1: &VertexSequence, w2: &VertexSequence) -> Result<Concatenation> {
    glue(h, w1, w2, 2)
}

/// `x₁…x_ℓ y₄…y_m` when the last three of `w1` are the first three of `w2`,
/// the overlap that keeps squared walks squared.
pub fn concat_overlap3(h: &ThreeGraph, w1: &VertexSequence, w2: &VertexSequence) -> Result<Concatenation> {
    glue(h, w1, w2, 3)
}

pub fn reverse(seq: &VertexSequence) -> VertexSequence {
    let mut vertices = seq.vertices.clone();
    vertices.reverse();
    VertexSequence {
        vertices,
        kind: seq.kind,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{extremal_construction, random_threegraph};
    use proptest::prelude::*;

    fn k(n: usize) -> ThreeGraph {
        ThreeGraph::complete(n).unwrap()
    }

    fn seq(v: &[usize]) -> VertexSequence {
        VertexSequence::classify(v.to_vec())
    }

    #[test]
    fn window_validation() {
        assert!(is_squared_tight_walk(&k(8), &seq(&[0, 1, 2, 3, 4, 5, 6, 7])).unwrap());
        let mut b = ThreeGraph::builder(8).unwrap();
        for e in k(8).edges().filter(|&e| e != [0, 1, 2]) {
            b.insert(e).unwrap();
        }
        let h: ThreeGraph = b.build().into();
        assert!(!is_squared_tight_walk(&h, &seq(&[0, 1, 2, 3])).unwrap());
        assert!(is_squared_tight_walk(&h, &seq(&[0, 1, 3])).unwrap());
        assert!(!is_squared_tight_walk(&h, &seq(&[0, 1, 2])).unwrap());
        assert!(!is_squared_tight_walk(&k(8), &seq(&[0, 1, 2, 0])).unwrap());
        assert!(is_squared_tight_walk(&k(8), &seq(&[0, 1, 2, 3, 0, 1])).unwrap());
        assert!(is_squared_tight_walk(&k(8), &seq(&[0, 9, 1])).is_err());
    }

    #[test]
    fn construction_windows_meeting_first_part_once_fail() {
        let (h, spec) = extremal_construction(16).unwrap();
        let v1 = spec.members(1);
        let rest: Vec<usize> = (0..16).filter(|v| !v1.contains(v)).collect();
        // one first-part vertex in every window of four
        let s: Vec<usize> = vec![v1[0], rest[0], rest[1], rest[2], v1[1], rest[3], rest[4], rest[5]];
        assert!(!is_squared_tight_walk(&h, &seq(&s)).unwrap());
        for w in s.windows(4) {
            assert!(!h.is_tetrahedron(w[0], w[1], w[2], w[3]));
        }
    }

    #[test]
    fn concatenation() {
        let h = k(9);
        let c = concat_overlap3(&h, &seq(&[0, 1, 2, 3, 4]), &seq(&[2, 3, 4, 5, 6])).unwrap();
        assert_eq!(c.sequence.vertices(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(c.sequence.kind(), SequenceKind::Path);
        assert!(c.valid_walk && !c.closes_cycle);
        assert!(matches!(
            concat(&h, &seq(&[5, 6, 7, 8]), &seq(&[0, 1, 2])),
            Err(Error::OverlapMismatch { .. })
        ));
        let c = concat(&h, &seq(&[0, 1, 2, 3]), &seq(&[2, 3, 4, 5])).unwrap();
        assert_eq!(c.sequence.vertices(), &[0, 1, 2, 3, 4, 5]);
        let c = concat_overlap3(&k(7), &seq(&[0, 1, 2, 3, 4, 5, 6]), &seq(&[4, 5, 6, 0, 1])).unwrap();
        assert_eq!(c.sequence.vertices(), &[0, 1, 2, 3, 4, 5, 6, 0, 1]);
        assert_eq!(c.sequence.kind(), SequenceKind::Walk);
        assert!(c.valid_walk && c.closes_cycle);
    }

    #[test]
    fn reverse_examples() {
        let s = VertexSequence::path(vec![0, 1, 2, 3]).unwrap();
        let r = reverse(&s);
        assert_eq!(r.vertices(), &[3, 2, 1, 0]);
        assert_eq!(r.kind(), SequenceKind::Path);
        assert_eq!(reverse(&r), s);
        assert!(is_squared_tight_walk(&k(5), &r).unwrap());
    }

    #[test]
    fn triples_and_serde() {
        assert!(TripleOrdered::new(1, 1, 2).is_err());
        let t: TripleOrdered = "3, 1,2".parse().unwrap();
        assert_eq!(t.as_array(), [3, 1, 2]);
        assert!("1,2".parse::<TripleOrdered>().is_err());
        assert_eq!(serde_json::to_string(&t).unwrap(), "[3,1,2]");
        let s = seq(&[4, 5, 6, 7]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[4,5,6,7]");
        assert_eq!(s.initial_triple().unwrap().as_array(), [4, 5, 6]);
        assert_eq!(s.final_triple().unwrap().as_array(), [5, 6, 7]);
        assert!(VertexSequence::path(vec![1, 2, 1]).is_err());
    }

    fn arb_graph_and_seq() -> impl Strategy<Value = (ThreeGraph, Vec<usize>)> {
        (5usize..9, 0.5f64..1.0, any::<u64>()).prop_flat_map(|(n, p, s)| {
            let h = random_threegraph(n, p, s).unwrap();
            (Just(h), proptest::collection::vec(0..n, 3..10))
        })
    }

    proptest! {
        #[test]
        fn reverse_preserves_validity((h, v) in arb_graph_and_seq()) {
            let s = seq(&v);
            prop_assert_eq!(reverse(&reverse(&s)), s.clone());
            prop_assert_eq!(is_squared_tight_walk(&h, &s).unwrap(), is_squared_tight_walk(&h, &reverse(&s)).unwrap());
        }

        #[test]
        fn overlap3_gluing_of_valid_walks_is_valid((h, v) in arb_graph_and_seq(), cut in 0usize..10) {
            // split a sequence into two pieces sharing three vertices
            prop_assume!(v.len() >= 4);
            let cut = 3 + cut % (v.len() - 3);
            let left = seq(&v[..cut]);
            let right = seq(&v[cut - 3..]);
            let c = concat_overlap3(&h, &left, &right).unwrap();
            prop_assert_eq!(c.sequence.vertices(), &v[..]);
            let both = is_squared_tight_walk(&h, &left).unwrap() && is_squared_tight_walk(&h, &right).unwrap();
            prop_assert_eq!(c.valid_walk, both);
            prop_assert_eq!(c.sequence.kind() == SequenceKind::Path, all_distinct(&v));
        }
    }
}
