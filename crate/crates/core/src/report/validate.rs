//! Checks a rewritten path system from first principles: edges are looked up
//! one triple at a time and no path helper from the rest of the crate is used.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::hypergraph::ThreeGraph;
use crate::walks::VertexSequence;

/// At least three distinct vertices, and every triple inside every window of
/// four consecutive vertices is an edge.
pub fn is_squared_tight_path_strict(h: &ThreeGraph, seq: &[usize]) -> bool {
    let n = h.n();
    if seq.len() < 3 || seq.iter().any(|&v| v >= n) {
        return false;
    }
    if seq.iter().collect::<BTreeSet<_>>().len() != seq.len() {
        return false;
    }
    if seq.len() == 3 {
        return h.has_edge(seq[0], seq[1], seq[2]);
    }
    seq.windows(4).all(|w| {
        h.has_edge(w[0], w[1], w[2]) && h.has_edge(w[0], w[1], w[3]) && h.has_edge(w[0], w[2], w[3]) && h.has_edge(w[1], w[2], w[3])
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SystemCheck {
    /// Every rewritten path is a squared tight path.
    pub valid_paths: bool,
    pub disjoint: bool,
    /// The rewritten paths cover exactly the old vertices plus the leftover.
    pub coverage: bool,
    /// Each rewritten path keeps the initial and final triple of its preimage.
    pub ends_preserved: bool,
    pub problems: Vec<String>,
}

impl SystemCheck {
    pub fn passed(&self) -> bool {
        self.valid_paths && self.disjoint && self.coverage && self.ends_preserved
    }
}

fn ends(p: &[usize]) -> Option<(&[usize], &[usize])> {
    (p.len() >= 3).then(|| (&p[..3], &p[p.len() - 3..]))
}

/// Compares `before` and `after` index for index.
pub fn check_path_system(
    h: &ThreeGraph,
    before: &[VertexSequence],
    after: &[VertexSequence],
    leftover: &[usize],
) -> SystemCheck {
    let mut c = SystemCheck {
        valid_paths: true,
        disjoint: true,
        coverage: true,
        ends_preserved: true,
        problems: Vec::new(),
    };
    if before.len() != after.len() {
        c.ends_preserved = false;
        c.problems.push(format!("{} paths became {}", before.len(), after.len()));
    }
    let mut seen = BTreeSet::new();
    for (i, q) in after.iter().enumerate() {
        if !is_squared_tight_path_strict(h, q.vertices()) {
            c.valid_paths = false;
            c.problems.push(format!("path {i} ({q}) is not a squared tight path"));
        }
        for &v in q.vertices() {
            if !seen.insert(v) {
                c.disjoint = false;
                c.problems.push(format!("vertex {v} appears twice"));
            }
        }
    }
    let mut expected: BTreeSet<usize> = before.iter().flat_map(|p| p.vertices().iter().copied()).collect();
    expected.extend(leftover.iter().copied());
    if seen != expected {
        c.coverage = false;
        let missing: Vec<_> = expected.difference(&seen).collect();
        let extra: Vec<_> = seen.difference(&expected).collect();
        c.problems.push(format!("missing {missing:?}, unexpected {extra:?}"));
    }
    for (i, (p, q)) in before.iter().zip(after).enumerate() {
        if ends(p.vertices()).is_none() || ends(p.vertices()) != ends(q.vertices()) {
            c.ends_preserved = false;
            c.problems.push(format!("path {i} changed its ends: {p} became {q}"));
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[usize]) -> VertexSequence {
        VertexSequence::classify(v.to_vec())
    }

    #[test]
    fn flags_each_failure() {
        let h = ThreeGraph::complete(12).unwrap();
        let before = vec![seq(&[0, 1, 2, 3, 4, 5]), seq(&[6, 7, 8, 9])];
        let ok = check_path_system(&h, &before, &[seq(&[0, 1, 2, 10, 3, 4, 5]), seq(&[6, 7, 8, 9])], &[10]);
        assert!(ok.passed(), "{:?}", ok.problems);

        let clash = check_path_system(&h, &before, &[seq(&[0, 1, 2, 3, 4, 5]), seq(&[6, 7, 8, 9, 0])], &[]);
        assert!(!clash.disjoint && !clash.ends_preserved);
        let lost = check_path_system(&h, &before, &[seq(&[0, 1, 2, 3, 4, 5]), seq(&[6, 7, 8, 9])], &[10]);
        assert!(!lost.coverage);
        let moved = check_path_system(&h, &before, &[seq(&[0, 1, 2, 3, 5, 4]), seq(&[6, 7, 8, 9])], &[]);
        assert!(moved.valid_paths && !moved.ends_preserved);

        let sparse = ThreeGraph::from_edges(12, [[0, 1, 2]]).unwrap();
        let bad = check_path_system(&sparse, &before, &before, &[]);
        assert!(!bad.valid_paths);
    }
}
