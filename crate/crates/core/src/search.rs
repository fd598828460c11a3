//! Depth-first searches for squared tight paths and cycles.
//!
//! Every search extends the current sequence only through the common
//! neighbourhood of its last three vertices, tries candidates in ascending
//! order and counts expanded nodes against a budget. Running out of budget is
//! reported separately from proving that nothing exists.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::generators::stream_rng;
use crate::hypergraph::ThreeGraph;
use crate::walks::{TripleOrdered, VertexSequence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "result", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole search space was exhausted.
    None,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Node counter shared between threads.
pub(crate) struct Budget {
    limit: u64,
    used: AtomicU64,
    out: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            out: AtomicBool::new(false),
        }
    }

    #[inline]
    pub(crate) fn tick(&self) -> bool {
        if self.out.load(Ordering::Relaxed) {
            return false;
        }
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.out.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.out.load(Ordering::Relaxed)
    }

    pub(crate) fn spent(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }
}

fn check_triple(h: &ThreeGraph, t: &TripleOrdered) -> Result<()> {
    let [a, b, c] = t.as_array();
    for v in [a, b, c] {
        if v >= h.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
        }
    }
    if !h.has_edge(a, b, c) {
        let mut e = [a, b, c];
        e.sort_unstable();
        return Err(Error::NotAnEdge(e));
    }
    Ok(())
}

struct PathSearch<'a> {
    h: &'a ThreeGraph,
    from: [usize; 3],
    to: [usize; 3],
    forbidden: &'a VertexSet,
    budget: &'a Budget,
    len: usize,
    seq: Vec<usize>,
    used: VertexSet,
}

impl PathSearch<'_> {
    /// The vertex forced at `pos` by the end triples, if any, or `Err` if the
    /// two ends force different vertices.
    fn forced(&self, pos: usize) -> std::result::Result<Option<usize>, ()> {
        let head = (pos < 3).then(|| self.from[pos]);
        let tail = (pos + 3 >= self.len).then(|| self.to[pos + 3 - self.len]);
        match (head, tail) {
            (Some(a), Some(b)) if a != b => Err(()),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            _ => Ok(None),
        }
    }

    fn run(&mut self) -> bool {
        let pos = self.seq.len();
        if pos == self.len {
            return true;
        }
        if !self.budget.tick() {
            return false;
        }
        let Ok(forced) = self.forced(pos) else {
            return false;
        };
        let candidates: Vec<usize> = if pos < 3 {
            forced.into_iter().collect()
        } else {
            let l = self.seq.len();
            let ext = self.h.common_extension(self.seq[l - 3], self.seq[l - 2], self.seq[l - 1]);
            match forced {
                Some(v) => ext.contains(v).then_some(v).into_iter().collect(),
                None => ext
                    .iter()
                    .filter(|&v| !self.forbidden.contains(v) && !self.to.contains(&v))
                    .collect(),
            }
        };
        for v in candidates {
            if self.used.contains(v) {
                continue;
            }
            self.seq.push(v);
            self.used.insert(v);
            if self.run() {
                return true;
            }
            self.seq.pop();
            self.used.remove(v);
            if self.budget.exhausted() {
                return false;
            }
        }
        false
    }
}

fn path_search(
    h: &ThreeGraph,
    from: &TripleOrdered,
    to: &TripleOrdered,
    forbidden: &VertexSet,
    max_vertices: usize,
    budget: &Budget,
) -> SearchOutcome<VertexSequence> {
    for len in 3..=max_vertices.min(h.n()) {
        let mut s = PathSearch {
            h,
            from: from.as_array(),
            to: to.as_array(),
            forbidden,
            budget,
            len,
            seq: Vec::with_capacity(len),
            used: VertexSet::empty(h.n()),
        };
        if s.run() {
            return SearchOutcome::Found(VertexSequence::path(s.seq).expect("search keeps vertices distinct"));
        }
        if budget.exhausted() {
            return SearchOutcome::BudgetExhausted;
        }
    }
    SearchOutcome::None
}

/// A shortest squared tight path from `from` to `to` on at most
/// `max_vertices` vertices whose vertices avoid `forbidden`.
///
/// Lengths are tried in increasing order, each by a depth-first search whose
/// last three positions are pinned to `to`.
pub fn find_squared_tight_path(
    h: &ThreeGraph,
    from: &TripleOrdered,
    to: &TripleOrdered,
    forbidden: &VertexSet,
    max_vertices: usize,
    budget: u64,
) -> Result<SearchOutcome<VertexSequence>> {
    check_triple(h, from)?;
    check_triple(h, to)?;
    for t in [from, to] {
        if let Some(v) = t.as_array().into_iter().find(|&v| forbidden.contains(v)) {
            return Err(Error::Precondition(format!("end vertex {v} is forbidden")));
        }
    }
    Ok(path_search(h, from, to, forbidden, max_vertices, &Budget::new(budget)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConnectOutcome {
    Connected { paths: Vec<VertexSequence> },
    Failed { index: usize, budget_exhausted: bool },
}

/// Vertex-disjoint connectors for each `(from, to)`, found one at a time;
/// each path's vertices are forbidden to the later ones, and every other
/// pair's end vertices are forbidden throughout.
pub fn connect_many(
    h: &ThreeGraph,
    pairs: &[(TripleOrdered, TripleOrdered)],
    forbidden: &VertexSet,
    per_path_cap: usize,
    budget: u64,
) -> Result<ConnectOutcome> {
    let mut ends = VertexSet::empty(h.n());
    for (x, y) in pairs {
        check_triple(h, x)?;
        check_triple(h, y)?;
        for v in x.as_array().into_iter().chain(y.as_array()) {
            if forbidden.contains(v) {
                return Err(Error::Precondition(format!("end vertex {v} is forbidden")));
            }
            if !ends.insert(v) {
                return Err(Error::Precondition(format!("end vertex {v} is used twice")));
            }
        }
    }
    let budget = Budget::new(budget);
    let mut blocked = forbidden.union(&ends);
    let mut paths = Vec::with_capacity(pairs.len());
    for (i, (x, y)) in pairs.iter().enumerate() {
        let mut avoid = blocked.clone();
        for v in x.as_array().into_iter().chain(y.as_array()) {
            avoid.remove(v);
        }
        match path_search(h, x, y, &avoid, per_path_cap, &budget) {
            SearchOutcome::Found(p) => {
                for &v in p.vertices() {
                    blocked.insert(v);
                }
                paths.push(p);
            }
            other => {
                return Ok(ConnectOutcome::Failed {
                    index: i,
                    budget_exhausted: matches!(other, SearchOutcome::BudgetExhausted),
                })
            }
        }
    }
    Ok(ConnectOutcome::Connected { paths })
}

struct CycleSearch<'a> {
    h: &'a ThreeGraph,
    budget: &'a Budget,
    stop: &'a AtomicBool,
    seq: Vec<usize>,
    used: VertexSet,
}

impl CycleSearch<'_> {
    fn closes(&self) -> bool {
        let s = &self.seq;
        let n = s.len();
        (n - 3..n).all(|i| self.h.is_tetrahedron(s[i], s[(i + 1) % n], s[(i + 2) % n], s[(i + 3) % n]))
    }

    fn run(&mut self) -> bool {
        let n = self.h.n();
        if self.stop.load(Ordering::Relaxed) || !self.budget.tick() {
            return false;
        }
        let l = self.seq.len();
        if l == n {
            return self.seq[1] < self.seq[n - 1] && self.closes();
        }
        let (a, b, c) = (self.seq[l - 3], self.seq[l - 2], self.seq[l - 1]);
        let mut ext = self.h.common_extension(a, b, c);
        ext.difference_with(&self.used);
        // the wrap-around window (v_n, v_1, v_2, v_3) needs a free vertex
        let (v1, v2, v3) = (self.seq[0], self.seq[1], self.seq[2]);
        let mut closing = self.h.common_extension(v1, v2, v3);
        closing.difference_with(&self.used);
        if closing.is_empty() {
            return false;
        }
        for v in ext.iter() {
            if l == n - 1 && v < v2 {
                continue;
            }
            self.seq.push(v);
            self.used.insert(v);
            if self.run() {
                return true;
            }
            self.seq.pop();
            self.used.remove(v);
            if self.budget.exhausted() || self.stop.load(Ordering::Relaxed) {
                return false;
            }
        }
        false
    }
}

/// A cyclic order of all vertices in which every four cyclically consecutive
/// vertices span K4, with `v₁ = 0` and `v₂ < v_n`.
///
/// Branches over the first window in parallel unless `sequential`; with
/// `sequential` the lexicographically first cycle is returned.
pub fn find_squared_tight_hamilton_cycle(
    h: &ThreeGraph,
    budget: u64,
    sequential: bool,
) -> Result<SearchOutcome<Vec<usize>>> {
    let n = h.n();
    if n < 5 {
        return Err(Error::TooFewVertices {
            what: "Hamilton cycle search",
            n,
            min: 5,
        });
    }
    let mut starts = Vec::new();
    for v2 in 1..n {
        for v3 in h.pair_neighbourhood(0, v2).iter() {
            for v4 in h.common_extension(0, v2, v3).iter() {
                starts.push([v2, v3, v4]);
            }
        }
    }
    let budget_ctr = Budget::new(budget);
    let stop = AtomicBool::new(false);
    let attempt = |&[v2, v3, v4]: &[usize; 3]| -> Option<Vec<usize>> {
        let mut used = VertexSet::empty(n);
        for v in [0, v2, v3, v4] {
            used.insert(v);
        }
        let mut s = CycleSearch {
            h,
            budget: &budget_ctr,
            stop: &stop,
            seq: vec![0, v2, v3, v4],
            used,
        };
        s.run().then(|| {
            stop.store(true, Ordering::Relaxed);
            s.seq
        })
    };
    let found = if sequential {
        starts.iter().find_map(attempt)
    } else {
        starts.par_iter().find_map_any(attempt)
    };
    Ok(match found {
        Some(c) => SearchOutcome::Found(c),
        None if budget_ctr.exhausted() => SearchOutcome::BudgetExhausted,
        None => SearchOutcome::None,
    })
}

/// Paths found by the greedy cover and how much they cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCover {
    pub paths: Vec<VertexSequence>,
    pub covered: usize,
    pub uncovered: usize,
}

/// Grows maximal squared tight paths on uncovered vertices from random
/// starting edges until fewer than `gamma·n` vertices remain or no uncovered
/// edge extends to K4. Heuristic only.
pub fn greedy_path_cover(h: &ThreeGraph, gamma: f64, seed: u64) -> Result<PathCover> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidParameter(format!("leftover fraction {gamma} must lie in (0, 1)")));
    }
    let n = h.n();
    let mut rng = stream_rng(seed, 0);
    let mut free = VertexSet::full(n);
    let mut paths = Vec::new();
    while (free.len() as f64) >= gamma * n as f64 {
        let mut order: Vec<usize> = free.iter().collect();
        order.shuffle(&mut rng);
        let Some(start) = order.iter().find_map(|&a| start_triple(h, &free, a)) else {
            break;
        };
        let mut path = start.to_vec();
        for &v in &path {
            free.remove(v);
        }
        extend_greedily(h, &mut path, &mut free);
        path.reverse();
        extend_greedily(h, &mut path, &mut free);
        paths.push(VertexSequence::path(path).expect("grown from free vertices"));
    }
    let uncovered = free.len();
    Ok(PathCover {
        paths,
        covered: n - uncovered,
        uncovered,
    })
}

/// Free `b, c` with `abc` an edge extending to K4 inside the free vertices.
fn start_triple(h: &ThreeGraph, free: &VertexSet, a: usize) -> Option<[usize; 3]> {
    for b in free.iter().filter(|&b| b != a) {
        let mut cs = h.pair_neighbourhood(a, b).intersection(free);
        cs.remove(a);
        for c in cs.iter() {
            if h.common_extension(a, b, c).intersection_len(free) > 0 {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Appends free vertices while the last window extends, preferring the
/// candidate with the fewest onward options that still has some.
fn extend_greedily(h: &ThreeGraph, path: &mut Vec<usize>, free: &mut VertexSet) {
    loop {
        let l = path.len();
        let (a, b, c) = (path[l - 3], path[l - 2], path[l - 1]);
        let cands = h.common_extension(a, b, c).intersection(free);
        let best = cands
            .iter()
            .map(|v| {
                let mut onward = h.common_extension(b, c, v).intersection(free);
                onward.remove(v);
                (onward.len(), v)
            })
            .min_by_key(|&(k, v)| (k == 0, k, v));
        let Some((_, v)) = best else { return };
        path.push(v);
        free.remove(v);
    }
}
