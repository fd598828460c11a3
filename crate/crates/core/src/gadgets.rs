//! Blowups, small-clique counts, absorbers and the donation path.
//!
//! An absorber is a labelled set of 36 vertices whose five paths
//! `T2, U1..U4` can be swapped for `T1, U1(v)..U4(v)` with identical ends,
//! swallowing a 4-tuple `v`. The donation path is a `K5(4)` copy listed so
//! that up to three named vertices can be dropped without breaking it.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::generators::stream_rng;
use crate::hypergraph::ThreeGraph;
use crate::search::{Budget, SearchOutcome};
use crate::walks::{is_squared_tight_path, VertexSequence};

fn check_range(h: &ThreeGraph, vs: &[usize]) -> Result<()> {
    match vs.iter().find(|&&v| v >= h.n()) {
        Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n: h.n() }),
        None => Ok(()),
    }
}

fn check_distinct(vs: &[usize]) -> Result<()> {
    let mut s = vs.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex(vs.to_vec()));
    }
    Ok(())
}

/// The `t`-blowup of `f` and its class map. Vertex `v * t + j` is copy `j`
/// of `v`, so the class of `w` is `w / t`.
pub fn blowup(f: &ThreeGraph, t: usize) -> Result<(ThreeGraph, Vec<usize>)> {
    if t == 0 {
        return Err(Error::InvalidParameter("a blowup needs t >= 1".into()));
    }
    let n = f.n() * t;
    let mut b = ThreeGraph::builder(n)?;
    for [x, y, z] in f.edges() {
        for i in 0..t {
            for j in 0..t {
                for k in 0..t {
                    b.insert([x * t + i, y * t + j, z * t + k])?;
                }
            }
        }
    }
    Ok((b.build().into(), (0..n).map(|w| w / t).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clique {
    K4,
    K5,
}

/// Number of vertex sets spanning a complete 3-graph of the given order.
pub fn count_copies(h: &ThreeGraph, clique: Clique) -> u64 {
    let mut count = 0;
    for [a, b, c] in h.edges() {
        let ext = h.common_extension(a, b, c);
        for d in ext.iter().filter(|&d| d > c) {
            match clique {
                Clique::K4 => count += 1,
                Clique::K5 => {
                    let mut s = ext.clone();
                    s.intersect_with(h.pair_neighbourhood(a, d));
                    s.intersect_with(h.pair_neighbourhood(b, d));
                    s.intersect_with(h.pair_neighbourhood(c, d));
                    count += s.iter().filter(|&e| e > d).count() as u64;
                }
            }
        }
    }
    count
}

/// Backtracking search for a copy of `F(t)`. Classes fill round-robin and
/// each class is kept increasing, so every copy is met once per labelling of
/// the classes of `F`.
struct CopySearch<'a> {
    h: &'a ThreeGraph,
    // For each class, the other two classes of every edge of F through it.
    edges_at: Vec<Vec<(usize, usize)>>,
    slots: Vec<usize>,
    classes: Vec<Vec<usize>>,
    free: VertexSet,
    budget: &'a Budget,
}

impl CopySearch<'_> {
    fn grow(&mut self, k: usize, rng: &mut Option<&mut ChaCha8Rng>) -> bool {
        if k == self.slots.len() {
            return true;
        }
        let c = self.slots[k];
        let mut cand = self.free.clone();
        for &(p, q) in &self.edges_at[c] {
            for &a in &self.classes[p] {
                for &b in &self.classes[q] {
                    cand.intersect_with(self.h.pair_neighbourhood(a, b));
                }
            }
        }
        let floor = self.classes[c].last().map_or(0, |&l| l + 1);
        let mut order: Vec<usize> = cand.iter().filter(|&w| w >= floor).collect();
        if let Some(r) = rng.as_mut() {
            order.shuffle(r);
        }
        for w in order {
            if !self.budget.tick() {
                return false;
            }
            self.classes[c].push(w);
            self.free.remove(w);
            if self.grow(k + 1, rng) {
                return true;
            }
            self.classes[c].pop();
            self.free.insert(w);
        }
        false
    }
}

fn grow_copy(
    h: &ThreeGraph,
    f: &ThreeGraph,
    t: usize,
    avoid: &VertexSet,
    budget: &Budget,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Option<Vec<Vec<usize>>> {
    let m = f.n();
    let mut edges_at = vec![Vec::new(); m];
    for [x, y, z] in f.edges() {
        edges_at[x].push((y, z));
        edges_at[y].push((x, z));
        edges_at[z].push((x, y));
    }
    let mut free = VertexSet::full(h.n());
    for v in avoid.iter().filter(|&v| v < h.n()) {
        free.remove(v);
    }
    if free.len() < m * t {
        return None;
    }
    let mut s = CopySearch {
        h,
        edges_at,
        slots: (0..t).flat_map(|_| 0..m).collect(),
        classes: vec![Vec::with_capacity(t); m],
        free,
        budget,
    };
    s.grow(0, &mut rng).then_some(s.classes)
}

/// A copy of `F(t)` in `h` avoiding `avoid`: entry `v` of the result is the
/// class of the vertex `v` of `f`, in increasing order.
pub fn find_blowup_copy(
    h: &ThreeGraph,
    f: &ThreeGraph,
    t: usize,
    avoid: &VertexSet,
    budget: u64,
) -> Result<SearchOutcome<Vec<Vec<usize>>>> {
    if t == 0 {
        return Err(Error::InvalidParameter("a blowup needs t >= 1".into()));
    }
    check_range(h, &avoid.to_vec())?;
    let budget = Budget::new(budget);
    Ok(match grow_copy(h, f, t, avoid, &budget, None) {
        Some(c) => SearchOutcome::Found(c),
        None if budget.exhausted() => SearchOutcome::BudgetExhausted,
        None => SearchOutcome::None,
    })
}

/// Labelled 36-vertex absorber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Absorber {
    pub x: [usize; 4],
    pub y: [usize; 4],
    pub z: [usize; 4],
    pub u: [[usize; 6]; 4],
}

impl Absorber {
    /// All 36 labels in the order x, y, z, u.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = Vec::with_capacity(36);
        vs.extend(self.x);
        vs.extend(self.y);
        vs.extend(self.z);
        for row in &self.u {
            vs.extend(row);
        }
        vs
    }

    /// Fails on the first label that repeats.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::with_capacity(36);
        for v in self.vertices() {
            if !seen.insert(v) {
                return Err(Error::LabelCollision(v));
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices().contains(&v)
    }

    /// `x1..x4 y1..y4 z1..z4`.
    pub fn t1(&self) -> VertexSequence {
        VertexSequence::classify([self.x, self.y, self.z].concat())
    }

    /// `x1..x4 z1..z4`.
    pub fn t2(&self) -> VertexSequence {
        VertexSequence::classify([self.x, self.z].concat())
    }

    fn u_through(&self, i: usize, mid: usize) -> VertexSequence {
        let u = &self.u[i];
        VertexSequence::classify(vec![u[0], u[1], u[2], mid, u[3], u[4], u[5]])
    }

    /// Row `i` threaded through `y_i`.
    pub fn u_plain(&self, i: usize) -> VertexSequence {
        self.u_through(i, self.y[i])
    }

    /// Row `i` threaded through the target vertex `v`.
    pub fn u_absorbing(&self, i: usize, v: usize) -> VertexSequence {
        self.u_through(i, v)
    }
}

fn check_target(a: &Absorber, v: &[usize; 4]) -> Result<()> {
    a.validate()?;
    check_distinct(v)?;
    match v.iter().find(|&&t| a.contains(t)) {
        Some(&t) => Err(Error::TargetInAbsorber(t)),
        None => Ok(()),
    }
}

/// Whether all ten sequences of `a` for the target `v` are squared tight
/// paths in `h`.
pub fn is_absorber(h: &ThreeGraph, a: &Absorber, v: &[usize; 4]) -> Result<bool> {
    check_target(a, v)?;
    check_range(h, &a.vertices())?;
    check_range(h, v)?;
    if !is_squared_tight_path(h, &a.t1())? || !is_squared_tight_path(h, &a.t2())? {
        return Ok(false);
    }
    for (i, &vi) in v.iter().enumerate() {
        if !is_squared_tight_path(h, &a.u_plain(i))? || !is_squared_tight_path(h, &a.u_absorbing(i, vi))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T2, U1..U4`: five disjoint paths covering exactly the absorber.
pub fn absorber_paths(a: &Absorber) -> Result<Vec<VertexSequence>> {
    a.validate()?;
    let mut ps = vec![a.t2()];
    ps.extend((0..4).map(|i| a.u_plain(i)));
    Ok(ps)
}

/// Images of [`absorber_paths`] after swallowing `v`, index for index.
pub fn absorbed_paths(a: &Absorber, v: &[usize; 4]) -> Result<Vec<VertexSequence>> {
    check_target(a, v)?;
    let mut qs = vec![a.t1()];
    qs.extend((0..4).map(|i| a.u_absorbing(i, v[i])));
    debug_assert!(absorber_paths(a)?.iter().zip(&qs).all(|(p, q)| {
        p.initial_triple() == q.initial_triple() && p.final_triple() == q.final_triple()
    }));
    Ok(qs)
}

// Positions of the six free vertices of a row; position 3 holds `y_i` or `v_i`.
const ROW: [usize; 6] = [0, 1, 2, 4, 5, 6];

fn row_candidates(h: &ThreeGraph, placed: &[usize], mids: [usize; 2], free: &VertexSet) -> VertexSet {
    let p = ROW[placed.len()];
    let at = |q: usize, r: usize| match q {
        3 => mids[r],
        q if q < 3 => placed[q],
        q => placed[q - 1],
    };
    let mut known: Vec<usize> = (0..p).collect();
    if p < 3 {
        known.push(3);
    }
    let mut cand = free.clone();
    for (i, &a) in known.iter().enumerate() {
        for &b in &known[i + 1..] {
            if a.max(b).max(p) - a.min(b).min(p) > 3 {
                continue;
            }
            cand.intersect_with(h.pair_neighbourhood(at(a, 0), at(b, 0)));
            if a == 3 || b == 3 {
                cand.intersect_with(h.pair_neighbourhood(at(a, 1), at(b, 1)));
            }
        }
    }
    cand
}

fn grow_row(
    h: &ThreeGraph,
    placed: &mut Vec<usize>,
    mids: [usize; 2],
    free: &mut VertexSet,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> bool {
    if placed.len() == 6 {
        return true;
    }
    let mut order = row_candidates(h, placed, mids, free).to_vec();
    order.shuffle(rng);
    for w in order {
        if !budget.tick() {
            return false;
        }
        placed.push(w);
        free.remove(w);
        if grow_row(h, placed, mids, free, budget, rng) {
            return true;
        }
        placed.pop();
        free.insert(w);
    }
    false
}

enum Attempt {
    Found(Box<Absorber>),
    // The host has no K4(3) avoiding the target at all.
    NoFrame,
    Failed,
}

fn absorber_attempt(
    h: &ThreeGraph,
    v: &[usize; 4],
    avoid: &VertexSet,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Attempt {
    let n = h.n();
    let mut avoid = avoid.union(&VertexSet::from_members(n, v.iter().copied()));
    let k4 = ThreeGraph::complete(4).expect("K4 is valid");
    let Some(mut classes) = grow_copy(h, &k4, 3, &avoid, budget, Some(&mut *rng)) else {
        return if budget.exhausted() { Attempt::Failed } else { Attempt::NoFrame };
    };
    let (mut x, mut y, mut z) = ([0; 4], [0; 4], [0; 4]);
    for (i, class) in classes.iter_mut().enumerate() {
        class.shuffle(rng);
        (x[i], y[i], z[i]) = (class[0], class[1], class[2]);
        avoid.union_with(&VertexSet::from_members(n, class.iter().copied()));
    }
    let mut free = avoid.complement();
    let mut u = [[0; 6]; 4];
    for i in 0..4 {
        let mut row = Vec::with_capacity(6);
        if !grow_row(h, &mut row, [y[i], v[i]], &mut free, budget, rng) {
            return Attempt::Failed;
        }
        u[i].copy_from_slice(&row);
    }
    let a = Absorber { x, y, z, u };
    match is_absorber(h, &a, v) {
        Ok(true) => Attempt::Found(Box::new(a)),
        _ => Attempt::Failed,
    }
}

/// Attempts run in fixed-size parallel batches; each gets its own seeded
/// stream and budget slice, so the result depends only on the inputs.
const ATTEMPT_BATCH: u64 = 8;

/// Builds an absorber for `v` the constructive way: a `K4(3)` frame avoiding
/// `v`, then for each `i` a row of six vertices threading both `y_i` and
/// `v_i`. Every result is re-checked with [`is_absorber`].
pub fn find_absorber(h: &ThreeGraph, v: &[usize; 4], budget: u64, seed: u64) -> Result<SearchOutcome<Absorber>> {
    find_absorber_avoiding(h, v, &VertexSet::empty(h.n()), budget, seed)
}

/// [`find_absorber`] with the absorber kept off `avoid` as well.
pub fn find_absorber_avoiding(
    h: &ThreeGraph,
    v: &[usize; 4],
    avoid: &VertexSet,
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome<Absorber>> {
    check_range(h, v)?;
    check_distinct(v)?;
    check_range(h, &avoid.to_vec())?;
    let avoid = VertexSet::from_members(h.n(), avoid.iter());
    let blocked = avoid.union(&VertexSet::from_members(h.n(), v.iter().copied()));
    if h.n() < blocked.len() + 36 {
        return Ok(SearchOutcome::None);
    }
    let slice = (budget / ATTEMPT_BATCH).max(1 << 14).min(budget.max(1));
    let mut spent = 0u64;
    for batch in 0.. {
        let results: Vec<(Attempt, u64)> = (0..ATTEMPT_BATCH)
            .into_par_iter()
            .map(|r| {
                let b = Budget::new(slice);
                let mut rng = stream_rng(seed, batch * ATTEMPT_BATCH + r);
                let out = absorber_attempt(h, v, &avoid, &b, &mut rng);
                (out, b.spent())
            })
            .collect();
        for (out, used) in results {
            spent += used.max(1);
            match out {
                Attempt::Found(a) => return Ok(SearchOutcome::Found(*a)),
                Attempt::NoFrame => return Ok(SearchOutcome::None),
                Attempt::Failed if spent >= budget => return Ok(SearchOutcome::BudgetExhausted),
                Attempt::Failed => {}
            }
        }
    }
    unreachable!("the batch loop only ends by returning")
}

/// A `K5(4)` copy listed as `a1..a5 b1..b5 c1..c5 d1..d5`, where
/// `{a_k, b_k, c_k, d_k}` is the `k`-th class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DonationPath {
    pub a: [usize; 5],
    pub b: [usize; 5],
    pub c: [usize; 5],
    pub d: [usize; 5],
}

impl DonationPath {
    pub fn sequence(&self) -> VertexSequence {
        VertexSequence::classify([self.a, self.b, self.c, self.d].concat())
    }

    /// `a5, b5, c5`: any subset of these can be dropped.
    pub fn donatable(&self) -> [usize; 3] {
        [self.a[4], self.b[4], self.c[4]]
    }

    pub fn vertices(&self) -> Vec<usize> {
        [self.a, self.b, self.c, self.d].concat()
    }
}

/// Finds a `K5(4)` avoiding `avoid` and lists it as a donation path.
pub fn donation_path(h: &ThreeGraph, avoid: &VertexSet, budget: u64) -> Result<SearchOutcome<DonationPath>> {
    let k5 = ThreeGraph::complete(5)?;
    Ok(match find_blowup_copy(h, &k5, 4, avoid, budget)? {
        SearchOutcome::Found(classes) => {
            let pick = |j: usize| -> [usize; 5] { std::array::from_fn(|k| classes[k][j]) };
            let d = DonationPath {
                a: pick(0),
                b: pick(1),
                c: pick(2),
                d: pick(3),
            };
            debug_assert!(is_squared_tight_path(h, &d.sequence()).unwrap_or(false));
            SearchOutcome::Found(d)
        }
        SearchOutcome::None => SearchOutcome::None,
        SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
    })
}

/// The donation path with `s` removed, re-checked in `h`.
pub fn donate(h: &ThreeGraph, d: &DonationPath, s: &[usize]) -> Result<VertexSequence> {
    check_distinct(s)?;
    let donatable = d.donatable();
    if let Some(&v) = s.iter().find(|v| !donatable.contains(v)) {
        return Err(Error::NotDonatable(v));
    }
    let full = d.sequence();
    let rest = VertexSequence::classify(full.vertices().iter().copied().filter(|v| !s.contains(v)).collect());
    if !is_squared_tight_path(h, &rest)?
        || rest.initial_triple() != full.initial_triple()
        || rest.final_triple() != full.final_triple()
    {
        return Err(Error::Precondition(format!(
            "donation path without {s:?} is not a squared tight path with the same ends"
        )));
    }
    Ok(rest)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub absorber: usize,
    pub tuple: [usize; 4],
}

/// Paths before and after absorbing a leftover set. With a donation path it
/// comes first; then absorber `j` owns the next five paths in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Absorption {
    pub before: Vec<VertexSequence>,
    pub after: Vec<VertexSequence>,
    pub donated: Vec<usize>,
    pub assignments: Vec<Assignment>,
}

/// Pads `leftover` with donated vertices to a multiple of four, cuts it into
/// 4-tuples in order and gives each the first unused absorber that works
/// for it.
pub fn absorb(
    h: &ThreeGraph,
    donation: Option<&DonationPath>,
    absorbers: &[Absorber],
    leftover: &[usize],
) -> Result<Absorption> {
    check_range(h, leftover)?;
    check_distinct(leftover)?;
    let mut occupied = donation.map(|d| d.vertices()).unwrap_or_default();
    for a in absorbers {
        a.validate()?;
        occupied.extend(a.vertices());
    }
    check_range(h, &occupied)?;
    check_distinct(&occupied)
        .map_err(|_| Error::Precondition("absorbers and the donation path must be pairwise disjoint".into()))?;
    if let Some(v) = leftover.iter().find(|v| occupied.contains(v)) {
        return Err(Error::Precondition(format!("leftover vertex {v} already lies on a path")));
    }

    let pad = (4 - leftover.len() % 4) % 4;
    let donated = match donation {
        Some(d) => d.donatable()[..pad].to_vec(),
        None if pad == 0 => Vec::new(),
        None => {
            return Err(Error::Precondition(format!(
                "{} leftover vertices need a donation path to reach a multiple of four",
                leftover.len()
            )))
        }
    };
    let padded: Vec<usize> = leftover.iter().chain(&donated).copied().collect();

    let mut taken = vec![false; absorbers.len()];
    let mut assignments = Vec::new();
    for chunk in padded.chunks(4) {
        let tuple: [usize; 4] = chunk.try_into().expect("padded to a multiple of four");
        let mut pick = None;
        for (j, a) in absorbers.iter().enumerate() {
            if !taken[j] && is_absorber(h, a, &tuple)? {
                pick = Some(j);
                break;
            }
        }
        let j = pick.ok_or_else(|| Error::InsufficientAbsorbers(tuple.to_vec()))?;
        taken[j] = true;
        assignments.push(Assignment { absorber: j, tuple });
    }

    let mut before = Vec::new();
    let mut after = Vec::new();
    if let Some(d) = donation {
        before.push(d.sequence());
        after.push(donate(h, d, &donated)?);
    }
    let mut target = vec![None; absorbers.len()];
    for s in &assignments {
        target[s.absorber] = Some(s.tuple);
    }
    for (a, t) in absorbers.iter().zip(&target) {
        let ps = absorber_paths(a)?;
        after.extend(match t {
            Some(v) => absorbed_paths(a, v)?,
            None => ps.clone(),
        });
        before.extend(ps);
    }
    Ok(Absorption {
        before,
        after,
        donated,
        assignments,
    })
}
