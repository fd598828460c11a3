//! Instance factories.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial, subsets, unrank};
use crate::error::{Error, Result};
use crate::hypergraph::{ThreeGraph, UniformGraphBuilder};

/// Seeded generator for stream `stream` of `seed`; distinct streams are
/// independent, so batches can be generated in parallel reproducibly.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A partition of `0..n` into four contiguous blocks `V1..V4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    n: usize,
    part_sizes: [usize; 4],
    part_of: Vec<u8>,
}

impl ConstructionSpec {
    /// Balanced sizes, the larger blocks first. The one exception is n = 5,
    /// where `V1` would be the only part with two vertices; no pair would then
    /// sit inside a non-first part and the codegree would be one too high, so
    /// the larger block goes to `V2` instead.
    pub fn balanced(n: usize) -> Self {
        let base = n / 4;
        let extra = n % 4;
        let mut part_sizes: [usize; 4] = std::array::from_fn(|i| base + usize::from(i < extra));
        if base == 1 && extra == 1 {
            part_sizes = [1, 2, 1, 1];
        }
        let part_of = part_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i as u8 + 1, s))
            .collect();
        ConstructionSpec { n, part_sizes, part_of }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part_sizes(&self) -> [usize; 4] {
        self.part_sizes
    }

    /// Part label in `1..=4`.
    #[inline]
    pub fn part(&self, v: usize) -> usize {
        self.part_of[v] as usize
    }

    pub fn members(&self, part: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.part(v) == part).collect()
    }
}

impl Serialize for ConstructionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<Vec<usize>> = (1..=4).map(|p| self.members(p)).collect();
        let mut st = serializer.serialize_struct("ConstructionSpec", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("parts", &parts)?;
        st.end()
    }
}

/// Which of the four edge types of the extremal construction a triple has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionCase {
    /// Exactly two vertices in `V1`.
    TwoInFirst,
    /// One vertex in `V1`, the other two in distinct other parts.
    OneInFirstSpread,
    /// All three in one part other than `V1`.
    InsideOther,
    /// Two in one non-first part, one in another.
    SplitOthers,
}

/// The edge type of `e`, or `None` if `e` is not an edge of the construction.
pub fn construction_case(spec: &ConstructionSpec, e: [usize; 3]) -> Option<ConstructionCase> {
    let p = e.map(|v| spec.part(v));
    let in_first = p.iter().filter(|&&x| x == 1).count();
    let mut others: Vec<usize> = p.iter().copied().filter(|&x| x != 1).collect();
    others.sort_unstable();
    others.dedup();
    match (in_first, others.len()) {
        (2, _) => Some(ConstructionCase::TwoInFirst),
        (1, 2) => Some(ConstructionCase::OneInFirstSpread),
        (0, 1) => Some(ConstructionCase::InsideOther),
        (0, 2) => Some(ConstructionCase::SplitOthers),
        _ => None,
    }
}

/// The four-part construction with minimum codegree `⌊3n/4⌋ - 2` whose
/// tetrahedra all meet `V1` in zero or two vertices.
pub fn extremal_construction(n: usize) -> Result<(ThreeGraph, ConstructionSpec)> {
    if n <= 4 {
        return Err(Error::TooFewVertices {
            what: "extremal construction",
            n,
            min: 5,
        });
    }
    let spec = ConstructionSpec::balanced(n);
    let mut b = ThreeGraph::builder(n)?;
    for e in subsets::<3>(n) {
        if construction_case(&spec, e).is_some() {
            b.insert(e)?;
        }
    }
    Ok((b.build().into(), spec))
}

pub fn complete(n: usize) -> Result<ThreeGraph> {
    if n < 3 {
        return Err(Error::TooFewVertices {
            what: "complete 3-graph",
            n,
            min: 3,
        });
    }
    ThreeGraph::complete(n)
}

/// All triples meeting three distinct parts; parts are contiguous blocks.
pub fn complete_partite(sizes: &[usize]) -> Result<ThreeGraph> {
    if sizes.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "a complete partite 3-graph needs at least 3 parts, got {}",
            sizes.len()
        )));
    }
    let n: usize = sizes.iter().sum();
    let part_of: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    let mut b = ThreeGraph::builder(n)?;
    for [a, bb, c] in subsets::<3>(n) {
        if part_of[a] != part_of[bb] && part_of[a] != part_of[c] && part_of[bb] != part_of[c] {
            b.insert([a, bb, c])?;
        }
    }
    Ok(b.build().into())
}

/// Each triple independently with probability `p`.
pub fn random_threegraph(n: usize, p: f64, seed: u64) -> Result<ThreeGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let mut b = UniformGraphBuilder::<3>::new(n)?;
    let mut rng = stream_rng(seed, 0);
    for r in 0..binomial(n as u64, 3) {
        if rng.random_bool(p) {
            b.insert(unrank::<3>(r))?;
        }
    }
    Ok(b.build().into())
}

/// The edges of `h` lying in some copy of K4. Every edge of the result lies in
/// a copy of K4 of the result, so the component colouring is always defined.
pub fn tetrahedral_core(h: &ThreeGraph) -> ThreeGraph {
    let kept = h
        .edges()
        .filter(|&[a, b, c]| !h.common_extension(a, b, c).is_empty());
    ThreeGraph::from_edges(h.n(), kept).expect("subgraph of a valid graph")
}

/// A union of `count` uniformly chosen copies of K4.
pub fn random_tetrahedra(n: usize, count: usize, seed: u64) -> Result<ThreeGraph> {
    if n < 4 {
        return Err(Error::TooFewVertices {
            what: "random tetrahedra",
            n,
            min: 4,
        });
    }
    let mut rng = stream_rng(seed, 0);
    let mut b = ThreeGraph::builder(n)?;
    let quads = binomial(n as u64, 4);
    for _ in 0..count {
        let [a, bb, c, d] = unrank::<4>(rng.random_range(0..quads));
        for t in [[a, bb, c], [a, bb, d], [a, c, d], [bb, c, d]] {
            b.insert(t)?;
        }
    }
    Ok(b.build().into())
}

/// Deletes edges of the complete graph in uniformly random order, skipping any
/// whose removal would push a pair codegree below `d`.
///
/// A deletable edge stays deletable only while all three of its pair
/// codegrees exceed `d`, and codegrees only fall, so one pass over a shuffled
/// edge list realises the chain that repeatedly deletes a uniformly random
/// deletable edge until none remains. The result always has `δ₂ ≥ d`.
pub fn conditioned_sampler(n: usize, d: usize, seed: u64) -> Result<ThreeGraph> {
    if n < 3 {
        return Err(Error::TooFewVertices {
            what: "conditioned sampler",
            n,
            min: 3,
        });
    }
    if d > n - 2 {
        return Err(Error::InvalidParameter(format!(
            "target codegree {d} exceeds n - 2 = {}",
            n - 2
        )));
    }
    let mut order: Vec<[usize; 3]> = subsets::<3>(n).collect();
    order.shuffle(&mut stream_rng(seed, 0));
    let mut codeg = vec![(n - 2) as u32; n * n];
    let d = d as u32;
    let mut b = UniformGraphBuilder::<3>::new(n)?;
    for [a, bb, c] in order {
        let pairs = [a * n + bb, a * n + c, bb * n + c];
        if pairs.iter().all(|&p| codeg[p] > d) {
            for p in pairs {
                codeg[p] -= 1;
            }
        } else {
            b.insert([a, bb, c])?;
        }
    }
    let h: ThreeGraph = b.build().into();
    debug_assert!(h.min_codegree()? >= d as usize);
    Ok(h)
}
