//! Instance-level checkers for the forbidden configurations of dense 3-graphs.
//!
//! Every check yields a [`LemmaReport`]. In [`Mode::Assert`] a check whose
//! hypothesis fails is skipped and reported as vacuously true; in
//! [`Mode::Scan`] the search runs regardless. Searches stop at the first
//! witness and charge every configuration they inspect to a shared node budget.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::ThreeGraph;
use crate::tight::PhiColouring;

mod colours;
#[cfg(test)]
mod corpus;
mod link;
mod pairs;
mod patterns;

pub use colours::{
    check_adjacent_edges_share_colour, check_component_bound, check_connected, check_edge_extension_bound,
    check_intersecting_vertex_colours, check_no_colour_triangle, check_split_pair_exists,
    check_vertex_colour_bound,
};
pub use link::{check_link_patterns, scan_link_patterns, LinkViolation, LinkViolationKind};
pub use pairs::{
    adversarial_family, check_common_neighbour_fixed, check_common_neighbour_9, check_nine_pair_families,
    check_eight_pair_families, CommonNeighbour,
};
pub use patterns::{default_catalog, scan_two_colour_patterns, PatternKind, PatternSpec};

/// Wire tags of the individual checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "FACT_3_1")]
    AdjacentEdgesShareColour,
    #[serde(rename = "FACT_3_2")]
    IntersectingVertexColours,
    #[serde(rename = "FACT_3_4")]
    EdgeExtensionBound,
    #[serde(rename = "PROP_3_5")]
    SplitPairExists,
    #[serde(rename = "PROP_3_6i")]
    NinePairCommonNeighbour,
    #[serde(rename = "PROP_3_6ii")]
    EightPairFixedCommonNeighbour,
    #[serde(rename = "LEM_3_8i")]
    NoProperLinkCycle,
    #[serde(rename = "LEM_3_8ii")]
    NoThreeColourLinkCycle,
    #[serde(rename = "LEM_3_8iii")]
    NoRainbowLinkPath,
    #[serde(rename = "LEM_3_8iv")]
    PairColourBound,
    #[serde(rename = "LEM_3_9")]
    VertexColourBound,
    #[serde(rename = "PROP_3_10")]
    NoColourTriangle,
    #[serde(rename = "LEM_3_12")]
    ComponentBound,
    #[serde(rename = "PROP_3_13")]
    NoBalancedDoubleTetrahedron,
    #[serde(rename = "LEM_3_14")]
    NoAlternatingWalk,
    #[serde(rename = "LEM_3_15")]
    NoSkewWalk,
    #[serde(rename = "PROP_3_16")]
    RedWedgeForcesRed,
    #[serde(rename = "LEM_3_17i")]
    BlueNotSpanning,
    #[serde(rename = "LEM_3_17ii")]
    RedNeighbourhoodsMonochrome,
    #[serde(rename = "LEM_3_17iii")]
    BlueFiveClique,
    #[serde(rename = "LEM_1_4")]
    TetrahedralConnected,
}

impl LemmaId {
    pub const ALL: [LemmaId; 21] = [
        LemmaId::AdjacentEdgesShareColour,
        LemmaId::IntersectingVertexColours,
        LemmaId::EdgeExtensionBound,
        LemmaId::SplitPairExists,
        LemmaId::NinePairCommonNeighbour,
        LemmaId::EightPairFixedCommonNeighbour,
        LemmaId::NoProperLinkCycle,
        LemmaId::NoThreeColourLinkCycle,
        LemmaId::NoRainbowLinkPath,
        LemmaId::PairColourBound,
        LemmaId::VertexColourBound,
        LemmaId::NoColourTriangle,
        LemmaId::ComponentBound,
        LemmaId::NoBalancedDoubleTetrahedron,
        LemmaId::NoAlternatingWalk,
        LemmaId::NoSkewWalk,
        LemmaId::RedWedgeForcesRed,
        LemmaId::BlueNotSpanning,
        LemmaId::RedNeighbourhoodsMonochrome,
        LemmaId::BlueFiveClique,
        LemmaId::TetrahedralConnected,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            LemmaId::AdjacentEdgesShareColour => "FACT_3_1",
            LemmaId::IntersectingVertexColours => "FACT_3_2",
            LemmaId::EdgeExtensionBound => "FACT_3_4",
            LemmaId::SplitPairExists => "PROP_3_5",
            LemmaId::NinePairCommonNeighbour => "PROP_3_6i",
            LemmaId::EightPairFixedCommonNeighbour => "PROP_3_6ii",
            LemmaId::NoProperLinkCycle => "LEM_3_8i",
            LemmaId::NoThreeColourLinkCycle => "LEM_3_8ii",
            LemmaId::NoRainbowLinkPath => "LEM_3_8iii",
            LemmaId::PairColourBound => "LEM_3_8iv",
            LemmaId::VertexColourBound => "LEM_3_9",
            LemmaId::NoColourTriangle => "PROP_3_10",
            LemmaId::ComponentBound => "LEM_3_12",
            LemmaId::NoBalancedDoubleTetrahedron => "PROP_3_13",
            LemmaId::NoAlternatingWalk => "LEM_3_14",
            LemmaId::NoSkewWalk => "LEM_3_15",
            LemmaId::RedWedgeForcesRed => "PROP_3_16",
            LemmaId::BlueNotSpanning => "LEM_3_17i",
            LemmaId::RedNeighbourhoodsMonochrome => "LEM_3_17ii",
            LemmaId::BlueFiveClique => "LEM_3_17iii",
            LemmaId::TetrahedralConnected => "LEM_1_4",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    /// Accepts a tag; the family tags `LEM_3_8`, `PROP_3_6` and `LEM_3_17`
    /// are expanded by [`parse_tags`].
    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .iter()
            .copied()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check tag {s:?}")))
    }
}

/// Parses a tag, expanding family tags to all their parts.
pub fn parse_tags(s: &str) -> Result<Vec<LemmaId>> {
    let families: [(&str, &[LemmaId]); 3] = [
        (
            "PROP_3_6",
            &[LemmaId::NinePairCommonNeighbour, LemmaId::EightPairFixedCommonNeighbour],
        ),
        (
            "LEM_3_8",
            &[
                LemmaId::NoProperLinkCycle,
                LemmaId::NoThreeColourLinkCycle,
                LemmaId::NoRainbowLinkPath,
                LemmaId::PairColourBound,
            ],
        ),
        (
            "LEM_3_17",
            &[
                LemmaId::BlueNotSpanning,
                LemmaId::RedNeighbourhoodsMonochrome,
                LemmaId::BlueFiveClique,
            ],
        ),
    ];
    if s.eq_ignore_ascii_case("ALL") {
        return Ok(LemmaId::ALL.to_vec());
    }
    for (tag, ids) in families {
        if tag.eq_ignore_ascii_case(s) {
            return Ok(ids.to_vec());
        }
    }
    Ok(vec![s.parse()?])
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Check the conclusion only where the hypothesis holds.
    #[default]
    Assert,
    /// Search for witnesses whether or not the hypothesis holds.
    Scan,
}

/// A configuration found by a check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub colours: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<[usize; 2]>,
}

impl Witness {
    pub fn vertices(vertices: impl Into<Vec<usize>>) -> Self {
        Witness {
            vertices: vertices.into(),
            ..Self::default()
        }
    }

    pub fn with_colours(mut self, colours: impl Into<Vec<u32>>) -> Self {
        self.colours = colours.into();
        self
    }

    pub fn with_pairs(mut self, pairs: impl Into<Vec<[usize; 2]>>) -> Self {
        self.pairs = pairs.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub hypothesis_met: bool,
    pub conclusion_holds: bool,
    pub witness: Option<Witness>,
    pub checked_universe_size: u64,
    pub budget_exhausted: bool,
}

impl LemmaReport {
    /// Hypothesis holds and the conclusion fails.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_met && !self.conclusion_holds
    }

    pub(crate) fn skipped(id: LemmaId) -> Self {
        LemmaReport {
            lemma_id: id,
            hypothesis_met: false,
            conclusion_holds: true,
            witness: None,
            checked_universe_size: 0,
            budget_exhausted: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// Maximum configurations inspected per check.
    pub budget: u64,
    /// Run on the calling thread only, making counts reproducible.
    pub sequential: bool,
    /// Random pair families drawn for the common-neighbour checks.
    pub pair_families: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Assert,
            budget: 1_000_000_000,
            sequential: false,
            pair_families: 64,
            seed: 0,
        }
    }
}

/// `δ₂(H) > 7n/9`, decided in integers.
pub fn codegree_above_threshold(h: &ThreeGraph) -> bool {
    h.n() >= 2 && 9 * h.min_codegree().unwrap_or(0) > 7 * h.n()
}

/// Shared configuration counter with a hard limit.
pub(crate) struct Meter {
    limit: u64,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl Meter {
    pub(crate) fn new(limit: u64) -> Self {
        Meter {
            limit,
            used: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Charges `k` configurations; false once the limit is passed.
    #[inline]
    pub(crate) fn charge(&self, k: u64) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let before = self.used.fetch_add(k, Ordering::Relaxed);
        if before + k > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn report(&self, id: LemmaId, hypothesis_met: bool, witness: Option<Witness>) -> LemmaReport {
        LemmaReport {
            lemma_id: id,
            hypothesis_met,
            conclusion_holds: witness.is_none(),
            witness,
            checked_universe_size: self.used(),
            budget_exhausted: self.exhausted(),
        }
    }
}

/// First witness over `0..n` in index order, in parallel unless sequential.
pub(crate) fn first_over<F>(n: usize, sequential: bool, f: F) -> Option<Witness>
where
    F: Fn(usize) -> Option<Witness> + Sync + Send,
{
    if sequential {
        (0..n).find_map(f)
    } else {
        (0..n).into_par_iter().find_map_first(f)
    }
}

/// Runs the requested checks in the order given.
pub fn verify(pc: &PhiColouring<'_>, ids: &[LemmaId], opts: &VerifyOptions) -> Vec<LemmaReport> {
    let mut pattern_ids = Vec::new();
    let mut out: Vec<Option<LemmaReport>> = vec![None; ids.len()];
    for (slot, &id) in ids.iter().enumerate() {
        let report = match id {
            LemmaId::AdjacentEdgesShareColour => check_adjacent_edges_share_colour(pc, opts),
            LemmaId::IntersectingVertexColours => check_intersecting_vertex_colours(pc, opts),
            LemmaId::EdgeExtensionBound => check_edge_extension_bound(pc, opts),
            LemmaId::SplitPairExists => check_split_pair_exists(pc, opts),
            LemmaId::NinePairCommonNeighbour => check_nine_pair_families(pc.base(), opts),
            LemmaId::EightPairFixedCommonNeighbour => check_eight_pair_families(pc.base(), opts),
            LemmaId::NoProperLinkCycle
            | LemmaId::NoThreeColourLinkCycle
            | LemmaId::NoRainbowLinkPath
            | LemmaId::PairColourBound => check_link_patterns(pc, id, opts),
            LemmaId::VertexColourBound => check_vertex_colour_bound(pc, opts),
            LemmaId::NoColourTriangle => check_no_colour_triangle(pc, opts),
            LemmaId::ComponentBound => check_component_bound(pc, opts),
            LemmaId::TetrahedralConnected => check_connected(pc, opts),
            _ => {
                pattern_ids.push((slot, id));
                continue;
            }
        };
        out[slot] = Some(report);
    }
    if !pattern_ids.is_empty() {
        let wanted: Vec<LemmaId> = pattern_ids.iter().map(|&(_, id)| id).collect();
        let catalog: Vec<PatternSpec> = default_catalog()
            .into_iter()
            .filter(|p| p.ids().iter().any(|id| wanted.contains(id)))
            .collect();
        let reports = scan_two_colour_patterns(pc, &catalog, opts);
        for (slot, id) in pattern_ids {
            out[slot] = reports.iter().find(|r| r.lemma_id == id).cloned();
        }
    }
    out.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.tag().parse::<LemmaId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.tag()));
        }
        assert_eq!(parse_tags("LEM_3_8").unwrap().len(), 4);
        assert_eq!(parse_tags("lem_1_4").unwrap(), vec![LemmaId::TetrahedralConnected]);
        assert!(parse_tags("LEM_9_9").is_err());
    }

    #[test]
    fn threshold_is_strict() {
        // n = 9: 9 * 7 = 63 = 7 * 9, not strictly above
        let h = ThreeGraph::complete(9).unwrap();
        assert!(!codegree_above_threshold(&h));
        assert!(codegree_above_threshold(&ThreeGraph::complete(10).unwrap()));
    }

    #[test]
    fn meter_limits() {
        let m = Meter::new(10);
        assert!(m.charge(6));
        assert!(!m.charge(6));
        assert!(m.exhausted());
        assert_eq!(m.used(), 10);
    }
}
