//! Whole-graph summaries, threshold sweeps, the absorb-and-connect demo and
//! an independent validator for path systems.

mod demo;
mod mining;
mod validate;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use demo::{demo_absorb, demo_configurations, DemoConfig, DemoFailure, DemoLimits, DemoReport, DemoRun, Piece};
pub use mining::{mine_threshold, rows_to_csv, MineRow, ABSORBER_TARGETS, MINE_HEADER};
pub use validate::{check_path_system, is_squared_tight_path_strict, SystemCheck};

use crate::error::Result;
use crate::hypergraph::{FourGraph, ThreeGraph};
use crate::tight::{phi_colouring, tetrahedral_graph, tight_components, TightLabeling};
use crate::verify::{verify, LemmaId, LemmaReport, VerifyOptions};

pub const SCHEMA_VERSION: u32 = 1;

/// Wall-clock milliseconds per stage. Never part of the default output, so
/// reports stay byte-reproducible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub tetrahedral_ms: f64,
    pub colouring_ms: f64,
    pub checks_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub n: usize,
    pub edge_count: usize,
    pub delta2: usize,
    pub delta2_positive: Option<usize>,
    pub tetra_edge_count: usize,
    pub tetra_component_count: usize,
    pub phi_defined: bool,
    pub spanning_component_ids: Vec<u32>,
    pub per_lemma: Vec<LemmaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub lemmas: Vec<LemmaId>,
    pub verify: VerifyOptions,
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            lemmas: LemmaId::ALL.to_vec(),
            verify: VerifyOptions::default(),
            timings: false,
        }
    }
}

/// Components of `T(H)` whose tetrahedra touch every vertex, ascending.
pub fn spanning_ids(tetra: &FourGraph, labeling: &TightLabeling) -> Vec<u32> {
    let n = tetra.n();
    let k = labeling.component_count();
    let mut seen = vec![vec![false; n]; k];
    for (e, &c) in tetra.edges().zip(labeling.ids()) {
        for v in e {
            seen[c as usize][v] = true;
        }
    }
    (0..k as u32).filter(|&c| seen[c as usize].iter().all(|&s| s)).collect()
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Summary of `h` plus the requested checks. The checks need the colouring,
/// so they are skipped when some edge lies in no copy of K4.
pub fn analyze(h: &ThreeGraph, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    let tetra = tetrahedral_graph(h)?;
    let labeling = tight_components(&tetra);
    let tetrahedral_ms = ms(start);

    let start = Instant::now();
    let pc = phi_colouring(h).ok();
    let colouring_ms = ms(start);

    let start = Instant::now();
    let per_lemma = match &pc {
        Some(pc) => verify(pc, &opts.lemmas, &opts.verify),
        None => Vec::new(),
    };
    let checks_ms = ms(start);

    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        n: h.n(),
        edge_count: h.edge_count(),
        delta2: h.min_codegree()?,
        delta2_positive: h.min_positive_codegree(),
        tetra_edge_count: tetra.edge_count(),
        tetra_component_count: labeling.component_count(),
        phi_defined: pc.is_some(),
        spanning_component_ids: spanning_ids(&tetra, &labeling),
        per_lemma,
        timings: opts.timings.then_some(Timings {
            tetrahedral_ms,
            colouring_ms,
            checks_ms,
        }),
    })
}
