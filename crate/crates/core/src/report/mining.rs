//! Sweeps of the conditioned sampler across codegree targets.

use rand::seq::IteratorRandom;
use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gadgets::find_absorber;
use crate::generators::{conditioned_sampler, stream_rng};
use crate::tight::{phi_colouring, tetrahedral_graph, tight_components};
use crate::verify::{check_connected, codegree_above_threshold, VerifyOptions};

pub const MINE_HEADER: &str = "n,delta2,sample,tetra_components,lem14_ok,absorber_hits";

/// Random 4-tuples tried per sample when counting absorber hits.
pub const ABSORBER_TARGETS: usize = 4;
const ABSORBER_BUDGET: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MineRow {
    pub n: usize,
    /// The codegree target the sample was conditioned on.
    pub delta2: usize,
    pub sample: usize,
    pub tetra_components: usize,
    /// `None` when `9 δ₂ > 7n` fails, so the connectivity check says nothing.
    pub lem14_ok: Option<bool>,
    pub absorber_hits: usize,
}

fn sample_seed(seed: u64, d: usize, sample: usize) -> u64 {
    stream_rng(seed, ((d as u64) << 32) | sample as u64).next_u64()
}

fn mine_one(n: usize, d: usize, sample: usize, seed: u64) -> Result<MineRow> {
    let s = sample_seed(seed, d, sample);
    let h = conditioned_sampler(n, d, s)?;
    let tetra_components = tight_components(&tetrahedral_graph(&h)?).component_count();
    let lem14_ok = match phi_colouring(&h) {
        Ok(pc) => {
            let opts = VerifyOptions {
                sequential: true,
                ..VerifyOptions::default()
            };
            let r = check_connected(&pc, &opts);
            r.hypothesis_met.then_some(r.conclusion_holds)
        }
        Err(_) => codegree_above_threshold(&h).then_some(false),
    };
    let mut rng = stream_rng(s, 1);
    let mut absorber_hits = 0;
    for t in 0..ABSORBER_TARGETS {
        if n < 40 {
            break;
        }
        let v: Vec<usize> = (0..n).choose_multiple(&mut rng, 4);
        let v = [v[0], v[1], v[2], v[3]];
        if find_absorber(&h, &v, ABSORBER_BUDGET, s.wrapping_add(t as u64))?.is_found() {
            absorber_hits += 1;
        }
    }
    Ok(MineRow {
        n,
        delta2: d,
        sample,
        tetra_components,
        lem14_ok,
        absorber_hits,
    })
}

/// One row per `(d, sample)` in that order. Rows depend only on the inputs,
/// not on the thread count.
pub fn mine_threshold(n: usize, deltas: &[usize], samples: usize, seed: u64) -> Result<Vec<MineRow>> {
    if n < 4 {
        return Err(Error::TooFewVertices {
            what: "threshold sweep",
            n,
            min: 4,
        });
    }
    if let Some(&d) = deltas.iter().find(|&&d| d > n - 2) {
        return Err(Error::InvalidParameter(format!("codegree target {d} exceeds n - 2 = {}", n - 2)));
    }
    let jobs: Vec<(usize, usize)> = deltas.iter().flat_map(|&d| (0..samples).map(move |s| (d, s))).collect();
    jobs.par_iter().map(|&(d, s)| mine_one(n, d, s, seed)).collect()
}

pub fn rows_to_csv(rows: &[MineRow]) -> String {
    let mut out = String::from(MINE_HEADER);
    out.push('\n');
    for r in rows {
        let lem = match r.lem14_ok {
            Some(true) => "true",
            Some(false) => "false",
            None => "na",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n, r.delta2, r.sample, r.tetra_components, lem, r.absorber_hits
        ));
    }
    out
}
