//! Small-n enactment of the absorbing strategy: pick a leftover set, build
//! absorbers (and a donation path) for it, chain every gadget path into one
//! path through fresh connectors, then swallow the leftover.

use rand::seq::IteratorRandom;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::validate::{check_path_system, is_squared_tight_path_strict, SystemCheck};
use super::SCHEMA_VERSION;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::gadgets::{absorb, donation_path, find_absorber_avoiding, Absorber, DonationPath};
use crate::generators::stream_rng;
use crate::hypergraph::ThreeGraph;
use crate::search::{connect_many, find_squared_tight_path, ConnectOutcome, SearchOutcome};
use crate::walks::{TripleOrdered, VertexSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoConfig {
    pub absorbers: usize,
    pub donation: bool,
    /// Size of the leftover set to absorb.
    pub leftover: usize,
}

impl DemoConfig {
    fn padding(&self) -> usize {
        if self.donation {
            (4 - self.leftover % 4) % 4
        } else {
            0
        }
    }

    fn tuples(&self) -> usize {
        (self.leftover + self.padding()) / 4
    }

    /// Vertices taken before any connector is built.
    pub fn reserved(&self) -> usize {
        36 * self.absorbers + if self.donation { 20 } else { 0 } + self.leftover
    }

    fn infeasibility(&self, n: usize) -> Option<String> {
        if !self.donation && !self.leftover.is_multiple_of(4) {
            return Some(format!("{} leftover vertices need a donation path", self.leftover));
        }
        if self.tuples() > self.absorbers {
            return Some(format!("{} tuples but {} absorbers", self.tuples(), self.absorbers));
        }
        if self.reserved() > n {
            return Some(format!("needs {} vertices, host has {n}", self.reserved()));
        }
        None
    }
}

/// Configurations worth trying on `n` vertices, most ambitious first. Each
/// leaves at least four vertices free for connectors.
pub fn demo_configurations(n: usize) -> Vec<DemoConfig> {
    [(2, true, 5), (1, true, 1), (1, false, 4)]
        .into_iter()
        .map(|(absorbers, donation, leftover)| DemoConfig {
            absorbers,
            donation,
            leftover,
        })
        .filter(|c| c.infeasibility(n).is_none() && c.reserved() + 4 <= n)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoLimits {
    /// Node budget for each individual search.
    pub budget: u64,
    /// Longest connector, end triples included.
    pub connector_cap: usize,
    /// Independent attempts per configuration.
    pub attempts: usize,
    /// Connector searches allowed while choosing the chaining order.
    pub max_junction_searches: usize,
}

impl Default for DemoLimits {
    fn default() -> Self {
        DemoLimits {
            budget: 1 << 20,
            connector_cap: 8,
            attempts: 16,
            max_junction_searches: 20_000,
        }
    }
}

/// Position of a gadget path in the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub index: usize,
    pub reversed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoRun {
    pub config: DemoConfig,
    pub attempt: usize,
    pub leftover: Vec<usize>,
    pub donation: Option<DonationPath>,
    pub absorbers: Vec<Absorber>,
    pub donated: Vec<usize>,
    /// Gadget paths before and after absorbing, index for index.
    pub before: Vec<VertexSequence>,
    pub after: Vec<VertexSequence>,
    pub order: Vec<Piece>,
    pub connectors: Vec<VertexSequence>,
    pub final_path: VertexSequence,
    pub final_path_valid: bool,
    pub uncovered: Vec<usize>,
    pub check: SystemCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum DemoFailure {
    Infeasible { reason: String },
    NoDonationPath { budget_exhausted: bool },
    NoAbsorber { tuple: [usize; 4], budget_exhausted: bool },
    NotConnected,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoAttempt {
    pub config: DemoConfig,
    pub attempt: usize,
    pub failure: DemoFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub schema: u32,
    pub n: usize,
    pub seed: u64,
    pub failures: Vec<DemoAttempt>,
    pub run: Option<DemoRun>,
}

impl DemoReport {
    pub fn succeeded(&self) -> bool {
        self.run.as_ref().is_some_and(|r| r.final_path_valid && r.check.passed())
    }
}

fn oriented(p: &VertexSequence, reversed: bool) -> Vec<usize> {
    let mut v = p.vertices().to_vec();
    if reversed {
        v.reverse();
    }
    v
}

fn head(v: &[usize]) -> TripleOrdered {
    TripleOrdered::new(v[0], v[1], v[2]).expect("paths have distinct vertices")
}

fn tail(v: &[usize]) -> TripleOrdered {
    let l = v.len();
    TripleOrdered::new(v[l - 3], v[l - 2], v[l - 1]).expect("paths have distinct vertices")
}

struct Chainer<'a> {
    h: &'a ThreeGraph,
    pieces: &'a [VertexSequence],
    limits: &'a DemoLimits,
    blocked: VertexSet,
    order: Vec<Piece>,
    placed: Vec<bool>,
    searches: usize,
}

impl Chainer<'_> {
    fn extend(&mut self) -> Result<bool> {
        if self.order.len() == self.pieces.len() {
            return Ok(true);
        }
        let last = *self.order.last().expect("the chain starts with a piece");
        let from = tail(&oriented(&self.pieces[last.index], last.reversed));
        for index in 0..self.pieces.len() {
            if self.placed[index] {
                continue;
            }
            for reversed in [false, true] {
                if self.searches >= self.limits.max_junction_searches {
                    return Ok(false);
                }
                self.searches += 1;
                let to = head(&oriented(&self.pieces[index], reversed));
                let mut avoid = self.blocked.clone();
                for v in from.as_array().into_iter().chain(to.as_array()) {
                    avoid.remove(v);
                }
                let SearchOutcome::Found(p) =
                    find_squared_tight_path(self.h, &from, &to, &avoid, self.limits.connector_cap, self.limits.budget)?
                else {
                    continue;
                };
                let inner = &p.vertices()[3..p.len() - 3];
                for &v in inner {
                    self.blocked.insert(v);
                }
                self.order.push(Piece { index, reversed });
                self.placed[index] = true;
                if self.extend()? {
                    return Ok(true);
                }
                self.placed[index] = false;
                self.order.pop();
                for &v in inner {
                    self.blocked.remove(v);
                }
            }
        }
        Ok(false)
    }
}

/// An order and orientation of `pieces` in which consecutive pieces can be
/// joined by disjoint connectors avoiding `system`. Reversing a whole chain
/// gives another chain, so piece 0 is only tried forwards.
fn choose_order(
    h: &ThreeGraph,
    pieces: &[VertexSequence],
    system: &VertexSet,
    limits: &DemoLimits,
) -> Result<Option<Vec<Piece>>> {
    let mut c = Chainer {
        h,
        pieces,
        limits,
        blocked: system.clone(),
        order: Vec::new(),
        placed: vec![false; pieces.len()],
        searches: 0,
    };
    for index in 0..pieces.len() {
        for reversed in [false, true] {
            if index == 0 && reversed {
                continue;
            }
            c.order = vec![Piece { index, reversed }];
            c.placed.iter_mut().for_each(|p| *p = false);
            c.placed[index] = true;
            if c.extend()? {
                return Ok(Some(c.order));
            }
        }
    }
    Ok(None)
}

fn run_once(
    h: &ThreeGraph,
    config: DemoConfig,
    limits: &DemoLimits,
    seed: u64,
    attempt: usize,
) -> Result<std::result::Result<DemoRun, DemoFailure>> {
    let n = h.n();
    let mut rng = stream_rng(seed, attempt as u64);
    let leftover: Vec<usize> = (0..n).choose_multiple(&mut rng, config.leftover);
    let mut blocked = VertexSet::from_members(n, leftover.iter().copied());

    let donation = if config.donation {
        match donation_path(h, &blocked, limits.budget)? {
            SearchOutcome::Found(d) => {
                for v in d.vertices() {
                    blocked.insert(v);
                }
                Some(d)
            }
            other => {
                return Ok(Err(DemoFailure::NoDonationPath {
                    budget_exhausted: matches!(other, SearchOutcome::BudgetExhausted),
                }))
            }
        }
    } else {
        None
    };

    let mut padded = leftover.clone();
    if let Some(d) = &donation {
        padded.extend_from_slice(&d.donatable()[..config.padding()]);
    }
    let mut absorbers = Vec::with_capacity(config.absorbers);
    for j in 0..config.absorbers {
        let tuple: [usize; 4] = match padded.get(4 * j..4 * j + 4) {
            Some(t) => t.try_into().expect("slice of four"),
            // Spare absorbers are built for an arbitrary outside tuple.
            None => {
                let t = (0..n).filter(|&v| !blocked.contains(v)).choose_multiple(&mut rng, 4);
                t.try_into().map_err(|_| Error::InvalidParameter("no room for a spare absorber".into()))?
            }
        };
        match find_absorber_avoiding(h, &tuple, &blocked, limits.budget, rng.next_u64())? {
            SearchOutcome::Found(a) => {
                for v in a.vertices() {
                    blocked.insert(v);
                }
                absorbers.push(a);
            }
            other => {
                return Ok(Err(DemoFailure::NoAbsorber {
                    tuple,
                    budget_exhausted: matches!(other, SearchOutcome::BudgetExhausted),
                }))
            }
        }
    }

    let absorption = absorb(h, donation.as_ref(), &absorbers, &leftover)?;
    let mut system = VertexSet::from_members(n, leftover.iter().copied());
    for p in &absorption.before {
        for &v in p.vertices() {
            system.insert(v);
        }
    }
    let Some(order) = choose_order(h, &absorption.before, &system, limits)? else {
        return Ok(Err(DemoFailure::NotConnected));
    };

    let pairs: Vec<(TripleOrdered, TripleOrdered)> = order
        .windows(2)
        .map(|w| {
            (
                tail(&oriented(&absorption.before[w[0].index], w[0].reversed)),
                head(&oriented(&absorption.before[w[1].index], w[1].reversed)),
            )
        })
        .collect();
    let mut forbidden = system.clone();
    for (x, y) in &pairs {
        for v in x.as_array().into_iter().chain(y.as_array()) {
            forbidden.remove(v);
        }
    }
    let connectors = match connect_many(h, &pairs, &forbidden, limits.connector_cap, limits.budget)? {
        ConnectOutcome::Connected { paths } => paths,
        ConnectOutcome::Failed { .. } => return Ok(Err(DemoFailure::NotConnected)),
    };

    // Absorbing keeps every end triple, so the same connectors join the
    // rewritten pieces.
    let mut path = oriented(&absorption.after[order[0].index], order[0].reversed);
    for (piece, conn) in order[1..].iter().zip(&connectors) {
        path.extend_from_slice(&conn.vertices()[3..]);
        path.extend_from_slice(&oriented(&absorption.after[piece.index], piece.reversed)[3..]);
    }
    let final_path_valid = is_squared_tight_path_strict(h, &path);
    let on_path = VertexSet::from_members(n, path.iter().copied());
    let check = check_path_system(h, &absorption.before, &absorption.after, &leftover);
    Ok(Ok(DemoRun {
        config,
        attempt,
        leftover,
        donation,
        absorbers,
        donated: absorption.donated,
        before: absorption.before,
        after: absorption.after,
        order,
        connectors,
        final_path: VertexSequence::classify(path),
        final_path_valid,
        uncovered: on_path.complement().to_vec(),
        check,
    }))
}

/// Tries each configuration in turn, up to `limits.attempts` times each,
/// and reports the first run that gets through every stage.
pub fn demo_absorb(h: &ThreeGraph, configs: &[DemoConfig], limits: &DemoLimits, seed: u64) -> Result<DemoReport> {
    let mut report = DemoReport {
        schema: SCHEMA_VERSION,
        n: h.n(),
        seed,
        failures: Vec::new(),
        run: None,
    };
    for &config in configs {
        if let Some(reason) = config.infeasibility(h.n()) {
            report.failures.push(DemoAttempt {
                config,
                attempt: 0,
                failure: DemoFailure::Infeasible { reason },
            });
            continue;
        }
        for attempt in 0..limits.attempts {
            match run_once(h, config, limits, seed, attempt)? {
                Ok(run) => {
                    report.run = Some(run);
                    return Ok(report);
                }
                Err(failure) => report.failures.push(DemoAttempt {
                    config,
                    attempt,
                    failure,
                }),
            }
        }
    }
    Ok(report)
}
