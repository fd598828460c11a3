//! Coloured cycles and paths in link graphs.
//!
//! The link of `v` carries the colouring `uw -> φ(uvw)`. Forbidden here: a
//! properly coloured 4-cycle, a 4-cycle with three or more colours, a path on
//! four vertices with three colours, and a pair through `v` of three or more
//! colours.

use serde::Serialize;

use super::{codegree_above_threshold, first_over, LemmaId, LemmaReport, Meter, Mode, VerifyOptions, Witness};
use crate::tight::PhiColouring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkViolationKind {
    ProperCycle,
    ThreeColourCycle,
    RainbowPath,
    PairColours,
}

impl LinkViolationKind {
    fn bit(self) -> u8 {
        1 << self as u8
    }

    fn lemma(self) -> LemmaId {
        match self {
            LinkViolationKind::ProperCycle => LemmaId::NoProperLinkCycle,
            LinkViolationKind::ThreeColourCycle => LemmaId::NoThreeColourLinkCycle,
            LinkViolationKind::RainbowPath => LemmaId::NoRainbowLinkPath,
            LinkViolationKind::PairColours => LemmaId::PairColourBound,
        }
    }

    fn from_lemma(id: LemmaId) -> Option<Self> {
        [
            LinkViolationKind::ProperCycle,
            LinkViolationKind::ThreeColourCycle,
            LinkViolationKind::RainbowPath,
            LinkViolationKind::PairColours,
        ]
        .into_iter()
        .find(|k| k.lemma() == id)
    }
}

/// A forbidden configuration in the link of `v`.
///
/// Cycles start at their least vertex with the second vertex below the last;
/// paths start at the smaller end. For pair violations `vertices` is `[u]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinkViolation {
    pub kind: LinkViolationKind,
    pub v: usize,
    pub vertices: Vec<usize>,
    pub colours: Vec<u32>,
}

/// Link colours of one vertex as a dense matrix; 0 marks a non-edge.
struct LinkColours {
    n: usize,
    col: Vec<u32>,
}

impl LinkColours {
    fn new(pc: &PhiColouring<'_>, v: usize) -> Self {
        let h = pc.base();
        let n = h.n();
        let mut col = vec![0u32; n * n];
        for u in (0..n).filter(|&u| u != v) {
            for w in h.pair_neighbourhood(u, v).iter().filter(|&w| w > u) {
                let c = pc.phi(u, v, w).expect("edge") + 1;
                col[u * n + w] = c;
                col[w * n + u] = c;
            }
        }
        LinkColours { n, col }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> u32 {
        self.col[a * self.n + b]
    }
}

fn distinct(cs: &[u32]) -> usize {
    let mut v = cs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Violations at `v` of the kinds in `mask`, stopping after the first when
/// `first_only`. Returns `None` if the meter runs out first.
fn scan_vertex(
    pc: &PhiColouring<'_>,
    v: usize,
    mask: u8,
    first_only: bool,
    meter: Option<&Meter>,
) -> Option<Vec<LinkViolation>> {
    let h = pc.base();
    let n = h.n();
    let mut out = Vec::new();
    let charge = |k: u64| meter.is_none_or(|m| m.charge(k));
    let seen_colours = pc.phi_vertex(v).len();

    if mask & LinkViolationKind::PairColours.bit() != 0 {
        for u in (0..n).filter(|&u| u != v) {
            if !charge(1) {
                return None;
            }
            let s = pc.phi_pair(u, v);
            if s.len() >= 3 {
                out.push(LinkViolation {
                    kind: LinkViolationKind::PairColours,
                    v,
                    vertices: vec![u],
                    colours: s.as_slice().to_vec(),
                });
                if first_only {
                    return Some(out);
                }
            }
        }
    }

    let want_proper = mask & LinkViolationKind::ProperCycle.bit() != 0 && seen_colours >= 2;
    let want_three = mask & LinkViolationKind::ThreeColourCycle.bit() != 0 && seen_colours >= 3;
    let want_path = mask & LinkViolationKind::RainbowPath.bit() != 0 && seen_colours >= 3;
    if !(want_proper || want_three || want_path) {
        return Some(out);
    }
    let lc = LinkColours::new(pc, v);
    let nbr = |u: usize| h.pair_neighbourhood(u, v);

    if want_proper || want_three {
        for u0 in (0..n).filter(|&u| u != v) {
            let n0 = nbr(u0);
            for u1 in n0.iter().filter(|&u| u > u0) {
                for u3 in n0.iter().filter(|&u| u > u1) {
                    let mut cands = nbr(u1).intersection(nbr(u3));
                    cands.remove(u0);
                    if !charge(cands.len() as u64 + 1) {
                        return None;
                    }
                    for u2 in cands.iter().filter(|&u| u > u0) {
                        let cs = [lc.get(u0, u1), lc.get(u1, u2), lc.get(u2, u3), lc.get(u3, u0)];
                        let proper = cs[0] != cs[1] && cs[1] != cs[2] && cs[2] != cs[3] && cs[3] != cs[0];
                        let many = distinct(&cs) >= 3;
                        for (hit, kind) in [
                            (want_proper && proper, LinkViolationKind::ProperCycle),
                            (want_three && many, LinkViolationKind::ThreeColourCycle),
                        ] {
                            if hit {
                                out.push(LinkViolation {
                                    kind,
                                    v,
                                    vertices: vec![u0, u1, u2, u3],
                                    colours: cs.iter().map(|c| c - 1).collect(),
                                });
                                if first_only {
                                    return Some(out);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    if want_path {
        for x in (0..n).filter(|&u| u != v) {
            for y in nbr(x).iter() {
                let cxy = lc.get(x, y);
                for w in nbr(x).iter().filter(|&w| w != y) {
                    let cwx = lc.get(w, x);
                    if cwx == cxy {
                        continue;
                    }
                    if !charge(1) {
                        return None;
                    }
                    for z in nbr(y).iter().filter(|&z| z > w && z != x) {
                        let cyz = lc.get(y, z);
                        if cyz != cwx && cyz != cxy {
                            out.push(LinkViolation {
                                kind: LinkViolationKind::RainbowPath,
                                v,
                                vertices: vec![w, x, y, z],
                                colours: vec![cwx - 1, cxy - 1, cyz - 1],
                            });
                            if first_only {
                                return Some(out);
                            }
                        }
                    }
                }
            }
        }
    }
    Some(out)
}

/// Every forbidden link configuration at `v`, sorted.
pub fn scan_link_patterns(pc: &PhiColouring<'_>, v: usize) -> Vec<LinkViolation> {
    let all = 0b1111;
    let mut out = scan_vertex(pc, v, all, false, None).expect("unbudgeted");
    out.sort();
    out
}

/// One of the four link checks over all vertices.
pub fn check_link_patterns(pc: &PhiColouring<'_>, id: LemmaId, opts: &VerifyOptions) -> LemmaReport {
    let kind = LinkViolationKind::from_lemma(id).expect("a link check");
    let hyp = codegree_above_threshold(pc.base());
    if opts.mode == Mode::Assert && !hyp {
        return LemmaReport::skipped(id);
    }
    let meter = Meter::new(opts.budget);
    let witness = first_over(pc.base().n(), opts.sequential, |v| {
        let found = scan_vertex(pc, v, kind.bit(), true, Some(&meter))?;
        found.into_iter().next().map(|f| {
            let mut vertices = vec![v];
            vertices.extend(f.vertices);
            Witness::vertices(vertices).with_colours(f.colours)
        })
    });
    meter.report(id, hyp, witness)
}
