//! Forbidden two-colour configurations, driven by a catalog.
//!
//! Each entry runs over every ordered pair `(r, b)` of distinct components,
//! except the spanning-structure entry, which requires `r` to be spanning.

use serde::{Deserialize, Serialize};

use super::colours::{check_no_colour_triangle, coloured_neighbourhood};
use super::{codegree_above_threshold, first_over, LemmaId, LemmaReport, Meter, Mode, VerifyOptions, Witness};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::tight::PhiColouring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternKind {
    /// A tight walk whose consecutive windows carry the colours of the
    /// template, `r` or `b` per window.
    TightWalk { template: String },
    /// Two vertices each forming edges with the three pairs of a triple, six
    /// edges split three and three between the colours.
    BalancedDoubleTetrahedron,
    /// Edges `xyz`, `wyz` of colour `r` and `wxy` of colour `b` force
    /// `φ(z) = {r}`.
    RedWedge,
    /// With `r` spanning: `b` does not span, pairs seeing both colours have
    /// their `r`-neighbours inside `{z : φ(z) = {r}}`, and some K5 is all `b`.
    SpanningStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSpec {
    pub id: LemmaId,
    #[serde(flatten)]
    pub kind: PatternKind,
}

impl PatternSpec {
    /// Report ids this entry produces.
    pub fn ids(&self) -> Vec<LemmaId> {
        match self.kind {
            PatternKind::SpanningStructure => vec![
                LemmaId::BlueNotSpanning,
                LemmaId::RedNeighbourhoodsMonochrome,
                LemmaId::BlueFiveClique,
            ],
            _ => vec![self.id],
        }
    }

    /// Checks that a walk template has at least two windows, all `r` or `b`.
    pub fn validate(&self) -> Result<()> {
        if let PatternKind::TightWalk { template } = &self.kind {
            if template.len() < 2 || !template.chars().all(|c| c == 'r' || c == 'b') {
                return Err(Error::InvalidParameter(format!(
                    "walk template {template:?} must be at least two of 'r'/'b'"
                )));
            }
        }
        Ok(())
    }
}

pub fn default_catalog() -> Vec<PatternSpec> {
    vec![
        PatternSpec {
            id: LemmaId::NoBalancedDoubleTetrahedron,
            kind: PatternKind::BalancedDoubleTetrahedron,
        },
        PatternSpec {
            id: LemmaId::NoAlternatingWalk,
            kind: PatternKind::TightWalk {
                template: "rbrb".into(),
            },
        },
        PatternSpec {
            id: LemmaId::NoSkewWalk,
            kind: PatternKind::TightWalk {
                template: "rbrrb".into(),
            },
        },
        PatternSpec {
            id: LemmaId::RedWedgeForcesRed,
            kind: PatternKind::RedWedge,
        },
        PatternSpec {
            id: LemmaId::BlueFiveClique,
            kind: PatternKind::SpanningStructure,
        },
    ]
}

fn colour_orders(pc: &PhiColouring<'_>) -> Vec<(u32, u32)> {
    let k = pc.component_count() as u32;
    (0..k)
        .flat_map(|r| (0..k).filter(move |&b| b != r).map(move |b| (r, b)))
        .collect()
}

/// Balanced double tetrahedra `x, z | y₁y₂y₃` for colours `(r, b)`.
pub(crate) fn find_double_tetrahedron(
    pc: &PhiColouring<'_>,
    (r, b): (u32, u32),
    meter: &Meter,
    sequential: bool,
) -> Option<Witness> {
    let h = pc.base();
    let n = h.n();
    first_over(n, sequential, |y1| {
        for y2 in y1 + 1..n {
            for y3 in y2 + 1..n {
                let xs = h.common_extension(y1, y2, y3);
                if xs.len() < 2 {
                    continue;
                }
                // counts of r and b among the three edges through each apex
                let tally: Vec<(usize, u8, u8)> = xs
                    .iter()
                    .map(|x| {
                        let cs = [pc.phi(x, y1, y2), pc.phi(x, y1, y3), pc.phi(x, y2, y3)];
                        let cr = cs.iter().filter(|&&c| c == Some(r)).count() as u8;
                        let cb = cs.iter().filter(|&&c| c == Some(b)).count() as u8;
                        (x, cr, cb)
                    })
                    .collect();
                let k = tally.len() as u64;
                if !meter.charge(k * (k - 1) / 2) {
                    return None;
                }
                for (i, &(x, xr, xb)) in tally.iter().enumerate() {
                    for &(z, zr, zb) in &tally[i + 1..] {
                        if xr + zr == 3 && xb + zb == 3 {
                            let colours = [
                                pc.phi(x, y1, y2),
                                pc.phi(x, y1, y3),
                                pc.phi(x, y2, y3),
                                pc.phi(z, y1, y2),
                                pc.phi(z, y1, y3),
                                pc.phi(z, y2, y3),
                            ]
                            .map(|c| c.expect("edge"));
                            return Some(Witness::vertices([x, z, y1, y2, y3]).with_colours(colours));
                        }
                    }
                }
            }
        }
        None
    })
}

/// Tight walks with windows coloured by `colours`, at least two windows.
///
/// The first and last walk vertices only need to exist, which holds exactly
/// when the first colour lies in `φ` of the first inner pair and the last
/// colour in `φ` of the last inner pair; the search runs over inner vertices.
pub(crate) fn find_coloured_walk(
    pc: &PhiColouring<'_>,
    colours: &[u32],
    meter: &Meter,
    sequential: bool,
) -> Option<Witness> {
    let h = pc.base();
    let n = h.n();
    let m = colours.len();
    debug_assert!(m >= 2);
    first_over(n, sequential, |u1| {
        let mut inner = vec![u1];
        for u2 in (0..n).filter(|&u| u != u1) {
            if !meter.charge(1) {
                return None;
            }
            if !pc.phi_pair(u1, u2).contains(colours[0]) {
                continue;
            }
            inner.push(u2);
            if let Some(w) = extend_walk(pc, colours, &mut inner, meter) {
                return Some(w);
            }
            inner.pop();
            if meter.exhausted() {
                return None;
            }
        }
        None
    })
}

fn extend_walk(pc: &PhiColouring<'_>, colours: &[u32], inner: &mut Vec<usize>, meter: &Meter) -> Option<Witness> {
    let m = colours.len();
    let len = inner.len();
    if len == m {
        let (a, b) = (inner[m - 2], inner[m - 1]);
        if !pc.phi_pair(a, b).contains(colours[m - 1]) {
            return None;
        }
        let h = pc.base();
        let first = h
            .pair_neighbourhood(inner[0], inner[1])
            .iter()
            .find(|&w| pc.phi(w, inner[0], inner[1]) == Some(colours[0]))
            .expect("colour present at the pair");
        let last = h
            .pair_neighbourhood(a, b)
            .iter()
            .find(|&w| pc.phi(a, b, w) == Some(colours[m - 1]))
            .expect("colour present at the pair");
        let mut walk = vec![first];
        walk.extend_from_slice(inner);
        walk.push(last);
        return Some(Witness::vertices(walk).with_colours(colours));
    }
    // next inner window (inner[len-2], inner[len-1], next) has colour colours[len-1]
    let (a, b) = (inner[len - 2], inner[len - 1]);
    let nexts = coloured_neighbourhood(pc, a, b, colours[len - 1]);
    if !meter.charge(nexts.len() as u64 + 1) {
        return None;
    }
    for c in nexts.iter() {
        inner.push(c);
        if let Some(w) = extend_walk(pc, colours, inner, meter) {
            return Some(w);
        }
        inner.pop();
        if meter.exhausted() {
            return None;
        }
    }
    None
}

/// Edges `xyz`, `wyz` of colour `r` and `wxy` of colour `b` with `φ(z) ≠ {r}`.
pub(crate) fn find_red_wedge(
    pc: &PhiColouring<'_>,
    (r, b): (u32, u32),
    meter: &Meter,
    sequential: bool,
) -> Option<Witness> {
    let h = pc.base();
    let n = h.n();
    first_over(n, sequential, |z| {
        if pc.phi_vertex(z).as_slice() == [r] {
            meter.charge(1);
            return None;
        }
        for y in (0..n).filter(|&y| y != z) {
            let reds = coloured_neighbourhood(pc, y, z, r);
            for x in reds.iter() {
                if !meter.charge(1) {
                    return None;
                }
                let blues = coloured_neighbourhood(pc, x, y, b);
                if let Some(w) = reds.intersection(&blues).first() {
                    return Some(Witness::vertices([x, y, z, w]).with_colours([r, r, b]));
                }
            }
        }
        None
    })
}

/// A pair with `φ(xy) = {r, b}` and an `r`-neighbour `z` with `φ(z) ≠ {r}`.
pub(crate) fn find_red_neighbour_outside(
    pc: &PhiColouring<'_>,
    (r, b): (u32, u32),
    meter: &Meter,
    sequential: bool,
) -> Option<Witness> {
    let h = pc.base();
    let n = h.n();
    let outside = VertexSet::from_members(n, (0..n).filter(|&z| pc.phi_vertex(z).as_slice() != [r]));
    first_over(n, sequential, |x| {
        for y in x + 1..n {
            if !meter.charge(1) {
                return None;
            }
            let s = pc.phi_pair(x, y);
            if !(s.len() == 2 && s.contains(r) && s.contains(b)) {
                continue;
            }
            let bad = coloured_neighbourhood(pc, x, y, r).intersection(&outside);
            if let Some(z) = bad.first() {
                return Some(Witness::vertices([x, y, z]).with_colours([r, b]));
            }
        }
        None
    })
}

/// A copy of K5 all of whose edges have colour `b`, smallest first K4 by rank.
pub(crate) fn find_monochrome_five_clique(pc: &PhiColouring<'_>, b: u32, meter: &Meter) -> Option<Vec<usize>> {
    let h = pc.base();
    let lab = pc.labeling();
    for (i, q) in pc.tetrahedral().edges().enumerate() {
        if lab.component_of_index(i) != b {
            continue;
        }
        if !meter.charge(1) {
            return None;
        }
        let [a, bb, c, d] = q;
        let mut s = h.common_extension(a, bb, c);
        s.intersect_with(h.pair_neighbourhood(a, d));
        s.intersect_with(h.pair_neighbourhood(bb, d));
        s.intersect_with(h.pair_neighbourhood(c, d));
        if let Some(e) = s.first() {
            let mut k5 = vec![a, bb, c, d, e];
            k5.sort_unstable();
            return Some(k5);
        }
    }
    None
}

fn finish(meter: &Meter, id: LemmaId, hyp: bool, witness: Option<Witness>, holds: bool) -> LemmaReport {
    LemmaReport {
        lemma_id: id,
        hypothesis_met: hyp,
        conclusion_holds: holds,
        witness,
        checked_universe_size: meter.used(),
        budget_exhausted: meter.exhausted(),
    }
}

/// Searches one ordered colour pair for a witness.
type PairSearch<'a> = dyn Fn((u32, u32), &Meter) -> Option<Witness> + 'a;

fn run_spec(pc: &PhiColouring<'_>, spec: &PatternSpec, hyp: bool, opts: &VerifyOptions) -> Vec<LemmaReport> {
    let orders = colour_orders(pc);
    let seq = opts.sequential;
    let search = |f: &PairSearch<'_>| {
        let meter = Meter::new(opts.budget);
        let mut witness = None;
        for &o in &orders {
            witness = f(o, &meter);
            if witness.is_some() || meter.exhausted() {
                break;
            }
        }
        meter.report(spec.id, hyp, witness)
    };
    match &spec.kind {
        PatternKind::BalancedDoubleTetrahedron => {
            vec![search(&|o, m| find_double_tetrahedron(pc, o, m, seq))]
        }
        PatternKind::RedWedge => vec![search(&|o, m| find_red_wedge(pc, o, m, seq))],
        PatternKind::TightWalk { template } => {
            if let Err(e) = spec.validate() {
                panic!("{e}");
            }
            vec![search(&|(r, b), m| {
                let colours: Vec<u32> = template.chars().map(|c| if c == 'r' { r } else { b }).collect();
                find_coloured_walk(pc, &colours, m, seq)
            })]
        }
        PatternKind::SpanningStructure => {
            let spanning = pc.spanning_components();
            let orders: Vec<(u32, u32)> = orders.into_iter().filter(|(r, _)| spanning.contains(r)).collect();

            let m1 = Meter::new(opts.budget);
            let both = orders.iter().find(|&&(_, b)| {
                m1.charge(1);
                spanning.contains(&b)
            });
            let w1 = both.map(|&(r, b)| Witness::default().with_colours([r, b]));
            let r1 = m1.report(LemmaId::BlueNotSpanning, hyp, w1);

            let m2 = Meter::new(opts.budget);
            let mut w2 = None;
            for &o in &orders {
                w2 = find_red_neighbour_outside(pc, o, &m2, seq);
                if w2.is_some() || m2.exhausted() {
                    break;
                }
            }
            let r2 = m2.report(LemmaId::RedNeighbourhoodsMonochrome, hyp, w2);

            // every admissible blue must carry a K5; report the first failure,
            // or in scan mode the last clique found
            let m3 = Meter::new(opts.budget);
            let mut missing = None;
            let mut found = None;
            for &(_, b) in &orders {
                match find_monochrome_five_clique(pc, b, &m3) {
                    Some(k5) => found = Some(Witness::vertices(k5).with_colours([b])),
                    None => {
                        if m3.exhausted() {
                            break;
                        }
                        missing = Some(Witness::default().with_colours([b]));
                        break;
                    }
                }
            }
            let r3 = match missing {
                Some(w) => finish(&m3, LemmaId::BlueFiveClique, hyp, Some(w), false),
                None => {
                    let shown = if opts.mode == Mode::Scan { found } else { None };
                    finish(&m3, LemmaId::BlueFiveClique, hyp, shown, true)
                }
            };
            vec![r1, r2, r3]
        }
    }
}

/// One report for the colour-triangle check and one per catalog id.
pub fn scan_two_colour_patterns(
    pc: &PhiColouring<'_>,
    catalog: &[PatternSpec],
    opts: &VerifyOptions,
) -> Vec<LemmaReport> {
    let hyp = codegree_above_threshold(pc.base()) && pc.component_count() == 2;
    let mut out = vec![check_no_colour_triangle(pc, opts)];
    for spec in catalog {
        if opts.mode == Mode::Assert && !hyp {
            out.extend(spec.ids().into_iter().map(LemmaReport::skipped));
        } else {
            out.extend(run_spec(pc, spec, hyp, opts));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::subsets;
    use crate::generators::{conditioned_sampler, random_tetrahedra};
    use crate::hypergraph::ThreeGraph;
    use crate::tight::phi_colouring;
    use crate::verify::corpus::{arb_colourable, k4_union};
    use proptest::prelude::*;

    fn scan() -> VerifyOptions {
        VerifyOptions {
            mode: Mode::Scan,
            sequential: true,
            ..VerifyOptions::default()
        }
    }

    fn naive_double_tetrahedron(pc: &PhiColouring<'_>, (r, b): (u32, u32)) -> bool {
        let n = pc.base().n();
        for [y1, y2, y3] in subsets::<3>(n) {
            for x in 0..n {
                for z in 0..n {
                    if x == z || [y1, y2, y3].contains(&x) || [y1, y2, y3].contains(&z) {
                        continue;
                    }
                    let cs = [[x, y1, y2], [x, y1, y3], [x, y2, y3], [z, y1, y2], [z, y1, y3], [z, y2, y3]]
                        .map(|[a, bb, c]| pc.phi(a, bb, c));
                    let nr = cs.iter().filter(|&&c| c == Some(r)).count();
                    let nb = cs.iter().filter(|&&c| c == Some(b)).count();
                    if nr == 3 && nb == 3 {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Whole walks over all vertex sequences, each window checked in turn.
    fn naive_walk(pc: &PhiColouring<'_>, colours: &[u32]) -> bool {
        fn go(pc: &PhiColouring<'_>, colours: &[u32], walk: &mut Vec<usize>) -> bool {
            let len = walk.len();
            if len >= 3 && pc.phi(walk[len - 3], walk[len - 2], walk[len - 1]) != Some(colours[len - 3]) {
                return false;
            }
            if len == colours.len() + 2 {
                return true;
            }
            for v in 0..pc.base().n() {
                walk.push(v);
                if go(pc, colours, walk) {
                    return true;
                }
                walk.pop();
            }
            false
        }
        go(pc, colours, &mut Vec::new())
    }

    fn naive_red_wedge(pc: &PhiColouring<'_>, (r, b): (u32, u32)) -> bool {
        let n = pc.base().n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        if pc.phi(x, y, z) == Some(r)
                            && pc.phi(w, y, z) == Some(r)
                            && pc.phi(w, x, y) == Some(b)
                            && pc.phi_vertex(z).as_slice() != [r]
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn naive_red_outside(pc: &PhiColouring<'_>, (r, b): (u32, u32)) -> bool {
        let n = pc.base().n();
        for x in 0..n {
            for y in 0..n {
                let mut want = vec![r, b];
                want.sort();
                if x == y || pc.phi_pair(x, y).as_slice() != want.as_slice() {
                    continue;
                }
                for z in 0..n {
                    if pc.phi(x, y, z) == Some(r) && pc.phi_vertex(z).as_slice() != [r] {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn naive_blue_k5(pc: &PhiColouring<'_>, b: u32) -> bool {
        subsets::<5>(pc.base().n()).any(|q| subsets::<3>(5).all(|[i, j, k]| pc.phi(q[i], q[j], q[k]) == Some(b)))
    }

    fn report(rs: &[LemmaReport], id: LemmaId) -> &LemmaReport {
        rs.iter().find(|r| r.lemma_id == id).unwrap()
    }

    #[test]
    fn single_component_is_vacuous() {
        let k10 = ThreeGraph::complete(10).unwrap();
        let pc = phi_colouring(&k10).unwrap();
        let rs = scan_two_colour_patterns(&pc, &default_catalog(), &VerifyOptions::default());
        assert_eq!(rs.len(), 8);
        assert!(rs.iter().all(|r| !r.hypothesis_met && r.conclusion_holds));
        let dense = conditioned_sampler(18, 15, 9).unwrap();
        let pc = phi_colouring(&dense).unwrap();
        let rs = scan_two_colour_patterns(&pc, &default_catalog(), &VerifyOptions::default());
        assert!(rs.iter().all(|r| !r.hypothesis_met && r.conclusion_holds));
    }

    #[test]
    fn glued_five_cliques() {
        // two K5s on {0..4} and {2..6} share the triangle 234, plus extra
        // edges through it
        let mut b = ThreeGraph::builder(9).unwrap();
        for q in [[0, 1, 2, 3, 4], [2, 3, 4, 5, 6]] {
            for [i, j, k] in subsets::<3>(5) {
                b.insert([q[i], q[j], q[k]]).unwrap();
            }
        }
        for t in [[2, 3, 7], [2, 4, 7], [3, 4, 7], [0, 1, 7], [0, 7, 8], [1, 7, 8], [0, 1, 8]] {
            b.insert(t).unwrap();
        }
        let h: ThreeGraph = crate::generators::tetrahedral_core(&b.build().into());
        let pc = phi_colouring(&h).unwrap();
        let rs = scan_two_colour_patterns(&pc, &default_catalog(), &scan());
        check_against_naive(&pc, &rs);
    }

    fn check_against_naive(pc: &PhiColouring<'_>, rs: &[LemmaReport]) {
        let orders = colour_orders(pc);
        let any = |f: &dyn Fn((u32, u32)) -> bool| orders.iter().any(|&o| f(o));
        assert_eq!(
            !report(rs, LemmaId::NoBalancedDoubleTetrahedron).conclusion_holds,
            any(&|o| naive_double_tetrahedron(pc, o))
        );
        assert_eq!(
            !report(rs, LemmaId::NoAlternatingWalk).conclusion_holds,
            any(&|(r, b)| naive_walk(pc, &[r, b, r, b]))
        );
        assert_eq!(
            !report(rs, LemmaId::NoSkewWalk).conclusion_holds,
            any(&|(r, b)| naive_walk(pc, &[r, b, r, r, b]))
        );
        assert_eq!(
            !report(rs, LemmaId::RedWedgeForcesRed).conclusion_holds,
            any(&|o| naive_red_wedge(pc, o))
        );
        let spanning = pc.spanning_components();
        let admissible: Vec<(u32, u32)> = orders.iter().copied().filter(|(r, _)| spanning.contains(r)).collect();
        assert_eq!(
            !report(rs, LemmaId::BlueNotSpanning).conclusion_holds,
            admissible.iter().any(|(_, b)| spanning.contains(b))
        );
        assert_eq!(
            !report(rs, LemmaId::RedNeighbourhoodsMonochrome).conclusion_holds,
            admissible.iter().any(|&o| naive_red_outside(pc, o))
        );
        assert_eq!(
            report(rs, LemmaId::BlueFiveClique).conclusion_holds,
            admissible.iter().all(|&(_, b)| naive_blue_k5(pc, b))
        );
        for r in rs {
            assert!(!r.budget_exhausted);
            if !r.conclusion_holds {
                assert!(r.witness.is_some());
            }
        }
        // witnesses re-checked directly
        if let Some(w) = &report(rs, LemmaId::NoAlternatingWalk).witness {
            for (i, win) in w.vertices.windows(3).enumerate() {
                assert_eq!(pc.phi(win[0], win[1], win[2]), Some(w.colours[i]));
            }
        }
        if let Some(w) = &report(rs, LemmaId::NoSkewWalk).witness {
            for (i, win) in w.vertices.windows(3).enumerate() {
                assert_eq!(pc.phi(win[0], win[1], win[2]), Some(w.colours[i]));
            }
        }
    }

    #[test]
    fn three_components_meeting_in_pairs() {
        let h = k4_union(9, &[[0, 1, 2, 3], [4, 5, 6, 7], [1, 4, 5, 8]]);
        let pc = phi_colouring(&h).unwrap();
        assert_eq!(pc.component_count(), 3);
        let rs = scan_two_colour_patterns(&pc, &default_catalog(), &scan());
        check_against_naive(&pc, &rs);
    }

    #[test]
    fn each_pattern_has_a_sparse_instance() {
        // found by scanning unions of random tetrahedra with two components
        let cases = [
            (LemmaId::NoBalancedDoubleTetrahedron, (7, 6, 249)),
            (LemmaId::NoAlternatingWalk, (7, 5, 63)),
            (LemmaId::NoSkewWalk, (7, 5, 32)),
            (LemmaId::RedWedgeForcesRed, (7, 5, 32)),
            (LemmaId::BlueNotSpanning, (8, 9, 98)),
            (LemmaId::RedNeighbourhoodsMonochrome, (7, 6, 36)),
            (LemmaId::BlueFiveClique, (6, 4, 8)),
        ];
        for (id, (n, k, seed)) in cases {
            let h = random_tetrahedra(n, k, seed).unwrap();
            let pc = phi_colouring(&h).unwrap();
            assert_eq!(pc.component_count(), 2);
            let rs = scan_two_colour_patterns(&pc, &default_catalog(), &scan());
            let r = report(&rs, id);
            assert!(!r.conclusion_holds && !r.hypothesis_met, "{id}: {r:?}");
            check_against_naive(&pc, &rs);
            let skipped = scan_two_colour_patterns(&pc, &default_catalog(), &VerifyOptions::default());
            assert!(skipped.iter().all(|r| r.conclusion_holds && r.witness.is_none()));
        }
    }

    #[test]
    fn walk_template_validation() {
        let bad = PatternSpec {
            id: LemmaId::NoAlternatingWalk,
            kind: PatternKind::TightWalk { template: "rxb".into() },
        };
        assert!(bad.validate().is_err());
        let json = serde_json::to_string(&default_catalog()[1]).unwrap();
        assert_eq!(json, r#"{"id":"LEM_3_14","kind":"tight_walk","template":"rbrb"}"#);
        let back: PatternSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, default_catalog()[1]);
    }

    #[test]
    fn budget_is_reported() {
        let h = k4_union(9, &[[0, 1, 2, 3], [4, 5, 6, 7], [1, 4, 5, 8], [2, 3, 4, 5]]);
        let pc = phi_colouring(&h).unwrap();
        let opts = VerifyOptions {
            budget: 2,
            ..scan()
        };
        let rs = scan_two_colour_patterns(&pc, &default_catalog(), &opts);
        assert!(rs.iter().any(|r| r.budget_exhausted));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn scanners_match_naive(h in arb_colourable(7)) {
            let pc = phi_colouring(&h).unwrap();
            let rs = scan_two_colour_patterns(&pc, &default_catalog(), &scan());
            check_against_naive(&pc, &rs);
        }
    }
}
