//! Checks on the colour sets seen by edges, pairs and vertices.

use std::collections::BTreeMap;

use super::{codegree_above_threshold, first_over, LemmaId, LemmaReport, Meter, Mode, VerifyOptions, Witness};
use crate::bitset::VertexSet;
use crate::tight::PhiColouring;

/// `N_T(xy)`: the vertices `w` with `xyw` an edge of colour `t`.
pub(crate) fn coloured_neighbourhood(pc: &PhiColouring<'_>, x: usize, y: usize, t: u32) -> VertexSet {
    let h = pc.base();
    let mut out = VertexSet::empty(h.n());
    for w in h.pair_neighbourhood(x, y).iter() {
        if pc.phi(x, y, w) == Some(t) {
            out.insert(w);
        }
    }
    out
}

fn run_if(opts: &VerifyOptions, id: LemmaId, hyp: bool) -> Option<LemmaReport> {
    (opts.mode == Mode::Assert && !hyp).then(|| LemmaReport::skipped(id))
}

/// Two edges through a pair with different colours have no vertex adjacent to
/// all five pairs of their shadows.
pub fn check_adjacent_edges_share_colour(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::AdjacentEdgesShareColour;
    let h = pc.base();
    let n = h.n();
    let meter = Meter::new(opts.budget);
    let witness = first_over(n, opts.sequential, |u| {
        for v in u + 1..n {
            if pc.phi_pair(u, v).len() < 2 {
                meter.charge(1);
                continue;
            }
            let nb = h.pair_neighbourhood(u, v);
            let ws: Vec<usize> = nb.iter().collect();
            for (i, &w) in ws.iter().enumerate() {
                let cw = pc.phi(u, v, w).expect("edge");
                let base = nb.intersection(h.pair_neighbourhood(u, w));
                let base = base.intersection(h.pair_neighbourhood(v, w));
                for &w2 in &ws[i + 1..] {
                    let cw2 = pc.phi(u, v, w2).expect("edge");
                    if cw == cw2 {
                        continue;
                    }
                    if !meter.charge(1) {
                        return None;
                    }
                    let mut common = base.intersection(h.pair_neighbourhood(u, w2));
                    common.intersect_with(h.pair_neighbourhood(v, w2));
                    if let Some(x) = common.first() {
                        return Some(Witness::vertices([u, v, w, w2, x]).with_colours([cw, cw2]));
                    }
                }
            }
        }
        None
    });
    meter.report(id, true, witness)
}

/// Every two vertices share a colour once all codegrees are positive.
pub fn check_intersecting_vertex_colours(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::IntersectingVertexColours;
    let h = pc.base();
    let hyp = h.n() >= 2 && h.min_codegree().unwrap_or(0) > 0;
    if let Some(r) = run_if(opts, id, hyp) {
        return r;
    }
    let n = h.n();
    let meter = Meter::new(opts.budget);
    let witness = first_over(n, opts.sequential, |u| {
        for v in u + 1..n {
            if !meter.charge(1) {
                return None;
            }
            if !pc.phi_vertex(u).intersects(pc.phi_vertex(v)) {
                return Some(Witness::vertices([u, v]));
            }
        }
        None
    });
    meter.report(id, hyp, witness)
}

/// `3·δ₂ − 2n − 3`, which may be negative.
pub(crate) fn extension_bound(pc: &PhiColouring<'_>) -> i64 {
    let h = pc.base();
    3 * h.min_codegree().unwrap_or(0) as i64 - 2 * h.n() as i64 - 3
}

/// Every edge extends to at least `3·δ₂ − 2n − 3` copies of K4, and every pair
/// sees each of its colours at least that often, inside a component covering
/// at least that many vertices.
pub fn check_edge_extension_bound(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::EdgeExtensionBound;
    let h = pc.base();
    let n = h.n();
    let bound = extension_bound(pc);
    let mut cover = vec![0i64; pc.component_count()];
    for v in 0..n {
        for c in pc.phi_vertex(v).iter() {
            cover[c as usize] += 1;
        }
    }
    let meter = Meter::new(opts.budget);
    let witness = first_over(n, opts.sequential, |a| {
        for b in a + 1..n {
            for c in h.pair_neighbourhood(a, b).iter().filter(|&c| c > b) {
                if !meter.charge(1) {
                    return None;
                }
                if (h.common_extension(a, b, c).len() as i64) < bound {
                    return Some(Witness::vertices([a, b, c]));
                }
            }
            for t in pc.phi_pair(a, b).iter() {
                if !meter.charge(1) {
                    return None;
                }
                let deg = coloured_neighbourhood(pc, a, b, t).len() as i64;
                if deg < bound || cover[t as usize] < deg {
                    return Some(Witness::vertices([a, b]).with_colours([t]));
                }
            }
        }
        None
    });
    meter.report(id, true, witness)
}

/// With two or more components some pair sees two colours, and every edge
/// `xyz` of colour `T₁` with `T₂ ∈ φ(xy)` has a vertex `w` with `wxy` of
/// colour `T₂` and `wyz` an edge.
pub fn check_split_pair_exists(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::SplitPairExists;
    let h = pc.base();
    let n = h.n();
    let hyp = codegree_above_threshold(h) && pc.component_count() >= 2;
    if let Some(r) = run_if(opts, id, hyp) {
        return r;
    }
    let meter = Meter::new(opts.budget);
    if pc.component_count() >= 2 {
        let mut split = false;
        for (u, v) in h.pairs() {
            if !meter.charge(1) {
                return meter.report(id, hyp, None);
            }
            if pc.phi_pair(u, v).len() >= 2 {
                split = true;
                break;
            }
        }
        if !split {
            let ids: Vec<u32> = (0..pc.component_count() as u32).collect();
            return meter.report(id, hyp, Some(Witness::default().with_colours(ids)));
        }
    }
    let witness = first_over(n, opts.sequential, |x| {
        for y in x + 1..n {
            let cols = pc.phi_pair(x, y);
            let by_colour: Vec<(u32, VertexSet)> = cols
                .iter()
                .map(|t| (t, coloured_neighbourhood(pc, x, y, t)))
                .collect();
            for (t1, n1) in &by_colour {
                for (t2, n2) in &by_colour {
                    for z in n1.iter() {
                        // both orientations of the pair: wxy, wyz and wyx, wxz
                        for (p, q) in [(x, y), (y, x)] {
                            if !meter.charge(1) {
                                return None;
                            }
                            if n2.is_disjoint(h.pair_neighbourhood(q, z)) {
                                return Some(Witness::vertices([p, q, z]).with_colours([*t1, *t2]));
                            }
                        }
                    }
                }
            }
        }
        None
    });
    meter.report(id, hyp, witness)
}

/// No vertex lies in three or more components.
pub fn check_vertex_colour_bound(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::VertexColourBound;
    let hyp = codegree_above_threshold(pc.base());
    if let Some(r) = run_if(opts, id, hyp) {
        return r;
    }
    let meter = Meter::new(opts.budget);
    let witness = (0..pc.base().n()).find_map(|v| {
        if !meter.charge(1) {
            return None;
        }
        let s = pc.phi_vertex(v);
        (s.len() > 2).then(|| Witness::vertices([v]).with_colours(s.as_slice()))
    });
    meter.report(id, hyp, witness)
}

/// No three vertices whose colour sets are the three 2-subsets of three
/// components.
pub fn check_no_colour_triangle(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::NoColourTriangle;
    let hyp = codegree_above_threshold(pc.base()) && pc.component_count() >= 3;
    if let Some(r) = run_if(opts, id, hyp) {
        return r;
    }
    let meter = Meter::new(opts.budget);
    let mut seen: BTreeMap<[u32; 2], usize> = BTreeMap::new();
    for v in 0..pc.base().n() {
        if let [a, b] = pc.phi_vertex(v).as_slice() {
            seen.entry([*a, *b]).or_insert(v);
        }
    }
    let mut witness = None;
    'search: for (&[a, b], &vc) in &seen {
        for (&[a2, c], &vb) in seen.range([a, b + 1]..[a + 1, 0]) {
            debug_assert_eq!(a2, a);
            if !meter.charge(1) {
                break 'search;
            }
            if let Some(&va) = seen.get(&[b, c]) {
                witness = Some(Witness::vertices([va, vb, vc]).with_colours([a, b, c]));
                break 'search;
            }
        }
    }
    meter.report(id, hyp, witness)
}

fn count_report(pc: &PhiColouring<'_>, opts: &VerifyOptions, id: LemmaId, max: usize) -> LemmaReport {
    let hyp = codegree_above_threshold(pc.base());
    if let Some(r) = run_if(opts, id, hyp) {
        return r;
    }
    let meter = Meter::new(opts.budget);
    meter.charge(1);
    let count = pc.component_count();
    let witness = (count > max).then(|| Witness::default().with_colours((0..count as u32).collect::<Vec<_>>()));
    meter.report(id, hyp, witness)
}

/// At most two components.
pub fn check_component_bound(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    count_report(pc, opts, LemmaId::ComponentBound, 2)
}

/// Exactly one component.
pub fn check_connected(pc: &PhiColouring<'_>, opts: &VerifyOptions) -> LemmaReport {
    let mut r = count_report(pc, opts, LemmaId::TetrahedralConnected, 1);
    if r.checked_universe_size > 0 && pc.component_count() == 0 {
        r.conclusion_holds = false;
        r.witness = Some(Witness::default());
    }
    r
}
