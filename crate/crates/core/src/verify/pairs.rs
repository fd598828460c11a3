//! Common neighbours of all but one pair in a small pair family.

use rand::seq::index::sample;
use serde::Serialize;

use super::{codegree_above_threshold, LemmaId, LemmaReport, Meter, Mode, VerifyOptions, Witness};
use crate::bitset::VertexSet;
use crate::combinatorics::unrank;
use crate::error::{Error, Result};
use crate::generators::stream_rng;
use crate::hypergraph::ThreeGraph;

/// The pair left out and a vertex completing every other pair to an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CommonNeighbour {
    pub dropped: [usize; 2],
    pub vertex: usize,
}

fn validate(h: &ThreeGraph, pairs: &[[usize; 2]], max: usize) -> Result<()> {
    if pairs.len() > max {
        return Err(Error::TooManyPairs {
            given: pairs.len(),
            max,
        });
    }
    let n = h.n();
    let mut seen = Vec::with_capacity(pairs.len());
    for &[u, v] in pairs {
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::RepeatedVertex(vec![u, v]));
        }
        let key = [u.min(v), u.max(v)];
        if seen.contains(&key) {
            return Err(Error::InvalidParameter(format!("pair {key:?} listed twice")));
        }
        seen.push(key);
    }
    Ok(())
}

fn common_without(h: &ThreeGraph, pairs: &[[usize; 2]], skip: usize) -> VertexSet {
    let mut acc = VertexSet::full(h.n());
    for (i, &[u, v]) in pairs.iter().enumerate() {
        if i != skip {
            acc.intersect_with(h.pair_neighbourhood(u, v));
        }
    }
    acc
}

/// Some pair `P'` of at most nine and a vertex in `N(P)` for every other `P`.
pub fn check_common_neighbour_9(h: &ThreeGraph, pairs: &[[usize; 2]]) -> Result<Option<CommonNeighbour>> {
    validate(h, pairs, 9)?;
    Ok((0..pairs.len()).find_map(|i| {
        common_without(h, pairs, i).first().map(|x| CommonNeighbour {
            dropped: pairs[i],
            vertex: x,
        })
    }))
}

/// As [`check_common_neighbour_9`] for at most eight pairs, never dropping
/// `pairs[fixed]`.
pub fn check_common_neighbour_fixed(
    h: &ThreeGraph,
    pairs: &[[usize; 2]],
    fixed: usize,
) -> Result<Option<CommonNeighbour>> {
    validate(h, pairs, 8)?;
    if fixed >= pairs.len() {
        return Err(Error::InvalidParameter(format!(
            "fixed index {fixed} outside a family of {}",
            pairs.len()
        )));
    }
    Ok((0..pairs.len()).filter(|&i| i != fixed).find_map(|i| {
        common_without(h, pairs, i).first().map(|x| CommonNeighbour {
            dropped: pairs[i],
            vertex: x,
        })
    }))
}

/// The `k` pairs of smallest codegree, ties broken by rank.
pub fn adversarial_family(h: &ThreeGraph, k: usize) -> Vec<[usize; 2]> {
    let mut all: Vec<(usize, [usize; 2])> = h.pairs().map(|(u, v)| (h.codegree(u, v), [u, v])).collect();
    all.sort_unstable();
    all.into_iter().take(k).map(|(_, p)| p).collect()
}

fn families(h: &ThreeGraph, size: usize, opts: &VerifyOptions, stream: u64) -> Vec<Vec<[usize; 2]>> {
    let total = h.n() * h.n().saturating_sub(1) / 2;
    let size = size.min(total);
    let mut out = vec![adversarial_family(h, size)];
    let mut rng = stream_rng(opts.seed, stream);
    for _ in 0..opts.pair_families {
        let picks = sample(&mut rng, total, size);
        out.push(
            picks
                .into_iter()
                .map(|r| unrank::<2>(r as u64))
                .collect(),
        );
    }
    out
}

/// Nine-pair families: the adversarial one plus `opts.pair_families` random ones.
pub fn check_nine_pair_families(h: &ThreeGraph, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::NinePairCommonNeighbour;
    let hyp = codegree_above_threshold(h);
    if opts.mode == Mode::Assert && !hyp {
        return LemmaReport::skipped(id);
    }
    let meter = Meter::new(opts.budget);
    let mut witness = None;
    for fam in families(h, 9, opts, 9) {
        if !meter.charge(1) {
            break;
        }
        if check_common_neighbour_9(h, &fam).expect("valid family").is_none() {
            witness = Some(Witness::default().with_pairs(fam));
            break;
        }
    }
    meter.report(id, hyp, witness)
}

/// Eight-pair families, each tried with every member as the fixed pair.
pub fn check_eight_pair_families(h: &ThreeGraph, opts: &VerifyOptions) -> LemmaReport {
    let id = LemmaId::EightPairFixedCommonNeighbour;
    let hyp = codegree_above_threshold(h);
    if opts.mode == Mode::Assert && !hyp {
        return LemmaReport::skipped(id);
    }
    let meter = Meter::new(opts.budget);
    let mut witness = None;
    'outer: for fam in families(h, 8, opts, 8) {
        for fixed in 0..fam.len() {
            if !meter.charge(1) {
                break 'outer;
            }
            if check_common_neighbour_fixed(h, &fam, fixed)
                .expect("valid family")
                .is_none()
            {
                let mut pairs = fam.clone();
                pairs.swap(0, fixed);
                witness = Some(Witness::default().with_pairs(pairs));
                break 'outer;
            }
        }
    }
    meter.report(id, hyp, witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{conditioned_sampler, extremal_construction};
    use proptest::prelude::*;

    /// Every `(P', x)` satisfying the condition, by direct membership tests.
    fn brute(h: &ThreeGraph, pairs: &[[usize; 2]], fixed: Option<usize>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..pairs.len() {
            if Some(i) == fixed {
                continue;
            }
            for x in 0..h.n() {
                let ok = pairs
                    .iter()
                    .enumerate()
                    .all(|(j, &[u, v])| j == i || (x != u && x != v && h.has_edge(u, v, x)));
                if ok {
                    out.push((i, x));
                }
            }
        }
        out
    }

    fn pairs_of(v: &[(usize, usize)]) -> Vec<[usize; 2]> {
        v.iter().map(|&(a, b)| [a, b]).collect()
    }

    #[test]
    fn complete_and_empty() {
        let k20 = ThreeGraph::complete(20).unwrap();
        let fam = pairs_of(&[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15), (16, 17)]);
        let hit = check_common_neighbour_9(&k20, &fam).unwrap().unwrap();
        assert!(!fam.iter().filter(|&&p| p != hit.dropped).any(|p| p.contains(&hit.vertex)));
        assert!(check_common_neighbour_fixed(&k20, &fam[..8], 3).unwrap().is_some());
        let e = ThreeGraph::empty(20).unwrap();
        assert_eq!(check_common_neighbour_9(&e, &fam).unwrap(), None);
        assert_eq!(check_common_neighbour_fixed(&e, &fam[..8], 0).unwrap(), None);
    }

    #[test]
    fn family_validation() {
        let k20 = ThreeGraph::complete(20).unwrap();
        let ten: Vec<[usize; 2]> = (0..10).map(|i| [i, i + 10]).collect();
        assert!(matches!(
            check_common_neighbour_9(&k20, &ten),
            Err(Error::TooManyPairs { given: 10, max: 9 })
        ));
        assert!(check_common_neighbour_fixed(&k20, &ten[..9], 0).is_err());
        assert!(check_common_neighbour_9(&k20, &[[1, 2], [2, 1]]).is_err());
        assert!(check_common_neighbour_9(&k20, &[[1, 1]]).is_err());
        assert!(check_common_neighbour_fixed(&k20, &[[1, 2]], 1).is_err());
    }

    #[test]
    fn adversarial_family_on_construction_matches_brute_force() {
        let (h, _) = extremal_construction(36).unwrap();
        assert!(!codegree_above_threshold(&h));
        let fam = adversarial_family(&h, 9);
        let got = check_common_neighbour_9(&h, &fam).unwrap();
        let all = brute(&h, &fam, None);
        assert_eq!(got.map(|c| (fam.iter().position(|&p| p == c.dropped).unwrap(), c.vertex)), all.first().copied());
    }

    #[test]
    fn dense_eight_pair_families_always_succeed() {
        let h = conditioned_sampler(27, 22, 5).unwrap();
        assert!(codegree_above_threshold(&h));
        let opts = VerifyOptions {
            pair_families: 1000,
            seed: 11,
            ..VerifyOptions::default()
        };
        let r = check_eight_pair_families(&h, &opts);
        assert!(r.hypothesis_met && r.conclusion_holds, "{r:?}");
        assert_eq!(r.checked_universe_size, 1001 * 8);
        let r9 = check_nine_pair_families(&h, &opts);
        assert!(r9.hypothesis_met && r9.conclusion_holds);
    }

    #[test]
    fn assert_mode_skips_sparse_graphs() {
        let (h, _) = extremal_construction(16).unwrap();
        let r = check_nine_pair_families(&h, &VerifyOptions::default());
        assert!(!r.hypothesis_met && r.conclusion_holds && r.checked_universe_size == 0);
        let scan = VerifyOptions {
            mode: Mode::Scan,
            ..VerifyOptions::default()
        };
        assert!(check_nine_pair_families(&h, &scan).checked_universe_size > 0);
    }

    proptest! {
        #[test]
        fn checker_agrees_with_brute_force(
            n in 6usize..10,
            p in 0.3f64..0.95,
            seed in any::<u64>(),
            k in 1usize..=9,
            fam_seed in any::<u64>(),
        ) {
            let h = crate::generators::random_threegraph(n, p, seed).unwrap();
            let total = n * (n - 1) / 2;
            let mut rng = stream_rng(fam_seed, 0);
            let fam: Vec<[usize; 2]> = sample(&mut rng, total, k).into_iter().map(|r| unrank::<2>(r as u64)).collect();
            let got = check_common_neighbour_9(&h, &fam).unwrap();
            let all = brute(&h, &fam, None);
            prop_assert_eq!(got.is_some(), !all.is_empty());
            if let Some(c) = got {
                let i = fam.iter().position(|&q| q == c.dropped).unwrap();
                prop_assert!(all.contains(&(i, c.vertex)));
            }
            if k <= 8 {
                let fixed = (fam_seed % k as u64) as usize;
                let got = check_common_neighbour_fixed(&h, &fam, fixed).unwrap();
                let all = brute(&h, &fam, Some(fixed));
                prop_assert_eq!(got.is_some(), !all.is_empty());
                if let Some(c) = got {
                    let i = fam.iter().position(|&q| q == c.dropped).unwrap();
                    prop_assert!(i != fixed && all.contains(&(i, c.vertex)));
                }
            }
        }
    }
}
