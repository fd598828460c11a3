//! Colexicographic ranking of small sorted subsets.
//!
//! A sorted `k`-subset `a_0 < a_1 < ... < a_{k-1}` of `{0, .., n-1}` has colex
//! rank `sum_i C(a_i, i + 1)`. The rank of a subset does not depend on `n`, so
//! an edge keeps its rank when vertices are appended to a graph.

/// `C(m, k)` for `k <= 4`, exact in `u64` for every `m` we accept.
#[inline]
pub fn binomial(m: u64, k: usize) -> u64 {
    match k {
        0 => 1,
        1 => m,
        2 => {
            if m < 2 {
                0
            } else {
                m * (m - 1) / 2
            }
        }
        3 => {
            if m < 3 {
                0
            } else {
                m * (m - 1) * (m - 2) / 6
            }
        }
        4 => {
            if m < 4 {
                0
            } else {
                m * (m - 1) * (m - 2) * (m - 3) / 24
            }
        }
        _ => general_binomial(m, k),
    }
}

fn general_binomial(m: u64, k: usize) -> u64 {
    let k = k as u64;
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

/// Colex rank of a strictly increasing `K`-tuple.
#[inline]
pub fn rank<const K: usize>(sorted: &[usize; K]) -> u64 {
    debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "unsorted {sorted:?}");
    let mut r = 0;
    for (i, &v) in sorted.iter().enumerate() {
        r += binomial(v as u64, i + 1);
    }
    r
}

/// [`rank`] for a strictly increasing slice of any length.
#[inline]
pub fn rank_slice(sorted: &[usize]) -> u64 {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i + 1))
        .sum()
}

/// Inverse of [`rank`].
pub fn unrank<const K: usize>(mut r: u64) -> [usize; K] {
    let mut out = [0usize; K];
    for slot in (0..K).rev() {
        let k = slot + 1;
        // Largest v with C(v, k) <= r. v >= slot because C(slot, k) = 0.
        let mut lo = slot as u64;
        let mut hi = lo + 1;
        while binomial(hi, k) <= r {
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial(mid, k) <= r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[slot] = lo as usize;
        r -= binomial(lo, k);
    }
    out
}

/// Sorts a `K`-tuple in place and reports whether its entries are distinct.
#[inline]
pub fn sort_distinct<const K: usize>(mut t: [usize; K]) -> Option<[usize; K]> {
    t.sort_unstable();
    if t.windows(2).all(|w| w[0] < w[1]) {
        Some(t)
    } else {
        None
    }
}

/// Iterates every sorted `K`-subset of `{0, .., n-1}` in colex order.
pub fn subsets<const K: usize>(n: usize) -> impl Iterator<Item = [usize; K]> {
    let total = binomial(n as u64, K);
    (0..total).map(unrank::<K>)
}
