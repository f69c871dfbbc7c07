//! Pair partitions of `{1, ..., k}` and the index sets `A_{k,r}` of
//! non-adjacent level tuples, plus the correspondence between adjacent-pair
//! partitions and those tuples.

use crate::error::{Error, Result};

/// A partition of `{1, ..., k}` into `r` unordered pairs and `k - 2r` free
/// indices. Canonical form: each pair stored `(small, large)`, pairs sorted
/// by smaller element, free indices ascending. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairPartition {
    pub k: usize,
    pub pairs: Vec<(usize, usize)>,
    pub free: Vec<usize>,
}

impl PairPartition {
    pub fn new(k: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("order k must be at least 1".into()));
        }
        let mut seen = vec![false; k + 1];
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b || a < 1 || b < 1 || a > k || b > k {
                return Err(Error::Domain(format!(
                    "invalid pair ({a}, {b}) for k = {k}"
                )));
            }
            if seen[a] || seen[b] {
                return Err(Error::Domain(format!(
                    "index repeated across pairs in ({a}, {b})"
                )));
            }
            seen[a] = true;
            seen[b] = true;
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        let free = (1..=k).filter(|i| !seen[*i]).collect();
        Ok(Self {
            k,
            pairs: canon,
            free,
        })
    }

    /// The empty partition (r = 0): every index is free.
    pub fn identity(k: usize) -> Result<Self> {
        Self::new(k, &[])
    }

    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    /// Number of free indices, `k - 2r`.
    pub fn free_order(&self) -> usize {
        self.free.len()
    }

    pub fn is_adjacent(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| b == a + 1)
    }
}

/// A tuple `(s_r, ..., s_1)` with `s_l` in `{1, ..., k-1}` and
/// `s_l > s_{l-1} + 1` (strict non-adjacency). Stored largest-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SRTuple {
    pub values: Vec<usize>,
}

/// All partitions of `{1, ..., k}` into `r` unordered pairs plus free
/// indices, in lexicographic order of the canonical pair list.
pub fn enum_pair_partitions(k: usize, r: usize) -> Result<Vec<PairPartition>> {
    if k == 0 || 2 * r > k {
        return Err(Error::Domain(format!(
            "need 0 <= 2r <= k, got k = {k}, r = {r}"
        )));
    }
    let mut out = Vec::new();
    let mut pairs = Vec::with_capacity(r);
    let mut used = vec![false; k + 1];
    build_pairings(k, r, 1, &mut used, &mut pairs, &mut out);
    out.sort_by(|a, b| a.pairs.cmp(&b.pairs));
    Ok(out)
}

fn build_pairings(
    k: usize,
    r: usize,
    start: usize,
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    out: &mut Vec<PairPartition>,
) {
    if pairs.len() == r {
        out.push(PairPartition::new(k, pairs).expect("constructed pairs are valid"));
        return;
    }
    // Decide the fate of the smallest undecided index: it either stays free
    // or pairs with a larger unused index. This generates each partition
    // exactly once.
    let a = match (start..=k).find(|i| !used[*i]) {
        Some(a) => a,
        None => return,
    };
    build_pairings(k, r, a + 1, used, pairs, out);
    used[a] = true;
    for b in a + 1..=k {
        if used[b] {
            continue;
        }
        used[b] = true;
        pairs.push((a, b));
        build_pairings(k, r, a + 1, used, pairs, out);
        pairs.pop();
        used[b] = false;
    }
    used[a] = false;
}

/// All tuples in `A_{k,r}`.
pub fn enum_A(k: usize, r: usize) -> Result<Vec<SRTuple>> {
    if k < 2 || r < 1 || 2 * r > k {
        return Err(Error::Domain(format!(
            "need 1 <= r <= k/2 with k >= 2, got k = {k}, r = {r}"
        )));
    }
    let mut out = Vec::new();
    let mut ascending = Vec::with_capacity(r);
    build_sr(k, r, 1, &mut ascending, &mut out);
    Ok(out)
}

fn build_sr(k: usize, r: usize, min: usize, ascending: &mut Vec<usize>, out: &mut Vec<SRTuple>) {
    if ascending.len() == r {
        let mut values = ascending.clone();
        values.reverse();
        out.push(SRTuple { values });
        return;
    }
    for s in min..k {
        ascending.push(s);
        build_sr(k, r, s + 2, ascending, out);
        ascending.pop();
    }
}

/// Maps a fully adjacent partition (every pair `{g, g+1}`) to its `A_{k,r}`
/// tuple `s_i = g_{2i-1}`; returns `None` for any non-adjacent pair.
pub fn adjacent_to_sr(partition: &PairPartition) -> Option<SRTuple> {
    if !partition.is_adjacent() {
        return None;
    }
    let mut values: Vec<usize> = partition.pairs.iter().map(|&(a, _)| a).collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    Some(SRTuple { values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product::<usize>().max(1)
    }

    #[test]
    fn partition_counts_match_closed_form() {
        for k in 1..=10 {
            for r in 0..=k / 2 {
                let count = enum_pair_partitions(k, r).unwrap().len();
                let expect = factorial(k) / ((1 << r) * factorial(r) * factorial(k - 2 * r));
                assert_eq!(count, expect, "k = {k}, r = {r}");
            }
        }
    }

    #[test]
    fn k4_r2_partitions() {
        let parts = enum_pair_partitions(4, 2).unwrap();
        let pairs: Vec<_> = parts.iter().map(|p| p.pairs.clone()).collect();
        assert_eq!(
            pairs,
            vec![
                vec![(1, 2), (3, 4)],
                vec![(1, 3), (2, 4)],
                vec![(1, 4), (2, 3)],
            ]
        );
        for p in &parts {
            assert!(p.free.is_empty());
        }
    }

    #[test]
    fn k4_r1_has_six_partitions() {
        assert_eq!(enum_pair_partitions(4, 1).unwrap().len(), 6);
    }

    #[test]
    fn rejects_overfull_pairing() {
        assert!(enum_pair_partitions(3, 2).is_err());
        assert!(PairPartition::new(4, &[(1, 2), (2, 3)]).is_err());
        assert!(PairPartition::new(4, &[(1, 1)]).is_err());
        assert!(PairPartition::new(4, &[(0, 2)]).is_err());
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let p = PairPartition::new(5, &[(4, 3), (2, 1)]).unwrap();
        assert_eq!(p.pairs, vec![(1, 2), (3, 4)]);
        assert_eq!(p.free, vec![5]);
        let again = PairPartition::new(p.k, &p.pairs).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn enum_a_small_cases() {
        let a21: Vec<_> = enum_A(2, 1).unwrap();
        assert_eq!(a21, vec![SRTuple { values: vec![1] }]);
        let a31: Vec<_> = enum_A(3, 1).unwrap();
        assert_eq!(
            a31,
            vec![SRTuple { values: vec![1] }, SRTuple { values: vec![2] }]
        );
        let a42 = enum_A(4, 2).unwrap();
        assert_eq!(a42, vec![SRTuple { values: vec![3, 1] }]);
        assert!(enum_A(4, 3).is_err());
        assert!(enum_A(2, 0).is_err());
    }

    #[test]
    fn enum_a_matches_exhaustive_filter() {
        for k in 2..=8 {
            for r in 1..=k / 2 {
                let fast: std::collections::HashSet<_> =
                    enum_A(k, r).unwrap().into_iter().collect();
                // Exhaustive search over all r-subsets of {1, ..., k-1}.
                let mut slow = std::collections::HashSet::new();
                let total = 1usize << (k - 1);
                for mask in 0..total {
                    let chosen: Vec<usize> =
                        (1..k).filter(|s| mask & (1 << (s - 1)) != 0).collect();
                    if chosen.len() != r {
                        continue;
                    }
                    if chosen.windows(2).all(|w| w[1] > w[0] + 1) {
                        let mut values = chosen.clone();
                        values.reverse();
                        slow.insert(SRTuple { values });
                    }
                }
                assert_eq!(fast, slow, "k = {k}, r = {r}");
            }
        }
    }

    #[test]
    fn adjacent_correspondence() {
        let p = PairPartition::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(adjacent_to_sr(&p), Some(SRTuple { values: vec![3, 1] }));
        let q = PairPartition::new(4, &[(1, 3), (2, 4)]).unwrap();
        assert_eq!(adjacent_to_sr(&q), None);
        let s = PairPartition::new(2, &[(1, 2)]).unwrap();
        assert_eq!(adjacent_to_sr(&s), Some(SRTuple { values: vec![1] }));
    }

    #[test]
    fn adjacent_bijection_with_a_sets() {
        for k in 2..=8 {
            for r in 1..=k / 2 {
                let image: std::collections::HashSet<_> = enum_pair_partitions(k, r)
                    .unwrap()
                    .iter()
                    .filter_map(adjacent_to_sr)
                    .collect();
                let a: std::collections::HashSet<_> = enum_A(k, r).unwrap().into_iter().collect();
                assert_eq!(image, a, "k = {k}, r = {r}");
            }
        }
    }
}
