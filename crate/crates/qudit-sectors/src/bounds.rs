//! Sector-length bounds for `(n_1,…,n_k)`-separable states.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{binomial, RingDim};

/// Largest `n` accepted by [`enumerate_partitions`].
pub const PARTITION_GUARD: usize = 30;

/// Parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Invalid(format!("bad partition {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// `(j, 1, …, 1)` with `n - j` ones.
    pub fn head_and_ones(j: usize, n: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::Invalid(format!("need 1 <= j <= n, got j={j}, n={n}")));
        }
        let mut parts = vec![j];
        parts.extend(std::iter::repeat_n(1, n - j));
        Ok(Partition(parts))
    }

    pub fn fully_separable(n: usize) -> Result<Self> {
        Self::head_and_ones(1, n)
    }

    /// `(n-1, 1)`.
    pub fn semiseparable(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("semiseparability needs n >= 2, got {n}")));
        }
        Ok(Partition(vec![n - 1, 1]))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Label such as `2+1+1`.
    pub fn label(&self) -> String {
        self.0.iter().map(usize::to_string).collect::<Vec<_>>().join("+")
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// All partitions of `n`, from `(n)` down to `(1,…,1)` in reverse lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 || n > PARTITION_GUARD {
        return Err(Error::Guard { size: n as u128, limit: PARTITION_GUARD as u128 });
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    Generic,
    /// Uses the sharp qubit value `2^{m-1} + [m even]` for each block's full-body entry.
    QubitTight,
}

impl BoundMode {
    pub fn name(self) -> &'static str {
        match self {
            BoundMode::Generic => "generic",
            BoundMode::QubitTight => "qubit_tight",
        }
    }
}

/// `b_0..b_n` for one partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparabilityBound {
    pub d: RingDim,
    pub partition: Partition,
    pub values: Vec<u128>,
    pub mode: BoundMode,
}

impl SeparabilityBound {
    pub fn get(&self, j: usize) -> u128 {
        self.values[j]
    }
}

fn block(d: RingDim, m: usize, mode: BoundMode) -> Vec<u128> {
    let full = (d.get() as u128).pow(m as u32) - 1;
    let mut b = vec![full; m + 1];
    b[0] = 1;
    if mode == BoundMode::QubitTight {
        b[m] = (1u128 << (m - 1)) + u128::from(m.is_multiple_of(2));
    }
    b
}

fn convolve(a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `b_j^P = Σ_{j_1+…+j_k = j} Π_i b_{j_i}^{(n_i)}`.
pub fn bound(d: RingDim, p: &Partition, mode: BoundMode) -> Result<SeparabilityBound> {
    if mode == BoundMode::QubitTight && d.get() != 2 {
        return Err(Error::Invalid(format!("qubit-tight bounds need D=2, got D={d}")));
    }
    let values = p.parts().iter().fold(vec![1u128], |acc, &m| convolve(&acc, &block(d, m, mode)));
    Ok(SeparabilityBound { d, partition: p.clone(), values, mode })
}

/// Partitions obtained from `p` by merging parts, including `p` itself.
pub fn coarsenings(p: &Partition) -> Vec<Partition> {
    let mut seen = std::collections::BTreeSet::from([p.clone()]);
    let mut stack = vec![p.clone()];
    while let Some(q) = stack.pop() {
        let parts = q.parts();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let mut merged: Vec<usize> = parts.to_vec();
                merged[i] += merged[j];
                merged.remove(j);
                let next = Partition::new(merged).expect("merging keeps parts positive");
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter().rev().collect()
}

/// Entrywise minimum of [`bound`] over all coarsenings of `p`. A
/// `p`-separable state is separable for every coarsening, so this is still a
/// valid bound and it is monotone under refinement.
pub fn tightened_bound(d: RingDim, p: &Partition, mode: BoundMode) -> Result<SeparabilityBound> {
    let mut best = bound(d, p, mode)?;
    for q in coarsenings(p) {
        let b = bound(d, &q, mode)?;
        best.values.iter_mut().zip(&b.values).for_each(|(x, &y)| *x = (*x).min(y));
    }
    Ok(best)
}

/// Every partition of `n`, in the order of [`enumerate_partitions`].
pub fn all_bounds(d: RingDim, n: usize, mode: BoundMode) -> Result<Vec<SeparabilityBound>> {
    enumerate_partitions(n)?.iter().map(|p| bound(d, p, mode)).collect()
}

/// `C(n,j) (D-1)^j`.
pub fn fully_separable_bound(d: RingDim, n: usize, j: usize) -> u128 {
    binomial(n as u64, j as u64) * (d.get() as u128 - 1).pow(j as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dim(d: u64) -> RingDim {
        RingDim::new(d).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_four() {
        let ps: Vec<String> = enumerate_partitions(4).unwrap().iter().map(Partition::label).collect();
        assert_eq!(ps, vec!["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]);
        assert_eq!(enumerate_partitions(1).unwrap(), vec![part(&[1])]);
        assert_eq!(enumerate_partitions(8).unwrap().len(), 22);
        assert!(enumerate_partitions(31).is_err());
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| enumerate_partitions(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn bound_examples() {
        for d in [2u64, 3, 5] {
            let dd = d as u128;
            let b = bound(dim(d), &part(&[2, 2]), BoundMode::Generic).unwrap();
            assert_eq!(b.get(4), (dd * dd - 1).pow(2));
            let b = bound(dim(d), &part(&[2, 1]), BoundMode::Generic).unwrap();
            assert_eq!(b.get(3), dd.pow(3) - dd * dd - dd + 1);
        }
        for n in 3..=10 {
            let b = bound(dim(2), &Partition::semiseparable(n).unwrap(), BoundMode::QubitTight).unwrap();
            assert_eq!(b.get(n), (1 << (n - 2)) + u128::from((n - 1) % 2 == 0));
        }
        assert!(bound(dim(3), &part(&[2, 1]), BoundMode::QubitTight).is_err());
    }

    #[test]
    fn fully_separable_examples() {
        assert_eq!(fully_separable_bound(dim(2), 7, 7), 1);
        assert_eq!(fully_separable_bound(dim(3), 3, 2), 12);
        assert_eq!(fully_separable_bound(dim(2), 8, 4), 70);
    }

    fn refines(p: &Partition) -> Vec<Partition> {
        let mut out = Vec::new();
        for (i, &m) in p.parts().iter().enumerate() {
            for a in 1..m {
                let mut parts = p.parts().to_vec();
                parts[i] = a;
                parts.push(m - a);
                out.push(Partition::new(parts).unwrap());
            }
        }
        out
    }

    #[test]
    fn coarsenings_of_small_partitions() {
        let c: Vec<String> = coarsenings(&part(&[2, 1, 1])).iter().map(Partition::label).collect();
        assert_eq!(c, vec!["4", "3+1", "2+2", "2+1+1"]);
        assert_eq!(coarsenings(&part(&[1, 1, 1, 1])).len(), 5);
    }

    #[test]
    fn composition_is_not_monotone_below_full_body() {
        let b22 = bound(dim(2), &part(&[2, 2]), BoundMode::Generic).unwrap();
        let b4 = bound(dim(2), &part(&[4]), BoundMode::Generic).unwrap();
        assert_eq!((b22.get(3), b4.get(3)), (18, 15));
    }

    #[test]
    fn refinement_monotone() {
        for d in 2..=5 {
            for n in 1..=8 {
                for q in enumerate_partitions(n).unwrap() {
                    let bq = bound(dim(d), &q, BoundMode::Generic).unwrap();
                    let tq = tightened_bound(dim(d), &q, BoundMode::Generic).unwrap();
                    for p in refines(&q) {
                        let bp = bound(dim(d), &p, BoundMode::Generic).unwrap();
                        assert!(bp.get(n) <= bq.get(n), "D={d} {p} vs {q}");
                        let tp = tightened_bound(dim(d), &p, BoundMode::Generic).unwrap();
                        for j in 0..=n {
                            assert!(tp.get(j) <= tq.get(j), "D={d} {p} vs {q} j={j}");
                            assert!(tp.get(j) <= bp.get(j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn qubit_tight_full_body_monotone() {
        for n in 1..=8 {
            for q in enumerate_partitions(n).unwrap() {
                let bq = bound(dim(2), &q, BoundMode::QubitTight).unwrap();
                for p in refines(&q) {
                    let bp = bound(dim(2), &p, BoundMode::QubitTight).unwrap();
                    assert!(bp.get(n) <= bq.get(n), "{p} vs {q}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn ones_partition_is_fully_separable(d in 2u64..8, n in 1usize..12) {
            let b = bound(dim(d), &Partition::fully_separable(n).unwrap(), BoundMode::Generic).unwrap();
            for j in 0..=n {
                prop_assert_eq!(b.get(j), fully_separable_bound(dim(d), n, j));
            }
        }

        #[test]
        fn extreme_sectors_below_purity_limit(d in 2u64..6, n in 1usize..9, pick in 0usize..1000) {
            let ps = enumerate_partitions(n).unwrap();
            let p = &ps[pick % ps.len()];
            let b = bound(dim(d), p, BoundMode::Generic).unwrap();
            let cap = (d as u128).pow(n as u32) - 1;
            prop_assert_eq!(b.get(0), 1);
            prop_assert!(b.get(1) <= cap);
            prop_assert!(b.get(n) <= cap);
        }
    }
}
