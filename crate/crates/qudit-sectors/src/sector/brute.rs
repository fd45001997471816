use rayon::prelude::*;

use super::{pool, SectorDistribution};
use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// Default cap on `D^n` for exhaustive enumeration.
pub const BRUTE_GUARD: u128 = 1 << 28;

const TARGET_CHUNKS: u128 = 512;

/// `ℓ_j = #{r : swt(r, Γr) = j}` by exhaustive enumeration.
pub fn sector_brute(g: &AdjacencyMatrix) -> Result<SectorDistribution> {
    sector_brute_with_guard(g, BRUTE_GUARD)
}

pub fn sector_brute_with_guard(g: &AdjacencyMatrix, guard: u128) -> Result<SectorDistribution> {
    let n = g.n();
    let d = g.dim().get() as u128;
    let size = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(d)).unwrap_or(u128::MAX);
    if size > guard {
        return Err(Error::Guard { size, limit: guard });
    }
    let hist = if d == 2 { qubit_histogram(g) } else { qudit_histogram(g) };
    SectorDistribution::new(g.dim(), hist.into_iter().map(u128::from).collect())
}

/// Number of leading digits handed out as independent chunks.
fn split(n: usize, d: u128) -> usize {
    let mut t = 0;
    let mut chunks = 1u128;
    while t < n && chunks < TARGET_CHUNKS {
        chunks *= d;
        t += 1;
    }
    t
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

fn qubit_histogram(g: &AdjacencyMatrix) -> Vec<u64> {
    let n = g.n();
    let cols: Vec<u64> = (0..n).map(|k| g.column(k).iter().enumerate().fold(0u64, |m, (i, &w)| m | (w << i))).collect();
    let t = split(n, 2);
    let low = n - t;
    pool().install(|| {
        (0..1u64 << t)
            .into_par_iter()
            .map(|prefix| {
                let mut hist = vec![0u64; n + 1];
                let hi = prefix << low;
                let mut acc = (0..n).filter(|&k| hi >> k & 1 == 1).fold(0u64, |m, k| m ^ cols[k]);
                let mut gray = 0u64;
                hist[((hi | acc).count_ones()) as usize] += 1;
                for i in 1..1u64 << low {
                    let bit = i.trailing_zeros() as usize;
                    gray ^= 1 << bit;
                    acc ^= cols[bit];
                    hist[((hi | gray | acc).count_ones()) as usize] += 1;
                }
                hist
            })
            .reduce(|| vec![0u64; n + 1], merge)
    })
}

fn qudit_histogram(g: &AdjacencyMatrix) -> Vec<u64> {
    let n = g.n();
    let d = g.dim().get();
    let t = split(n, d as u128);
    let low = n - t;
    let chunks = d.pow(t as u32);
    pool().install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|prefix| {
                let mut hist = vec![0u64; n + 1];
                // r[0..low] is the running counter, r[low..n] the fixed prefix
                let mut r = vec![0u64; n];
                let mut p = prefix;
                for slot in r[low..].iter_mut() {
                    *slot = p % d;
                    p /= d;
                }
                let mut gr = vec![0u64; n];
                for (k, &rk) in r.iter().enumerate().skip(low) {
                    if rk != 0 {
                        for (x, &c) in gr.iter_mut().zip(g.column(k)) {
                            *x = (*x + rk * c) % d;
                        }
                    }
                }
                loop {
                    let w = r.iter().zip(&gr).filter(|(&a, &b)| a != 0 || b != 0).count();
                    hist[w] += 1;
                    let mut k = 0;
                    loop {
                        if k == low {
                            return hist;
                        }
                        r[k] = (r[k] + 1) % d;
                        for (x, &c) in gr.iter_mut().zip(g.column(k)) {
                            *x = (*x + c) % d;
                        }
                        if r[k] != 0 {
                            break;
                        }
                        k += 1;
                    }
                }
            })
            .reduce(|| vec![0u64; n + 1], merge)
    })
}
