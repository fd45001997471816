//! Sector lengths of stabilizer and graph states.
//!
//! For a stabilizer state, `ℓ_j` is the number of stabilizer elements acting
//! nontrivially on exactly `j` qudits. Everything here is exact integer
//! arithmetic.

mod brute;
mod combinatorics;
mod families;

use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{StabilizerGroupSpec, Verdict};
use crate::ring::{binomial, RingDim};

pub use brute::{sector_brute, sector_brute_with_guard, BRUTE_GUARD};
pub use combinatorics::{
    full_body_lower_bound, ghz_coefficients_explicit, ghz_coefficients_recursive, ghz_weight_counts, n_m_explicit, n_m_recursive,
};
pub use families::{family_full_body, puzzle_colorings, ring_pair_count, Coloring, LIST_GUARD};

/// Environment variable that fixes the worker count of parallel enumeration.
pub const THREADS_ENV: &str = "QSECTORS_THREADS";

pub(crate) fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
        rayon::ThreadPoolBuilder::new().num_threads(threads).thread_name(|i| format!("qsectors-{i}")).build().expect("thread pool")
    })
}

/// Exact sector-length vector `ℓ_0..ℓ_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectorDistribution {
    pub d: RingDim,
    pub n: usize,
    pub l: Vec<u128>,
}

impl SectorDistribution {
    pub fn new(d: RingDim, l: Vec<u128>) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::Invalid("a distribution has at least the entry ℓ_0".into()));
        }
        Ok(SectorDistribution { d, n: l.len() - 1, l })
    }

    /// The zero-qudit state, neutral under [`tensor_convolve`].
    pub fn unit(d: RingDim) -> Self {
        SectorDistribution { d, n: 0, l: vec![1] }
    }

    pub fn full_body(&self) -> u128 {
        self.l[self.n]
    }

    pub fn total(&self) -> u128 {
        self.l.iter().sum()
    }

    /// `D,n,l0,...,ln`
    pub fn csv_row(&self) -> String {
        let mut row = format!("{},{}", self.d, self.n);
        for v in &self.l {
            row.push(',');
            row.push_str(&v.to_string());
        }
        row
    }

    pub fn csv_header(n: usize) -> String {
        let mut h = String::from("D,n");
        for j in 0..=n {
            h.push_str(&format!(",l{j}"));
        }
        h
    }
}

/// Weight histogram of the full stabilizer group.
pub fn sector_from_group(spec: &StabilizerGroupSpec) -> Result<SectorDistribution> {
    match spec.verify()? {
        Verdict::Valid { .. } => {}
        v => return Err(Error::InvalidGroup(format!("{v:?}"))),
    }
    let mut l = vec![0u128; spec.n + 1];
    for e in spec.enumerate()? {
        l[e.weight()] += 1;
    }
    SectorDistribution::new(spec.d, l)
}

fn ipow(b: i128, e: usize) -> i128 {
    (0..e).fold(1i128, |acc, _| acc * b)
}

/// Closed form for the GHZ state on `n` qudits of dimension `D`.
pub fn ghz_analytic(d: RingDim, n: usize) -> Result<SectorDistribution> {
    if n < 2 {
        return Err(Error::Invalid(format!("GHZ needs n >= 2, got {n}")));
    }
    let dd = d.get() as i128;
    let l = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let mut v = binomial(n as u64, j as u64) as i128 * (ipow(dd - 1, j) + sign * (dd - 1)) / dd;
            if j == n {
                v += (dd - 1) * ipow(dd, n - 1);
            }
            v as u128
        })
        .collect();
    SectorDistribution::new(d, l)
}

/// Closed form for the four-qudit AME ring state, `D` odd.
pub fn ame4_analytic(d: RingDim) -> Result<SectorDistribution> {
    let dd = d.get() as u128;
    if dd.is_multiple_of(2) {
        return Err(Error::Invalid(format!("the AME4 formula needs odd D, got {dd}")));
    }
    let q = dd * dd - 1;
    SectorDistribution::new(d, vec![1, 0, 0, 4 * q, q * (dd * dd - 3)])
}

/// Sector lengths of a tensor product: the convolution of the two vectors.
pub fn tensor_convolve(a: &SectorDistribution, b: &SectorDistribution) -> Result<SectorDistribution> {
    if a.d != b.d {
        return Err(Error::Mismatch(format!("D={} vs D={}", a.d, b.d)));
    }
    let mut l = vec![0u128; a.n + b.n + 1];
    for (i, &x) in a.l.iter().enumerate() {
        for (j, &y) in b.l.iter().enumerate() {
            l[i + j] += x * y;
        }
    }
    SectorDistribution::new(a.d, l)
}

/// `Tr ρ² = Σ_j ℓ_j / D^n`.
pub fn purity_from_sectors(dist: &SectorDistribution) -> Ratio<u128> {
    Ratio::new(dist.total(), (dist.d.get() as u128).pow(dist.n as u32))
}
