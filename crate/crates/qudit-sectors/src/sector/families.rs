use serde::Serialize;

use super::sector_brute;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, GraphFamily};
use crate::ring::binomial;

/// Largest vertex count for which colorings are listed explicitly.
pub const LIST_GUARD: usize = 20;

/// Full-body sector length of a qubit family member.
pub fn family_full_body(kind: GraphFamily, n: usize) -> Result<u128> {
    if n < kind.min_n() || n > 120 {
        return Err(Error::Invalid(format!("{} with n={n} is out of range", kind.name())));
    }
    let even = u128::from(n.is_multiple_of(2));
    match kind {
        GraphFamily::Star => Ok((1u128 << (n - 1)) + even),
        GraphFamily::Dandelion => Ok(5 * (1u128 << (n - 4)) + 4 * even),
        GraphFamily::Line => {
            let mut a: Vec<u128> = vec![1, 3, 4];
            while a.len() < n {
                let k = a.len();
                a.push(a[k - 1] + a[k - 3]);
            }
            Ok(a[n - 1])
        }
        GraphFamily::Ring => {
            let mut total = 1u128;
            for k in 1..=n / 3 {
                total += ring_pair_count(n, k)?;
            }
            Ok(total)
        }
        GraphFamily::Ame4Ring | GraphFamily::Custom => Err(Error::Invalid(format!("no qubit closed form for {}", kind.name()))),
    }
}

/// Ways to place `k` white pairs on an `n`-ring, pairs separated by black vertices.
pub fn ring_pair_count(n: usize, k: usize) -> Result<u128> {
    if n < 3 || k == 0 || k > n / 3 {
        return Err(Error::Invalid(format!("ring_pair_count needs n >= 3, 1 <= k <= n/3; got n={n}, k={k}")));
    }
    let num = binomial((n - 2 * k - 1) as u64, (k - 1) as u64) * n as u128;
    if !num.is_multiple_of(k as u128) {
        return Err(Error::Inconsistent(format!("N({n},{k}) is not an integer")));
    }
    Ok(num / k as u128)
}

/// A black/white vertex coloring; bit `i` of `black` is set when vertex `i` is black.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coloring {
    pub n: usize,
    pub black: u64,
}

impl Coloring {
    pub fn is_black(&self, i: usize) -> bool {
        self.black >> i & 1 == 1
    }

    /// Every white vertex must have an odd number of black neighbours.
    pub fn is_valid(&self, g: &AdjacencyMatrix) -> bool {
        (0..self.n).all(|i| self.is_black(i) || g.neighbours(i).into_iter().filter(|&j| self.is_black(j)).count() % 2 == 1)
    }

    /// `1` for black, `0` for white, vertex 1 first.
    pub fn bitstring(&self) -> String {
        (0..self.n).map(|i| if self.is_black(i) { '1' } else { '0' }).collect()
    }
}

/// Counts valid colorings; with `list`, also returns them in ascending order of `black`.
pub fn puzzle_colorings(g: &AdjacencyMatrix, list: bool) -> Result<(u128, Option<Vec<Coloring>>)> {
    if g.dim().get() != 2 {
        return Err(Error::Invalid(format!("the coloring puzzle is for qubits, got D={}", g.dim())));
    }
    let n = g.n();
    if !list {
        return Ok((sector_brute(g)?.full_body(), None));
    }
    if n > LIST_GUARD {
        return Err(Error::Guard { size: 1u128 << n, limit: 1u128 << LIST_GUARD });
    }
    let cols: Vec<u64> = (0..n).map(|k| g.column(k).iter().enumerate().fold(0u64, |m, (i, &w)| m | (w << i))).collect();
    let full = (1u64 << n) - 1;
    let found: Vec<Coloring> = (0..1u64 << n)
        .filter(|&r| {
            let gr = (0..n).filter(|&k| r >> k & 1 == 1).fold(0u64, |m, k| m ^ cols[k]);
            (r | gr) & full == full
        })
        .map(|black| Coloring { n, black })
        .collect();
    Ok((found.len() as u128, Some(found)))
}
