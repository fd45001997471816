use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::ring::{binomial, gcd, RingDim};

fn ipow(b: i128, e: usize) -> i128 {
    (0..e).fold(1i128, |acc, _| acc * b)
}

/// `N_m` for invertible weights: `((D-1)^{m+1} + (-1)^{m+1}(D-1)) / D`.
pub fn n_m_explicit(d: RingDim, m: usize) -> u128 {
    if m == 0 {
        return 0;
    }
    let dd = d.get() as i128;
    let sign = if (m + 1).is_multiple_of(2) { 1 } else { -1 };
    ((ipow(dd - 1, m + 1) + sign * (dd - 1)) / dd) as u128
}

/// `N_m(γ)`: number of `r` with all entries nonzero and `Σ γ_j r_j ≠ 0`.
pub fn n_m_recursive(d: RingDim, gamma: &[u64]) -> u128 {
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for &g in gamma {
        *counts.entry(gcd(d.get(), g % d.get())).or_insert(0) += 1;
    }
    let mut key: Vec<(u64, usize)> = counts.into_iter().collect();
    key.sort_unstable();
    let mut memo = HashMap::new();
    n_multiset(d.get(), &key, &mut memo) as u128
}

/// Recurrence on the multiset `{(gcd, multiplicity)}`; sub-multisets are
/// weighted by the number of index subsets realizing them.
fn n_multiset(d: u64, key: &[(u64, usize)], memo: &mut HashMap<Vec<(u64, usize)>, i128>) -> i128 {
    let m: usize = key.iter().map(|e| e.1).sum();
    if m == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(key) {
        return v;
    }
    let g = key.iter().fold(d, |acc, e| gcd(acc, e.0));
    let mut value = ipow(d as i128, m - 1) * (d as i128 - g as i128);
    let mut pick = vec![0usize; key.len()];
    loop {
        let mut i = 0;
        while i < key.len() && pick[i] == key[i].1 {
            pick[i] = 0;
            i += 1;
        }
        if i == key.len() {
            break;
        }
        pick[i] += 1;
        let k: usize = pick.iter().sum();
        if k == m {
            continue;
        }
        let weight: i128 = key.iter().zip(&pick).map(|(e, &c)| binomial(e.1 as u64, c as u64) as i128).product();
        let sub: Vec<(u64, usize)> = key.iter().zip(&pick).filter(|(_, &c)| c > 0).map(|(e, &c)| (e.0, c)).collect();
        value -= weight * n_multiset(d, &sub, memo);
    }
    memo.insert(key.to_vec(), value);
    value
}

/// `(D-1)^n + Σ_i (D-1)^{n-1-m_i} N_{m_i}(γ_i restricted to its neighbours)`.
pub fn full_body_lower_bound(g: &AdjacencyMatrix) -> Result<u128> {
    let d = g.dim();
    let n = g.n();
    let dm1 = d.get() as u128 - 1;
    let mut total = dm1.pow(n as u32);
    for i in 0..n {
        let weights: Vec<u64> = g.column(i).iter().copied().filter(|&w| w != 0).collect();
        let m = weights.len();
        let rec = n_m_recursive(d, &weights);
        if m > 0 && weights.iter().all(|&w| gcd(w, d.get()) == 1) && rec != n_m_explicit(d, m) {
            return Err(Error::Inconsistent(format!("N_{m} recurrence {rec} vs explicit {}", n_m_explicit(d, m))));
        }
        total += dm1.pow((n - 1 - m) as u32) * rec;
    }
    Ok(total)
}

/// Coefficients `a_i^{(n)}` of `f_n(D) = Σ_i a_i D^i`, from `a_i^{(n)} = δ_{i,n-1} - Σ_{j<n} C(n,j) a_i^{(j)}`.
pub fn ghz_coefficients_recursive(n: usize) -> Vec<i128> {
    let mut all: Vec<Vec<i128>> = vec![vec![1]];
    for m in 1..=n {
        let mut a = vec![0i128; m];
        a[m - 1] = 1;
        for (j, prev) in all.iter().enumerate() {
            let c = binomial(m as u64, j as u64) as i128;
            for (i, &p) in prev.iter().enumerate() {
                a[i] -= c * p;
            }
        }
        all.push(a);
    }
    all.swap_remove(n)
}

/// Coefficients `a_i^{(n)} = (-1)^n δ_{i,0} + (-1)^{n+i+1} C(n, i+1)`.
pub fn ghz_coefficients_explicit(n: usize) -> Vec<i128> {
    let len = n.max(1);
    (0..len)
        .map(|i| {
            let delta = if i == 0 {
                if n.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            let sign = if (n + i + 1).is_multiple_of(2) { 1 } else { -1 };
            delta + sign * binomial(n as u64, i as u64 + 1) as i128
        })
        .collect()
}

fn eval_poly(a: &[i128], x: i128) -> i128 {
    a.iter().rev().fold(0, |acc, &c| acc * x + c)
}

/// `k^n_j = C(n,j) f_j(D)` for `j = 0..n`, with `f_j` computed by the
/// recursion and checked against both coefficient forms.
pub fn ghz_weight_counts(d: RingDim, n: usize) -> Result<Vec<u128>> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let dd = d.get() as i128;
    let mut f: Vec<i128> = vec![1];
    for m in 1..=n {
        let mut v = ipow(dd, m - 1);
        for (j, &fj) in f.iter().enumerate() {
            v -= binomial(m as u64, j as u64) as i128 * fj;
        }
        f.push(v);
    }
    for (m, &fm) in f.iter().enumerate() {
        let rec = eval_poly(&ghz_coefficients_recursive(m), dd);
        let exp = eval_poly(&ghz_coefficients_explicit(m), dd);
        if rec != fm || exp != fm {
            return Err(Error::Inconsistent(format!("f_{m}({dd}): recursion {fm}, recursive coefficients {rec}, explicit {exp}")));
        }
        if fm < 0 {
            return Err(Error::Inconsistent(format!("f_{m}({dd}) = {fm} is negative")));
        }
    }
    Ok(f.iter().enumerate().map(|(j, &fj)| binomial(n as u64, j as u64) * fj as u128).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, GraphFamily};
    use crate::sector::{ghz_analytic, sector_brute};

    fn dim(d: u64) -> RingDim {
        RingDim::new(d).unwrap()
    }

    fn n_m_oracle(d: u64, gamma: &[u64]) -> u128 {
        let m = gamma.len();
        let mut count = 0;
        for idx in 0..d.pow(m as u32) {
            let r: Vec<u64> = (0..m).map(|i| idx / d.pow(i as u32) % d).collect();
            let sum: u64 = r.iter().zip(gamma).map(|(a, b)| a * b).sum::<u64>() % d;
            if r.iter().all(|&x| x != 0) && sum != 0 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn n_m_matches_oracle() {
        let cases: &[(u64, &[u64])] = &[
            (2, &[1]),
            (2, &[1, 1]),
            (2, &[1, 1, 1, 1]),
            (3, &[1, 2, 1]),
            (4, &[2]),
            (4, &[2, 2, 1]),
            (6, &[2, 3]),
            (6, &[2, 3, 4, 5]),
            (9, &[3, 6, 3]),
            (12, &[4, 6, 8, 9]),
        ];
        for &(d, g) in cases {
            assert_eq!(n_m_recursive(dim(d), g), n_m_oracle(d, g), "D={d} γ={g:?}");
        }
    }

    #[test]
    fn n_m_explicit_matches_recursion() {
        for d in 2..=7 {
            for m in 1..=8 {
                assert_eq!(n_m_explicit(dim(d), m), n_m_recursive(dim(d), &vec![1; m]), "D={d} m={m}");
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        for n in 3..=9 {
            let ring = make_family(GraphFamily::Ring, n, dim(2)).unwrap();
            assert_eq!(full_body_lower_bound(&ring).unwrap(), 1);
        }
        let star = make_family(GraphFamily::Star, 5, dim(2)).unwrap();
        assert_eq!(full_body_lower_bound(&star).unwrap(), 5);
        let edge = make_family(GraphFamily::Line, 2, dim(3)).unwrap();
        assert_eq!(full_body_lower_bound(&edge).unwrap(), 8);
        assert_eq!(sector_brute(&edge).unwrap().full_body(), 8);
    }

    #[test]
    fn lower_bound_below_exact_for_families() {
        for d in 2..=5 {
            for kind in [GraphFamily::Star, GraphFamily::Line, GraphFamily::Ring] {
                for n in 3..=6 {
                    let g = make_family(kind, n, dim(d)).unwrap();
                    let lb = full_body_lower_bound(&g).unwrap();
                    assert!(lb <= sector_brute(&g).unwrap().full_body(), "{kind:?} n={n} D={d}");
                }
            }
        }
    }

    #[test]
    fn ghz_coefficients_agree() {
        assert_eq!(ghz_coefficients_explicit(0), vec![1]);
        assert_eq!(ghz_coefficients_recursive(0), vec![1]);
        for n in 0..=14 {
            assert_eq!(ghz_coefficients_recursive(n), ghz_coefficients_explicit(n), "n={n}");
        }
    }

    #[test]
    fn ghz_weight_examples() {
        for d in 2..=7 {
            let k1 = ghz_weight_counts(dim(d), 1).unwrap();
            assert_eq!(k1, vec![1, 0]);
            let k2 = ghz_weight_counts(dim(d), 2).unwrap();
            assert_eq!(k2[2], d as u128 - 1);
            for n in 1..=10 {
                let k = ghz_weight_counts(dim(d), n).unwrap();
                assert_eq!(k.iter().sum::<u128>(), (d as u128).pow(n as u32 - 1));
                if n >= 2 {
                    let mut l = k.clone();
                    l[n] += (d as u128 - 1) * (d as u128).pow(n as u32 - 1);
                    assert_eq!(l, ghz_analytic(dim(d), n).unwrap().l);
                }
            }
        }
    }
}
