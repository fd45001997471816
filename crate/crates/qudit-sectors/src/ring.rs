//! Arithmetic in Z/DZ and small integer helpers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Local dimension of a qudit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingDim(u64);

impl RingDim {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadDimension(d));
        }
        Ok(RingDim(d))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical representative of `x` in `[0, D)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }

    /// `D^n`, or `None` on overflow.
    pub fn pow(self, n: usize) -> Option<u64> {
        self.0.checked_pow(u32::try_from(n).ok()?)
    }
}

impl std::fmt::Display for RingDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vector over Z/DZ with entries kept in `[0, D)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingVec {
    d: RingDim,
    entries: Vec<u64>,
}

impl RingVec {
    pub fn new(d: RingDim, entries: Vec<u64>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|&&e| e >= d.get()) {
            return Err(Error::Invalid(format!("entry {e} not in [0, {d})")));
        }
        Ok(RingVec { d, entries })
    }

    pub fn zeros(d: RingDim, n: usize) -> Self {
        RingVec { d, entries: vec![0; n] }
    }

    pub fn dim(&self) -> RingDim {
        self.d
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.entries
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `x` modulo `D`, if it exists.
pub fn mod_inverse(x: u64, d: RingDim) -> Option<u64> {
    let m = d.get() as i128;
    let (mut old_r, mut r) = ((x as i128).rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m) as u64)
}

/// `gcd(D, γ)` with the convention `gcd(D, 0) = D`.
pub fn gcd_with_dim(gamma: u64, d: RingDim) -> u64 {
    gcd(d.get(), gamma % d.get())
}

/// Number of positions where `r` or `s` is nonzero.
pub fn symplectic_weight(r: &RingVec, s: &RingVec) -> Result<usize> {
    if r.d != s.d || r.len() != s.len() {
        return Err(Error::Mismatch(format!("r has (D={}, n={}), s has (D={}, n={})", r.d, r.len(), s.d, s.len())));
    }
    Ok(swt(&r.entries, &s.entries))
}

/// Unchecked symplectic weight on raw slices.
#[inline]
pub fn swt(r: &[u64], s: &[u64]) -> usize {
    r.iter().zip(s).filter(|(&a, &b)| a != 0 || b != 0).count()
}

/// Bilinear form `a·b mod D`.
#[inline]
pub fn dot(d: RingDim, a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| (acc + x * y) % d.get())
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dim(d: u64) -> RingDim {
        RingDim::new(d).unwrap()
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(RingDim::new(1).is_err());
        assert!(RingDim::new(0).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(3, dim(4)), Some(3));
        assert_eq!(mod_inverse(2, dim(4)), None);
        assert_eq!(mod_inverse(2, dim(5)), Some(3));
        assert_eq!(mod_inverse(0, dim(7)), None);
        assert_eq!(mod_inverse(1, dim(2)), Some(1));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_with_dim(0, dim(6)), 6);
        assert_eq!(gcd_with_dim(4, dim(6)), 2);
        assert_eq!(gcd_with_dim(5, dim(6)), 1);
    }

    #[test]
    fn weight_examples() {
        let v = |d, e: &[u64]| RingVec::new(dim(d), e.to_vec()).unwrap();
        assert_eq!(symplectic_weight(&v(2, &[0, 0]), &v(2, &[0, 0])).unwrap(), 0);
        assert_eq!(symplectic_weight(&v(3, &[1, 0, 2]), &v(3, &[0, 0, 1])).unwrap(), 2);
        assert_eq!(symplectic_weight(&v(2, &[1, 1]), &v(2, &[1, 0])).unwrap(), 2);
        assert!(symplectic_weight(&v(2, &[1]), &v(2, &[1, 0])).is_err());
        assert!(symplectic_weight(&v(2, &[1]), &v(3, &[1])).is_err());
    }

    #[test]
    fn ringvec_rejects_out_of_range() {
        assert!(RingVec::new(dim(3), vec![0, 3]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    proptest! {
        #[test]
        fn inverse_is_inverse(d in 2u64..200, x in 0u64..200) {
            let d = dim(d);
            let x = x % d.get();
            match mod_inverse(x, d) {
                Some(y) => prop_assert_eq!(d.mul(x, y), 1 % d.get()),
                None => prop_assert_ne!(gcd(x, d.get()), 1),
            }
        }

        #[test]
        fn gcd_divides_dim(d in 2u64..500, g in 0u64..500) {
            let d = dim(d);
            prop_assert_eq!(d.get() % gcd_with_dim(g % d.get(), d), 0);
        }

        #[test]
        fn weight_symmetric(d in 2u64..6, pairs in proptest::collection::vec((0u64..6, 0u64..6), 0..10)) {
            let d = dim(d);
            let r: Vec<u64> = pairs.iter().map(|p| p.0 % d.get()).collect();
            let s: Vec<u64> = pairs.iter().map(|p| p.1 % d.get()).collect();
            let rv = RingVec::new(d, r.clone()).unwrap();
            let sv = RingVec::new(d, s).unwrap();
            prop_assert_eq!(symplectic_weight(&rv, &sv).unwrap(), symplectic_weight(&sv, &rv).unwrap());
            let z = RingVec::zeros(d, r.len());
            prop_assert_eq!(symplectic_weight(&rv, &z).unwrap(), r.iter().filter(|&&x| x != 0).count());
        }
    }
}
