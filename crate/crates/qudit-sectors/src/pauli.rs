//! Generalized Pauli operators `ω_{2D}^q X^r Z^s` and stabilizer groups.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::ring::{dot, swt, RingDim};

/// Largest group that [`StabilizerGroupSpec::enumerate`] will materialize.
pub const GROUP_GUARD: u64 = 1 << 24;

/// `ω_{2D}^q X^r Z^s` on `n` qudits, with `q ∈ [0, 2D)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    pub d: RingDim,
    pub q: u64,
    pub r: Vec<u64>,
    pub s: Vec<u64>,
}

impl PauliOp {
    pub fn new(d: RingDim, q: u64, r: Vec<u64>, s: Vec<u64>) -> Result<Self> {
        if r.len() != s.len() {
            return Err(Error::Mismatch(format!("r has length {}, s has {}", r.len(), s.len())));
        }
        let dd = d.get();
        Ok(PauliOp { d, q: q % (2 * dd), r: r.into_iter().map(|x| x % dd).collect(), s: s.into_iter().map(|x| x % dd).collect() })
    }

    pub fn identity(d: RingDim, n: usize) -> Self {
        PauliOp { d, q: 0, r: vec![0; n], s: vec![0; n] }
    }

    /// `X` on qudit `k`.
    pub fn x(d: RingDim, n: usize, k: usize) -> Self {
        let mut p = Self::identity(d, n);
        p.r[k] = 1;
        p
    }

    /// `Z` on qudit `k`.
    pub fn z(d: RingDim, n: usize, k: usize) -> Self {
        let mut p = Self::identity(d, n);
        p.s[k] = 1;
        p
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn is_identity(&self) -> bool {
        self.q == 0 && self.is_scalar()
    }

    /// True when `r = s = 0`, i.e. the operator is a multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.r.iter().all(|&x| x == 0) && self.s.iter().all(|&x| x == 0)
    }

    pub fn weight(&self) -> usize {
        swt(&self.r, &self.s)
    }

    fn check(&self, other: &PauliOp) -> Result<()> {
        if self.d != other.d || self.n() != other.n() {
            return Err(Error::Mismatch(format!("(D={}, n={}) vs (D={}, n={})", self.d, self.n(), other.d, other.n())));
        }
        Ok(())
    }

    /// Normal-form product `self · other`.
    pub fn compose(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check(other)?;
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &PauliOp) -> PauliOp {
        let d = self.d;
        let two_d = 2 * d.get();
        let q = (self.q + other.q + 2 * dot(d, &self.s, &other.r)) % two_d;
        PauliOp {
            d,
            q,
            r: self.r.iter().zip(&other.r).map(|(&a, &b)| d.add(a, b)).collect(),
            s: self.s.iter().zip(&other.s).map(|(&a, &b)| d.add(a, b)).collect(),
        }
    }

    /// `k` with `P Q = ω_D^k Q P`.
    pub fn commutation_phase(&self, other: &PauliOp) -> Result<u64> {
        self.check(other)?;
        let d = self.d;
        Ok(d.reduce(dot(d, &other.r, &self.s) as i64 - dot(d, &self.r, &other.s) as i64))
    }

    pub fn pow(&self, k: u64) -> PauliOp {
        let mut acc = PauliOp::identity(self.d, self.n());
        for _ in 0..k {
            acc = acc.compose_unchecked(self);
        }
        acc
    }

    /// Smallest `m ≥ 1` with `P^m = 1`.
    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut m = 1;
        while !acc.is_identity() {
            acc = acc.compose_unchecked(self);
            m += 1;
        }
        m
    }
}

/// Outcome of [`StabilizerGroupSpec::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid { count: u64 },
    NotAbelian { pair: (usize, usize) },
    WrongCardinality { count: u64 },
    ContainsPhase { element: PauliOp },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

/// Generators of a candidate stabilizer group on `n` qudits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGroupSpec {
    pub d: RingDim,
    pub n: usize,
    pub generators: Vec<PauliOp>,
    pub orders: Vec<u64>,
}

impl StabilizerGroupSpec {
    pub fn new(d: RingDim, n: usize, generators: Vec<PauliOp>) -> Result<Self> {
        for g in &generators {
            if g.d != d || g.n() != n {
                return Err(Error::Mismatch(format!("generator on (D={}, n={})", g.d, g.n())));
            }
        }
        let orders: Vec<u64> = generators.iter().map(PauliOp::order).collect();
        Ok(StabilizerGroupSpec { d, n, generators, orders })
    }

    /// `X^{⊗n}` together with `Z_i Z_{i+1}^{-1}`.
    pub fn ghz(d: RingDim, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("GHZ needs n >= 2, got {n}")));
        }
        let mut gens = vec![PauliOp::new(d, 0, vec![1; n], vec![0; n])?];
        for i in 0..n - 1 {
            let mut p = PauliOp::identity(d, n);
            p.s[i] = 1;
            p.s[i + 1] = d.get() - 1;
            gens.push(p);
        }
        Self::new(d, n, gens)
    }

    /// Every element of the generated group, by breadth-first closure.
    pub fn enumerate(&self) -> Result<Vec<PauliOp>> {
        let id = PauliOp::identity(self.d, self.n);
        let mut seen: HashSet<PauliOp> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let next = p.compose_unchecked(g);
                if !seen.contains(&next) {
                    if seen.len() as u64 >= GROUP_GUARD {
                        return Err(Error::Guard { size: seen.len() as u128 + 1, limit: GROUP_GUARD as u128 });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
            out.push(p);
        }
        Ok(out)
    }

    pub fn verify(&self) -> Result<Verdict> {
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if self.generators[i].commutation_phase(&self.generators[j])? != 0 {
                    return Ok(Verdict::NotAbelian { pair: (i, j) });
                }
            }
        }
        let elements = self.enumerate()?;
        if let Some(e) = elements.iter().find(|e| e.is_scalar() && e.q != 0) {
            return Ok(Verdict::ContainsPhase { element: e.clone() });
        }
        let count = elements.len() as u64;
        let target = self.d.pow(self.n).unwrap_or(u64::MAX);
        if count != target {
            return Ok(Verdict::WrongCardinality { count });
        }
        Ok(Verdict::Valid { count })
    }

    /// Invariant factors `D_1 | D_2 | …` of the generated group.
    pub fn structure(&self) -> Result<Vec<u64>> {
        match self.verify()? {
            Verdict::Valid { .. } => {}
            v => return Err(Error::InvalidGroup(format!("{v:?}"))),
        }
        let elements = self.enumerate()?;
        let orders: Vec<u64> = elements.iter().map(PauliOp::order).collect();
        Ok(invariant_factors(elements.len() as u64, &orders))
    }
}

fn prime_factors(mut m: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

/// Invariant factors of a finite abelian group from its order and the
/// multiset of element orders.
fn invariant_factors(size: u64, orders: &[u64]) -> Vec<u64> {
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (&p, &total) in prime_factors(size).iter() {
        // t[k] = log_p #{g : g^{p^k} = 1}
        let mut t = vec![0u32];
        let mut k = 1;
        loop {
            let pk = p.pow(k);
            let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let log = (c as f64).log(p as f64).round() as u32;
            t.push(log);
            if log >= total {
                break;
            }
            k += 1;
        }
        // #{i : e_i >= k} = t[k] - t[k-1]
        let ge: Vec<u32> = (1..t.len()).map(|k| t[k] - t[k - 1]).collect();
        let mut exps = Vec::new();
        for k in 0..ge.len() {
            let next = ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..ge[k] - next {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len).map(|j| per_prime.iter().map(|(p, e)| e.get(j).map_or(1, |&x| p.pow(x))).product()).collect();
    factors.sort_unstable();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::pauli_matrix;
    use proptest::prelude::*;

    fn dim(d: u64) -> RingDim {
        RingDim::new(d).unwrap()
    }

    fn op(d: u64, q: u64, r: &[u64], s: &[u64]) -> PauliOp {
        PauliOp::new(dim(d), q, r.to_vec(), s.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let x = op(2, 0, &[1], &[0]);
        let z = op(2, 0, &[0], &[1]);
        assert_eq!(x.compose(&z).unwrap(), op(2, 0, &[1], &[1]));
        assert_eq!(z.compose(&x).unwrap(), op(2, 2, &[1], &[1]));
        let xz = op(3, 0, &[1], &[1]);
        let x3 = op(3, 0, &[1], &[0]);
        assert_eq!(xz.compose(&x3).unwrap(), op(3, 2, &[2], &[1]));
    }

    #[test]
    fn compose_rejects_mismatch() {
        assert!(op(2, 0, &[1], &[0]).compose(&op(3, 0, &[1], &[0])).is_err());
        assert!(op(2, 0, &[1], &[0]).compose(&op(2, 0, &[1, 0], &[0, 0])).is_err());
    }

    #[test]
    fn commutation_examples() {
        let x = op(2, 0, &[1], &[0]);
        let z = op(2, 0, &[0], &[1]);
        assert_eq!(x.commutation_phase(&z).unwrap(), 1);
        assert_eq!(x.commutation_phase(&x).unwrap(), 0);
        let xz = op(3, 0, &[1, 0], &[0, 1]);
        let zx = op(3, 0, &[0, 1], &[1, 0]);
        assert_eq!(xz.commutation_phase(&zx).unwrap(), 0);
    }

    #[test]
    fn commutation_matches_dense() {
        let p = op(3, 0, &[1, 0], &[0, 1]);
        let q = op(3, 0, &[0, 1], &[1, 0]);
        let a = pauli_matrix(&p);
        let b = pauli_matrix(&q);
        assert!(a.mul(&b).max_abs_diff(&b.mul(&a)) < 1e-12);
        let x = op(3, 0, &[1], &[0]);
        let z = op(3, 0, &[0], &[1]);
        let k = x.commutation_phase(&z).unwrap();
        let w = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
        let lhs = pauli_matrix(&x).mul(&pauli_matrix(&z));
        let rhs = pauli_matrix(&z).mul(&pauli_matrix(&x)).scale(w);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn single_ququart_groups() {
        let d = dim(4);
        let z4 = StabilizerGroupSpec::new(d, 1, vec![PauliOp::z(d, 1, 0)]).unwrap();
        assert_eq!(z4.verify().unwrap(), Verdict::Valid { count: 4 });
        assert_eq!(z4.structure().unwrap(), vec![4]);
        let x2 = op(4, 0, &[2], &[0]);
        let z2 = op(4, 0, &[0], &[2]);
        let g = StabilizerGroupSpec::new(d, 1, vec![x2, z2]).unwrap();
        assert_eq!(g.orders, vec![2, 2]);
        assert_eq!(g.verify().unwrap(), Verdict::Valid { count: 4 });
        assert_eq!(g.structure().unwrap(), vec![2, 2]);
    }

    #[test]
    fn invalid_groups_detected() {
        let d = dim(2);
        let g = StabilizerGroupSpec::new(d, 1, vec![PauliOp::x(d, 1, 0), PauliOp::z(d, 1, 0)]).unwrap();
        assert_eq!(g.verify().unwrap(), Verdict::NotAbelian { pair: (0, 1) });
        let y = op(2, 0, &[1], &[1]);
        let g = StabilizerGroupSpec::new(d, 1, vec![y]).unwrap();
        assert!(matches!(g.verify().unwrap(), Verdict::ContainsPhase { .. }));
        let g = StabilizerGroupSpec::new(d, 2, vec![op(2, 0, &[1, 0], &[0, 0])]).unwrap();
        assert_eq!(g.verify().unwrap(), Verdict::WrongCardinality { count: 2 });
        assert!(g.structure().is_err());
    }

    #[test]
    fn ghz_group_valid() {
        for d in 2..=5 {
            for n in 2..=4 {
                let g = StabilizerGroupSpec::ghz(dim(d), n).unwrap();
                assert!(g.verify().unwrap().is_valid(), "D={d} n={n}");
            }
        }
    }

    #[test]
    fn invariant_factor_helper() {
        // Z/2 x Z/4 has orders 1,2,2,2,4,4,4,4
        assert_eq!(invariant_factors(8, &[1, 2, 2, 2, 4, 4, 4, 4]), vec![2, 4]);
        // Z/6
        assert_eq!(invariant_factors(6, &[1, 2, 3, 3, 6, 6]), vec![6]);
    }

    fn arb_op(d: u64, n: usize) -> impl Strategy<Value = PauliOp> {
        (0..2 * d, proptest::collection::vec(0..d, n), proptest::collection::vec(0..d, n))
            .prop_map(move |(q, r, s)| PauliOp::new(RingDim::new(d).unwrap(), q, r, s).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (PauliOp, PauliOp, PauliOp)> {
        (2u64..=4, 1usize..=3).prop_flat_map(|(d, n)| (arb_op(d, n), arb_op(d, n), arb_op(d, n)))
    }

    proptest! {
        #[test]
        fn compose_associative((a, b, c) in arb_triple()) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            let id = PauliOp::identity(a.d, a.n());
            prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        }

        #[test]
        fn commutation_antisymmetric((a, b, _c) in arb_triple()) {
            let ab = a.commutation_phase(&b).unwrap();
            let ba = b.commutation_phase(&a).unwrap();
            prop_assert_eq!((ab + ba) % a.d.get(), 0);
        }

        #[test]
        fn compose_matches_dense((a, b, _c) in arb_triple()) {
            let prod = pauli_matrix(&a.compose(&b).unwrap());
            let dense = pauli_matrix(&a).mul(&pauli_matrix(&b));
            prop_assert!(prod.max_abs_diff(&dense) < 1e-12);
        }
    }
}
