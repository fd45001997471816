//! Small dense numerical engine used to cross-check closed forms.
//!
//! Basis states are base-D digit strings with qudit 0 as the most
//! significant digit.

mod eigen;
pub mod suite;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::pauli::PauliOp;
use crate::ring::{mod_inverse, RingDim};
use crate::thresholds::NoiseKind;

pub use eigen::hermitian_eigenvalues;

/// Largest Hilbert-space dimension built by this module.
pub const DENSE_GUARD: usize = 4096;
/// Largest dimension accepted by [`pauli_decompose`].
pub const PAULI_GUARD: usize = 256;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// `ω_D^k`.
pub fn omega(d: u64, k: u64) -> C {
    C::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64)
}

fn hilbert_dim(d: RingDim, n: usize, guard: usize) -> Result<usize> {
    match d.pow(n) {
        Some(s) if s as usize <= guard => Ok(s as usize),
        s => Err(Error::Guard { size: s.map_or(u128::MAX, u128::from), limit: guard as u128 }),
    }
}

fn digits(d: u64, n: usize, mut idx: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx as u64 % d;
        idx /= d as usize;
    }
    out
}

fn index(d: u64, digits: &[u64]) -> usize {
    digits.iter().fold(0usize, |acc, &x| acc * d as usize + x as usize)
}

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        (0..n).for_each(|i| m.set(i, i, ONE));
        m
    }

    pub fn from_diag(diag: &[C]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        diag.iter().enumerate().for_each(|(i, &z)| m.set(i, i, z));
        m
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        CMatrix { rows: rows.len(), cols, data: rows.iter().flatten().copied().collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: C) {
        self.data[i * self.cols + j] = z;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, z: C) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * z).collect() }
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |M_ij - conj(M_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().mul(self).max_abs_diff(&CMatrix::identity(self.cols)) < tol
    }
}

/// Matrix of `ω_{2D}^q X^r Z^s`.
pub fn pauli_matrix(p: &PauliOp) -> CMatrix {
    let d = p.d.get();
    let n = p.n();
    let size = d.pow(n as u32) as usize;
    let global = omega(2 * d, p.q);
    let mut m = CMatrix::zeros(size, size);
    for col in 0..size {
        let k = digits(d, n, col);
        let row: Vec<u64> = k.iter().zip(&p.r).map(|(&a, &b)| (a + b) % d).collect();
        let phase = k.iter().zip(&p.s).map(|(&a, &b)| a * b).sum::<u64>() % d;
        m.set(index(d, &row), col, global * omega(d, phase));
    }
    m
}

/// Pure state on `n` qudits of dimension `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub d: RingDim,
    pub n: usize,
    pub amp: Vec<C>,
}

impl StateVector {
    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn density(&self) -> DensityMatrix {
        let s = self.amp.len();
        let mut m = CMatrix::zeros(s, s);
        for i in 0..s {
            for j in 0..s {
                m.set(i, j, self.amp[i] * self.amp[j].conj());
            }
        }
        DensityMatrix { d: self.d, n: self.n, m }
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amp.iter().zip(&other.amp).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies a `D x D` unitary to qudit `k`.
    pub fn apply_local(&self, gate: &CMatrix, k: usize) -> StateVector {
        let d = self.d.get();
        let mut out = vec![ZERO; self.amp.len()];
        for (idx, &a) in self.amp.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let mut dg = digits(d, self.n, idx);
            let col = dg[k] as usize;
            for row in 0..d as usize {
                dg[k] = row as u64;
                out[index(d, &dg)] += gate.get(row, col) * a;
            }
        }
        StateVector { d: self.d, n: self.n, amp: out }
    }

    pub fn apply(&self, op: &CMatrix) -> StateVector {
        StateVector { d: self.d, n: self.n, amp: op.apply(&self.amp) }
    }
}

/// `|Γ⟩ = D^{-n/2} Σ_r ω^{Σ_{i<j} γ_ij r_i r_j} |r⟩`.
pub fn graph_state_vector(g: &AdjacencyMatrix) -> Result<StateVector> {
    let d = g.dim().get();
    let n = g.n();
    let size = hilbert_dim(g.dim(), n, DENSE_GUARD)?;
    let edges = g.edges();
    let norm = 1.0 / (size as f64).sqrt();
    let amp = (0..size)
        .map(|idx| {
            let r = digits(d, n, idx);
            let e = edges.iter().map(|&(i, j, w)| w * r[i] % d * r[j] % d).sum::<u64>() % d;
            omega(d, e) * norm
        })
        .collect();
    Ok(StateVector { d: g.dim(), n, amp })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialState {
    Ghz { d: u64, n: usize },
    W3,
    Plus { d: u64 },
}

pub fn special_state(kind: SpecialState) -> Result<StateVector> {
    match kind {
        SpecialState::Ghz { d, n } => {
            let dim = RingDim::new(d)?;
            let size = hilbert_dim(dim, n, DENSE_GUARD)?;
            let mut amp = vec![ZERO; size];
            let a = C::new(1.0 / (d as f64).sqrt(), 0.0);
            for j in 0..d {
                amp[index(d, &vec![j; n])] = a;
            }
            Ok(StateVector { d: dim, n, amp })
        }
        SpecialState::W3 => {
            let mut amp = vec![ZERO; 8];
            let a = C::new(1.0 / 3f64.sqrt(), 0.0);
            for idx in [4, 2, 1] {
                amp[idx] = a;
            }
            Ok(StateVector { d: RingDim::new(2)?, n: 3, amp })
        }
        SpecialState::Plus { d } => {
            let dim = RingDim::new(d)?;
            Ok(StateVector { d: dim, n: 1, amp: vec![C::new(1.0 / (d as f64).sqrt(), 0.0); d as usize] })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalGate {
    Fourier { d: u64 },
    Mult { d: u64, l: u64 },
    Cz { d: u64, gamma: u64 },
}

/// `F_D`, `M_D(ℓ) = Σ |kℓ⟩⟨k|` or the two-qudit `CZ^γ = Σ |k⟩⟨k| ⊗ Z^{γk}`.
pub fn local_gate(kind: LocalGate) -> Result<CMatrix> {
    match kind {
        LocalGate::Fourier { d } => {
            RingDim::new(d)?;
            let s = d as usize;
            let mut m = CMatrix::zeros(s, s);
            let norm = 1.0 / (d as f64).sqrt();
            for j in 0..d {
                for k in 0..d {
                    m.set(j as usize, k as usize, omega(d, j * k) * norm);
                }
            }
            Ok(m)
        }
        LocalGate::Mult { d, l } => {
            let dim = RingDim::new(d)?;
            if mod_inverse(l % d, dim).is_none() {
                return Err(Error::Invalid(format!("{l} is not invertible mod {d}")));
            }
            let mut m = CMatrix::zeros(d as usize, d as usize);
            for k in 0..d {
                m.set((k * l % d) as usize, k as usize, ONE);
            }
            Ok(m)
        }
        LocalGate::Cz { d, gamma } => {
            RingDim::new(d)?;
            let s = (d * d) as usize;
            let mut m = CMatrix::zeros(s, s);
            for k in 0..d {
                for j in 0..d {
                    let idx = (k * d + j) as usize;
                    m.set(idx, idx, omega(d, gamma * k % d * j));
                }
            }
            Ok(m)
        }
    }
}

/// Density operator on `n` qudits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub d: RingDim,
    pub n: usize,
    pub m: CMatrix,
}

impl DensityMatrix {
    pub fn maximally_mixed(d: RingDim, n: usize) -> Result<Self> {
        let size = hilbert_dim(d, n, DENSE_GUARD)?;
        Ok(DensityMatrix { d, n, m: CMatrix::identity(size).scale(C::new(1.0 / size as f64, 0.0)) })
    }

    pub fn size(&self) -> usize {
        self.m.rows
    }

    pub fn purity(&self) -> f64 {
        self.m.mul(&self.m).trace().re
    }

    fn check_party(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::Invalid(format!("party {k} out of range for n={}", self.n)));
        }
        Ok(())
    }
}

/// White noise: global mixing with `1/D^n`, or the single-qudit depolarizing channel on every qudit.
pub fn apply_noise(rho: &DensityMatrix, kind: NoiseKind, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!("probability {p} not in [0, 1]")));
    }
    hilbert_dim(rho.d, rho.n, DENSE_GUARD)?;
    match kind {
        NoiseKind::Global => {
            let mixed = DensityMatrix::maximally_mixed(rho.d, rho.n)?;
            let m = rho.m.scale(C::new(1.0 - p, 0.0)).add(&mixed.m.scale(C::new(p, 0.0)));
            Ok(DensityMatrix { d: rho.d, n: rho.n, m })
        }
        NoiseKind::Local => {
            let mut cur = rho.clone();
            for k in 0..rho.n {
                cur = depolarize_qudit(&cur, k, p);
            }
            Ok(cur)
        }
    }
}

fn depolarize_qudit(rho: &DensityMatrix, k: usize, p: f64) -> DensityMatrix {
    let d = rho.d.get();
    let n = rho.n;
    let size = rho.size();
    let mut out = rho.m.scale(C::new(1.0 - p, 0.0));
    let w = C::new(p / d as f64, 0.0);
    for a in 0..size {
        let mut da = digits(d, n, a);
        for b in 0..size {
            let mut db = digits(d, n, b);
            if da[k] != db[k] {
                continue;
            }
            let (ak, bk) = (da[k], db[k]);
            let mut sum = ZERO;
            for t in 0..d {
                da[k] = t;
                db[k] = t;
                sum += rho.m.get(index(d, &da), index(d, &db));
            }
            da[k] = ak;
            db[k] = bk;
            out.data[a * size + b] += w * sum;
        }
    }
    DensityMatrix { d: rho.d, n, m: out }
}

/// Reduced state on `keep` (ascending qudit order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.iter().any(|&k| k >= rho.n) {
        return Err(Error::Invalid(format!("bad subset {keep:?} for n={}", rho.n)));
    }
    let d = rho.d.get();
    let n = rho.n;
    let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let ks = d.pow(keep.len() as u32) as usize;
    let ts = d.pow(traced.len() as u32) as usize;
    let mut out = CMatrix::zeros(ks, ks);
    let mut full = vec![0u64; n];
    let compose = |full: &mut Vec<u64>, kept: &[u64], tr: &[u64]| {
        keep.iter().zip(kept).for_each(|(&q, &v)| full[q] = v);
        traced.iter().zip(tr).for_each(|(&q, &v)| full[q] = v);
        index(d, full)
    };
    for a in 0..ks {
        let da = digits(d, keep.len(), a);
        for b in 0..ks {
            let db = digits(d, keep.len(), b);
            let mut sum = ZERO;
            for t in 0..ts {
                let dt = digits(d, traced.len(), t);
                let i = compose(&mut full, &da, &dt);
                let j = compose(&mut full, &db, &dt);
                sum += rho.m.get(i, j);
            }
            out.set(a, b, sum);
        }
    }
    Ok(DensityMatrix { d: rho.d, n: keep.len(), m: out })
}

/// `⟨i,j|ρ^{T_k}|k,l⟩ = ⟨k,j|ρ|i,l⟩` with the transposed index on qudit `party`.
pub fn partial_transpose(rho: &DensityMatrix, party: usize) -> Result<CMatrix> {
    rho.check_party(party)?;
    let d = rho.d.get();
    let size = rho.size();
    let mut out = CMatrix::zeros(size, size);
    for a in 0..size {
        for b in 0..size {
            let mut da = digits(d, rho.n, a);
            let mut db = digits(d, rho.n, b);
            std::mem::swap(&mut da[party], &mut db[party]);
            out.set(a, b, rho.m.get(index(d, &da), index(d, &db)));
        }
    }
    Ok(out)
}

/// `1_A ⊗ Tr_A ρ - ρ` with `A` the qudit `party`.
pub fn reduction_operator(rho: &DensityMatrix, party: usize) -> Result<CMatrix> {
    rho.check_party(party)?;
    let d = rho.d.get();
    let n = rho.n;
    if n < 2 {
        return Err(Error::Invalid("the reduction operator needs n >= 2".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|&k| k != party).collect();
    let reduced = partial_trace(rho, &rest)?;
    let size = rho.size();
    let mut out = rho.m.scale(C::new(-1.0, 0.0));
    for a in 0..size {
        let da = digits(d, n, a);
        for b in 0..size {
            let db = digits(d, n, b);
            if da[party] != db[party] {
                continue;
            }
            let ra: Vec<u64> = rest.iter().map(|&k| da[k]).collect();
            let rb: Vec<u64> = rest.iter().map(|&k| db[k]).collect();
            out.data[a * size + b] += reduced.m.get(index(d, &ra), index(d, &rb));
        }
    }
    Ok(out)
}

/// `-Tr ρ log₂ ρ` with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&hermitian_eigenvalues(&rho.m)?))
}

pub fn entropy_of_spectrum(ev: &[f64]) -> f64 {
    ev.iter().filter(|&&x| x > 1e-15).map(|&x| -x * x.log2()).sum()
}

/// Coefficients `w_{r,s} = Tr[(X^r Z^s)^† ρ]`, indexed by `(index(r), index(s))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliCoefficients {
    pub d: RingDim,
    pub n: usize,
    pub w: Vec<C>,
}

impl PauliCoefficients {
    pub fn get(&self, r: &[u64], s: &[u64]) -> C {
        let d = self.d.get();
        let size = d.pow(self.n as u32) as usize;
        self.w[index(d, r) * size + index(d, s)]
    }

    /// `Σ w_{r,s} X^r Z^s / D^n`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.d.get();
        let size = d.pow(self.n as u32) as usize;
        let mut out = CMatrix::zeros(size, size);
        for ri in 0..size {
            for si in 0..size {
                let w = self.w[ri * size + si];
                if w.norm() < 1e-15 {
                    continue;
                }
                let p = PauliOp { d: self.d, q: 0, r: digits(d, self.n, ri), s: digits(d, self.n, si) };
                out = out.add(&pauli_matrix(&p).scale(w / size as f64));
            }
        }
        out
    }
}

pub fn pauli_decompose(rho: &DensityMatrix) -> Result<PauliCoefficients> {
    let d = rho.d.get();
    let n = rho.n;
    let size = hilbert_dim(rho.d, n, PAULI_GUARD)?;
    let dg: Vec<Vec<u64>> = (0..size).map(|i| digits(d, n, i)).collect();
    let mut w = vec![ZERO; size * size];
    for ri in 0..size {
        let shifted: Vec<usize> =
            (0..size).map(|k| index(d, &dg[k].iter().zip(&dg[ri]).map(|(a, b)| (a + b) % d).collect::<Vec<_>>())).collect();
        for si in 0..size {
            let mut sum = ZERO;
            for k in 0..size {
                let e = dg[k].iter().zip(&dg[si]).map(|(a, b)| a * b).sum::<u64>() % d;
                sum += omega(d, (d - e) % d) * rho.m.get(shifted[k], k);
            }
            w[ri * size + si] = sum;
        }
    }
    Ok(PauliCoefficients { d: rho.d, n, w })
}

/// `ℓ_j = Σ_{swt(r,s)=j} |w_{r,s}|²`.
pub fn sector_from_dense(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let coeffs = pauli_decompose(rho)?;
    let d = rho.d.get();
    let n = rho.n;
    let size = d.pow(n as u32) as usize;
    let mut l = vec![0.0; n + 1];
    for ri in 0..size {
        let r = digits(d, n, ri);
        for si in 0..size {
            let s = digits(d, n, si);
            l[crate::ring::swt(&r, &s)] += coeffs.w[ri * size + si].norm_sqr();
        }
    }
    Ok(l)
}

/// Residual `‖ρ^{T_A} v - λ v‖ / ‖v‖` for the explicit negative eigenvector of
/// a globally depolarized graph state, with `A` = qudit 0 and
/// `λ = p/D^n - (1-p)/D`. Returns `(residual, λ)`.
pub fn verify_ppt_eigenvector(g: &AdjacencyMatrix, p: f64) -> Result<(f64, f64)> {
    let d = g.dim().get();
    let n = g.n();
    if n < 2 || mod_inverse(g.get(0, 1), g.dim()).is_none() {
        return Err(Error::Invalid("the eigenvector needs an invertible weight between qudits 1 and 2".into()));
    }
    let psi = graph_state_vector(g)?;
    let rho = apply_noise(&psi.density(), NoiseKind::Global, p)?;
    let pt = partial_transpose(&rho, 0)?;
    let size = rho.size();
    let v: Vec<C> = (0..size)
        .map(|idx| {
            let s = digits(d, n, idx);
            let inner =
                (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.get(i, j) * s[i] % d * s[j] % d).sum::<u64>() % d;
            let first = (1..n).map(|j| g.get(0, j) * s[j] % d).sum::<u64>() % d;
            let bracket = match s[0] {
                0 => omega(d, first),
                1 => C::new(-1.0, 0.0),
                _ => ZERO,
            };
            omega(d, inner) * bracket
        })
        .collect();
    let lambda = p / size as f64 - (1.0 - p) / d as f64;
    let pv = pt.apply(&v);
    let res: f64 = pv.iter().zip(&v).map(|(a, b)| (a - b * lambda).norm_sqr()).sum::<f64>().sqrt();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok((res / norm, lambda))
}

/// Largest `p` below which the noisy state has a negative partial transpose
/// on `party`, by bisection to `1e-6`. Returns 0 if already PPT at `p = 0`.
pub fn npt_threshold_bisect(state: &StateVector, kind: NoiseKind, party: usize) -> Result<f64> {
    let pure = state.density();
    pure.check_party(party)?;
    let min_ev = |p: f64| -> Result<f64> {
        let rho = apply_noise(&pure, kind, p)?;
        Ok(hermitian_eigenvalues(&partial_transpose(&rho, party)?)?[0])
    };
    if min_ev(0.0)? >= -1e-12 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if min_ev(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
