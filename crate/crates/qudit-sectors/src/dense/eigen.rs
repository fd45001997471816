//! Eigenvalues of Hermitian matrices: Householder reduction to a real
//! tridiagonal matrix followed by implicit QL iterations.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 90;

/// Sorted (ascending) eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    if m.rows != m.cols {
        return Err(Error::Mismatch(format!("{}x{} matrix is not square", m.rows, m.cols)));
    }
    let scale = m.data.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let asym = m.hermiticity_defect();
    if asym > 1e-9 * scale {
        return Err(Error::Invalid(format!("matrix is not Hermitian (defect {asym:e})")));
    }
    let (mut d, mut e) = tridiagonalize(m);
    ql_implicit(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Returns the diagonal and the moduli of the sub-diagonal; `e[i]` couples `i` and `i+1`.
fn tridiagonalize(m: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.rows;
    let mut a = m.data.clone();
    let at = |i: usize, j: usize| i * n + j;
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        if tail_zero(&a, n, k) {
            continue;
        }
        let alpha = (k + 1..n).map(|i| a[at(i, k)].norm_sqr()).sum::<f64>().sqrt();
        let x0 = a[at(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        u.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for i in k + 1..n {
            u[i] = a[at(i, k)];
        }
        u[k + 1] += phase * alpha;
        let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        u.iter_mut().for_each(|z| *z /= norm);
        for i in 0..n {
            p[i] = (k + 1..n).map(|j| a[at(i, j)] * u[j]).sum();
        }
        let beta: f64 = (k + 1..n).map(|i| (u[i].conj() * p[i]).re).sum();
        for i in 0..n {
            p[i] -= u[i] * beta;
        }
        for i in 0..n {
            for j in 0..n {
                a[at(i, j)] -= (u[i] * p[j].conj() + p[i] * u[j].conj()) * 2.0;
            }
        }
    }
    let d = (0..n).map(|i| a[at(i, i)].re).collect();
    let mut e: Vec<f64> = (0..n.saturating_sub(1)).map(|i| a[at(i + 1, i)].norm()).collect();
    e.push(0.0);
    (d, e)
}

/// True when the column below the sub-diagonal is already zero.
fn tail_zero(a: &[Complex64], n: usize, k: usize) -> bool {
    (k + 2..n).all(|i| a[i * n + k].norm() == 0.0)
}

fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::Inconsistent("QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Oracle: eigenvalues of the real embedding `[[A, -B], [B, A]]`, each appearing twice.
    fn embedded(m: &CMatrix) -> Vec<f64> {
        let n = m.rows;
        let big = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let z = m.get(i % n, j % n);
            match (i < n, j < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        });
        let mut ev: Vec<f64> = big.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev.into_iter().step_by(2).collect()
    }

    #[test]
    fn diagonal_and_pauli_y() {
        let m = CMatrix::from_diag(&[c(3.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![-1.0, 2.0, 3.0]);
        let y = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]);
        let ev = hermitian_eigenvalues(&y).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]);
        assert!(hermitian_eigenvalues(&m).is_err());
    }

    #[test]
    fn degenerate_spectrum() {
        let mut m = CMatrix::identity(6).scale(c(0.25, 0.0));
        m.set(0, 0, c(1.0, 0.0));
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(ev.len(), 6);
        assert!((ev[5] - 1.0).abs() < 1e-14);
    }

    fn arb_hermitian() -> impl Strategy<Value = CMatrix> {
        (1usize..=12).prop_flat_map(|n| {
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
                let mut m = CMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        let (a, b) = v[i * n + j];
                        m.set(i, j, c(a, b));
                    }
                }
                let h = m.add(&m.adjoint());
                h.scale(c(0.5, 0.0))
            })
        })
    }

    proptest! {
        #[test]
        fn matches_real_embedding(m in arb_hermitian()) {
            let ours = hermitian_eigenvalues(&m).unwrap();
            let oracle = embedded(&m);
            for (a, b) in ours.iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-10, "{ours:?} vs {oracle:?}");
            }
            let tr: f64 = (0..m.rows).map(|i| m.get(i, i).re).sum();
            prop_assert!((ours.iter().sum::<f64>() - tr).abs() < 1e-10);
        }
    }
}
