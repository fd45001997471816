//! Invariant checks that compare closed forms with the dense engine.

use serde::Serialize;

use super::*;
use crate::graph::{make_family, GraphFamily};
use crate::sector::{ghz_analytic, sector_brute};
use crate::thresholds::{damp_sector, entropy_gap, NoiseModel};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

fn check(name: impl Into<String>, tolerance: f64, residual: Result<f64>) -> Check {
    Check { name: name.into(), residual: residual.unwrap_or(f64::INFINITY), tolerance }
}

fn dim(d: u64) -> Result<RingDim> {
    RingDim::new(d)
}

fn stabilizers(d: u64, kind: GraphFamily, n: usize) -> Result<f64> {
    let g = make_family(kind, n, dim(d)?)?;
    let v = graph_state_vector(&g)?;
    Ok(g.stabilizer_generators().iter().map(|s| v.apply(&pauli_matrix(s)).distance(&v)).fold(0.0, f64::max))
}

fn ame_marginals(d: u64) -> Result<f64> {
    let g = make_family(GraphFamily::Ame4Ring, 4, dim(d)?)?;
    let rho = graph_state_vector(&g)?.density();
    let target = CMatrix::identity((d * d) as usize).scale(C::new(1.0 / (d * d) as f64, 0.0));
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in a + 1..4 {
            worst = worst.max(partial_trace(&rho, &[a, b])?.m.max_abs_diff(&target));
        }
    }
    Ok(worst)
}

fn damping(rho: &DensityMatrix, dist: &crate::sector::SectorDistribution, kind: NoiseKind) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in [0.1, 0.5, 0.9] {
        let dense = sector_from_dense(&apply_noise(rho, kind, p)?)?;
        let damped = damp_sector(dist, NoiseModel::new(kind, p)?);
        for (j, x) in dense.iter().enumerate() {
            if let Ok(y) = damped.get(j) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    Ok(worst)
}

fn ppt_eigenvector(g: &AdjacencyMatrix) -> Result<f64> {
    [0.0, 0.3, 0.7].iter().map(|&p| verify_ppt_eigenvector(g, p).map(|r| r.0)).try_fold(0.0, |a: f64, r| r.map(|r| a.max(r)))
}

fn entropy_spectra(d: u64, n: usize) -> Result<f64> {
    let g = make_family(GraphFamily::Line, n, dim(d)?)?;
    let pure = graph_state_vector(&g)?.density();
    let rest: Vec<usize> = (1..n).collect();
    let mut worst: f64 = 0.0;
    for p in [0.05, 0.2, 0.4, 0.6, 0.8] {
        let rho = apply_noise(&pure, NoiseKind::Global, p)?;
        let gap = von_neumann_entropy(&rho)? - von_neumann_entropy(&partial_trace(&rho, &rest)?)?;
        worst = worst.max((gap - entropy_gap(dim(d)?, n, p)).abs());
    }
    Ok(worst)
}

fn brute_vs_dense(d: u64, kind: GraphFamily, n: usize) -> Result<f64> {
    let g = make_family(kind, n, dim(d)?)?;
    let exact = sector_brute(&g)?;
    let dense = sector_from_dense(&graph_state_vector(&g)?.density())?;
    Ok(exact.l.iter().zip(&dense).map(|(&a, b)| (a as f64 - b).abs()).fold(0.0, f64::max))
}

fn ququart_examples() -> Result<f64> {
    let d4 = dim(4)?;
    let g1 = AdjacencyMatrix::from_edges(d4, 2, &[(0, 1, 1)])?;
    let f = local_gate(LocalGate::Fourier { d: 4 })?;
    let out = graph_state_vector(&g1)?.apply_local(&f.adjoint(), 0);
    let mut worst: f64 = (0..16).map(|i| (out.amp[i] - C::new(if i % 5 == 0 { 0.5 } else { 0.0 }, 0.0)).norm()).fold(0.0, f64::max);
    let g2 = AdjacencyMatrix::from_edges(d4, 2, &[(0, 1, 2)])?;
    let h = local_gate(LocalGate::Fourier { d: 2 })?;
    let out = graph_state_vector(&g2)?.apply(&h.kron(&h).kron(&CMatrix::identity(4)));
    for (i, a) in out.amp.iter().enumerate() {
        let e = if [0, 2, 5, 7].contains(&i) { 0.5 } else { 0.0 };
        worst = worst.max((a - C::new(e, 0.0)).norm());
    }
    Ok(worst)
}

fn npt(state: Result<StateVector>, target: f64) -> Result<f64> {
    Ok((npt_threshold_bisect(&state?, NoiseKind::Global, 0)? - target).abs())
}

/// Runs every check; `deep` adds larger dimensions.
pub fn run_suite(deep: bool) -> Vec<Check> {
    let mut out = Vec::new();
    for d in [2, 3, 5] {
        for kind in [GraphFamily::Line, GraphFamily::Ring, GraphFamily::Star] {
            out.push(check(format!("stabilizers {} n=3 D={d}", kind.name()), 1e-10, stabilizers(d, kind, 3)));
        }
    }
    let ame_dims: &[u64] = if deep { &[3, 5, 7] } else { &[3, 5] };
    for &d in ame_dims {
        out.push(check(format!("ame4 two-party marginals D={d}"), 1e-10, ame_marginals(d)));
    }
    for d in [2u64, 3] {
        for n in 2..=3 {
            let ghz = special_state(SpecialState::Ghz { d, n }).map(|s| s.density());
            let dist = dim(d).and_then(|dd| ghz_analytic(dd, n));
            for kind in [NoiseKind::Global, NoiseKind::Local] {
                let r = ghz.as_ref().map_err(Clone::clone).and_then(|rho| damping(rho, dist.as_ref().map_err(Clone::clone)?, kind));
                out.push(check(format!("damping {kind} ghz D={d} n={n}"), 1e-10, r));
            }
            let line = dim(d).and_then(|dd| make_family(GraphFamily::Line, n, dd));
            for kind in [NoiseKind::Global, NoiseKind::Local] {
                let r =
                    line.as_ref().map_err(Clone::clone).and_then(|g| damping(&graph_state_vector(g)?.density(), &sector_brute(g)?, kind));
                out.push(check(format!("damping {kind} line D={d} n={n}"), 1e-10, r));
            }
        }
    }
    let mut eig_cases =
        vec![(2u64, GraphFamily::Line, 2usize), (3, GraphFamily::Line, 2), (2, GraphFamily::Line, 3), (3, GraphFamily::Ame4Ring, 4)];
    if deep {
        eig_cases.extend([(5, GraphFamily::Line, 3), (5, GraphFamily::Ame4Ring, 4)]);
    }
    for (d, kind, n) in eig_cases {
        let r = dim(d).and_then(|dd| make_family(kind, n, dd)).and_then(|g| ppt_eigenvector(&g));
        out.push(check(format!("ppt eigenvector {} D={d} n={n}", kind.name()), 1e-9, r));
    }
    out.push(check("npt werner 2/3", 1e-6, npt(special_state(SpecialState::Ghz { d: 2, n: 2 }), 2.0 / 3.0)));
    out.push(check("npt ghz D=2 n=3 0.8", 1e-6, npt(special_state(SpecialState::Ghz { d: 2, n: 3 }), 0.8)));
    out.push(check("npt w state 0.7904", 5e-4, npt(special_state(SpecialState::W3), 0.7904)));
    for (d, n) in [(2u64, 2usize), (2, 3), (3, 3)] {
        out.push(check(format!("entropy spectra D={d} n={n}"), 1e-9, entropy_spectra(d, n)));
    }
    let max_n = if deep { 7 } else { 5 };
    for kind in [GraphFamily::Star, GraphFamily::Line, GraphFamily::Ring] {
        for n in 3..=max_n {
            out.push(check(format!("brute vs dense {} D=2 n={n}", kind.name()), 1e-9, brute_vs_dense(2, kind, n)));
        }
    }
    out.push(check("brute vs dense ame4 D=3", 1e-9, brute_vs_dense(3, GraphFamily::Ame4Ring, 4)));
    out.push(check("ququart gate examples", 1e-10, ququart_examples()));
    out
}
