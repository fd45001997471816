//! White-noise robustness thresholds.
//!
//! Every threshold is the largest noise probability below which a criterion
//! still certifies some kind of entanglement. Rational formulas are also
//! available exactly as [`Ratio`].

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::bounds::{bound, BoundMode, Partition};
use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::ring::{mod_inverse, RingDim};
use crate::sector::SectorDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    /// `(1-p)|ψ⟩⟨ψ| + p·1/D^n`
    Global,
    /// Single-qudit depolarizing channel on every qudit.
    Local,
}

impl NoiseKind {
    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::Global => "global",
            NoiseKind::Local => "local",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "global" | "global_white" => Ok(NoiseKind::Global),
            "local" | "local_white" => Ok(NoiseKind::Local),
            _ => Err(Error::Invalid(format!("unknown noise model '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub p: f64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Invalid(format!("probability {p} not in [0, 1]")));
        }
        Ok(NoiseModel { kind, p })
    }
}

/// Sector lengths of a noisy state; `None` where the damping law is not known.
#[derive(Debug, Clone, PartialEq)]
pub struct DampedSectors {
    pub n: usize,
    pub l: Vec<Option<f64>>,
}

impl DampedSectors {
    /// Fails for entries the noise model leaves undetermined.
    pub fn get(&self, j: usize) -> Result<f64> {
        self.l.get(j).copied().flatten().ok_or_else(|| Error::Invalid(format!("ℓ_{j} is not determined under this noise model")))
    }
}

/// Global noise scales every `ℓ_j` with `j ≥ 1` by `(1-p)²`; local noise scales
/// `ℓ_n` by `(1-p)^{2n}`.
pub fn damp_sector(dist: &SectorDistribution, model: NoiseModel) -> DampedSectors {
    let n = dist.n;
    let q = 1.0 - model.p;
    let l = dist
        .l
        .iter()
        .enumerate()
        .map(|(j, &v)| match (model.kind, j) {
            (_, 0) => Some(v as f64),
            (NoiseKind::Global, _) => Some(v as f64 * q * q),
            (NoiseKind::Local, j) if j == n => Some(v as f64 * q.powi(2 * n as i32)),
            (NoiseKind::Local, _) => None,
        })
        .collect();
    DampedSectors { n, l }
}

/// `1 - √(b/ℓ)` (global) or `1 - (b/ℓ)^{1/2n}` (local); 0 when `b ≥ ℓ`.
pub fn sector_threshold(l: u128, b: u128, kind: NoiseKind, n: usize) -> Result<f64> {
    if l == 0 {
        return Err(Error::Invalid("sector length must be positive".into()));
    }
    if b >= l {
        return Ok(0.0);
    }
    let ratio = b as f64 / l as f64;
    Ok(match kind {
        NoiseKind::Global => 1.0 - ratio.sqrt(),
        NoiseKind::Local => {
            if n == 0 {
                return Err(Error::Invalid("n must be positive".into()));
            }
            1.0 - ratio.powf(1.0 / (2 * n) as f64)
        }
    })
}

fn one_minus_inverse(x: u128) -> Ratio<u128> {
    Ratio::new(x, x + 1)
}

fn pow_checked(d: u64, e: usize) -> Result<u128> {
    (d as u128).checked_pow(e as u32).ok_or_else(|| Error::Invalid(format!("{d}^{e} overflows")))
}

/// `1 - 1/(D^{n-1} + 1)`.
pub fn ppt_threshold_global(d: RingDim, n: usize) -> Result<Ratio<u128>> {
    if n < 2 {
        return Err(Error::Invalid(format!("PPT threshold needs n >= 2, got {n}")));
    }
    Ok(one_minus_inverse(pow_checked(d.get(), n - 1)?))
}

/// Threshold after splitting every qudit into a `d = D/g` part carrying
/// `Γ/g` and a product part: `1 - 1/(D^n/d + 1)`, which is
/// `1 - 1/(d^{ng-1} + 1)` when `D = d^g`.
pub fn ppt_threshold_gcd(g: &AdjacencyMatrix) -> Result<Ratio<u128>> {
    if g.n() < 2 {
        return Err(Error::Invalid("PPT threshold needs n >= 2".into()));
    }
    let (_, _, small) = g.gcd_reduce()?;
    Ok(one_minus_inverse(pow_checked(g.dim().get(), g.n())? / small as u128))
}

fn spectrum_entropy(parts: &[(f64, f64)]) -> f64 {
    parts.iter().filter(|(x, m)| *x > 0.0 && *m > 0.0).map(|&(x, m)| -m * x * x.log2()).sum()
}

/// Entropy of a globally depolarized graph state minus that of its
/// `(n-1)`-party marginal, from the closed-form spectra.
pub fn entropy_gap(d: RingDim, n: usize, p: f64) -> f64 {
    let dd = d.get() as f64;
    let big = dd.powi(n as i32);
    let small = dd.powi(n as i32 - 1);
    let full = spectrum_entropy(&[(1.0 - p + p / big, 1.0), (p / big, big - 1.0)]);
    let reduced = spectrum_entropy(&[((1.0 - p) / dd + p / small, dd), (p / small, small - dd)]);
    full - reduced
}

/// The `p` where `S[ρ] = S[Tr_A ρ]`, by bisection to `1e-9`.
pub fn entropy_threshold_global(d: RingDim, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Invalid(format!("entropy threshold needs n >= 2, got {n}")));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if entropy_gap(d, n, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `D^n/(D^n - 1)·(1 - α)`, clamped to `[0, 1]`.
pub fn witness_gme_threshold(d: RingDim, n: usize, alpha: Ratio<u128>) -> Result<Ratio<u128>> {
    if alpha <= Ratio::from_integer(0) || alpha >= Ratio::from_integer(1) {
        return Err(Error::Invalid(format!("overlap {alpha} not in (0, 1)")));
    }
    let big = pow_checked(d.get(), n)?;
    let v = Ratio::new(big, big - 1) * (Ratio::from_integer(1) - alpha);
    Ok(v.min(Ratio::from_integer(1)))
}

/// `1 - γ/(γ + D^{n-1})`.
pub fn huber_threshold(d: RingDim, n: usize, gamma: u128) -> Result<Ratio<u128>> {
    if gamma == 0 || n == 0 {
        return Err(Error::Invalid("γ and n must be positive".into()));
    }
    let big = pow_checked(d.get(), n - 1)?;
    Ok(Ratio::new(big, gamma + big))
}

/// Positive-map GME threshold; zero for qubits.
pub fn posmap_gme_threshold(d: RingDim, n: usize) -> Result<Ratio<u128>> {
    if n < 2 {
        return Err(Error::Invalid(format!("needs n >= 2, got {n}")));
    }
    let dm2 = d.get() as u128 - 2;
    let a = 1 + dm2 * ((1u128 << (n - 1)) - 1);
    let big = dm2 * pow_checked(d.get(), n - 1)?;
    Ok(Ratio::new(big, a + big))
}

/// Local-noise PPT threshold of the GHZ state.
pub fn ghz_local_ppt_threshold(d: RingDim, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Invalid(format!("needs n >= 2, got {n}")));
    }
    let dd = d.get() as f64;
    let root = |x: f64| x.powf(1.0 / n as f64);
    let a = root(4.0) + root(2.0) * (4.0 + root(2.0 * dd)).sqrt();
    Ok(1.0 - a / (a + 2.0 * dd))
}

/// `1 - 1/√(2^{2-2/n} + 1)`.
pub fn ghz_local_ppt_qubit(n: usize) -> f64 {
    1.0 - 1.0 / (2f64.powf(2.0 - 2.0 / n as f64) + 1.0).sqrt()
}

/// `1 - 2^{-2/(m_i + m_j + 2)}`.
pub fn distillation_local_threshold(mi: usize, mj: usize) -> Result<f64> {
    if mi == 0 || mj == 0 {
        return Err(Error::Invalid("degrees must be positive".into()));
    }
    Ok(1.0 - 2f64.powf(-2.0 / (mi + mj + 2) as f64))
}

/// `1 - φ^{-1/2}` with `φ` the real root of `x³ = x² + 1`.
pub fn line_local_limit() -> f64 {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid * mid - mid * mid - 1.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    1.0 - (0.5 * (lo + hi)).powf(-0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Sector,
    Ppt,
    Reduction,
    Entropy,
    Witness,
    Huber,
    PosMap,
    Distillation,
}

impl Criterion {
    pub const ALL: [Criterion; 8] = [
        Criterion::Sector,
        Criterion::Ppt,
        Criterion::Reduction,
        Criterion::Entropy,
        Criterion::Witness,
        Criterion::Huber,
        Criterion::PosMap,
        Criterion::Distillation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Sector => "sector",
            Criterion::Ppt => "ppt",
            Criterion::Reduction => "reduction",
            Criterion::Entropy => "entropy",
            Criterion::Witness => "witness",
            Criterion::Huber => "huber",
            Criterion::PosMap => "posmap",
            Criterion::Distillation => "distillation",
        }
    }

    /// Comma-separated list; empty means all.
    pub fn parse_list(s: &str) -> Result<Vec<Criterion>> {
        let mut out: Vec<Criterion> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect::<Result<_>>()?;
        if out.is_empty() {
            out = Self::ALL.to_vec();
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Criterion::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Invalid(format!("unknown criterion '{s}'")))
    }
}

/// Which closed forms apply to a state.
#[derive(Debug, Clone, PartialEq)]
pub enum StateKind {
    Ghz,
    Graph(AdjacencyMatrix),
}

/// A state resolved to its sector distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdState {
    pub label: String,
    pub dist: SectorDistribution,
    pub kind: StateKind,
}

impl ThresholdState {
    pub fn d(&self) -> RingDim {
        self.dist.d
    }

    pub fn n(&self) -> usize {
        self.dist.n
    }
}

fn round12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x, 12))
}

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", (digits - 1) as usize, x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub state: String,
    #[serde(rename = "D")]
    pub d: u64,
    pub n: usize,
    pub model: NoiseKind,
    pub criterion: String,
    pub partition: Option<String>,
    #[serde(serialize_with = "round12")]
    pub p_crit: f64,
}

fn ratio_f64(r: Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn is_connected(g: &AdjacencyMatrix) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn is_prime(d: u64) -> bool {
    d >= 2 && (2..).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k))
}

fn has_invertible_edge(g: &AdjacencyMatrix) -> bool {
    g.edges().iter().any(|&(_, _, w)| mod_inverse(w, g.dim()).is_some())
}

/// Partitions used for sector thresholds: full separability, `(j,1,…,1)` for
/// `2 ≤ j ≤ 4`, and semiseparability.
pub fn sector_partitions(n: usize) -> Result<Vec<Partition>> {
    let mut out = vec![Partition::fully_separable(n)?];
    for j in 2..=4.min(n - 1) {
        out.push(Partition::head_and_ones(j, n)?);
    }
    if n >= 2 {
        out.push(Partition::semiseparable(n)?);
    }
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    Ok(out)
}

/// Best sector threshold for partition `p`: the maximum over `j` (global) or
/// the full body alone (local).
pub fn sector_threshold_for(dist: &SectorDistribution, p: &Partition, kind: NoiseKind) -> Result<f64> {
    let mode = if dist.d.get() == 2 { BoundMode::QubitTight } else { BoundMode::Generic };
    let b = bound(dist.d, p, mode)?;
    let n = dist.n;
    match kind {
        NoiseKind::Global => (1..=n)
            .filter(|&j| dist.l[j] > 0)
            .map(|j| sector_threshold(dist.l[j], b.get(j), kind, n))
            .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v))),
        NoiseKind::Local => sector_threshold(dist.l[n], b.get(n), kind, n),
    }
}

/// One report per applicable (criterion, partition) pair, in criterion order.
pub fn threshold_table(state: &ThresholdState, criteria: &[Criterion], kind: NoiseKind) -> Result<Vec<ThresholdReport>> {
    let d = state.d();
    let n = state.n();
    if n < 2 {
        return Err(Error::Invalid("thresholds need at least two qudits".into()));
    }
    let full = Partition::fully_separable(n)?.label();
    let semi = Partition::semiseparable(n)?.label();
    let mut out = Vec::new();
    let mut push = |criterion: &str, partition: Option<String>, p: f64| {
        out.push(ThresholdReport {
            state: state.label.clone(),
            d: d.get(),
            n,
            model: kind,
            criterion: criterion.to_string(),
            partition,
            p_crit: p.clamp(0.0, 1.0),
        });
    };
    let graph = match &state.kind {
        StateKind::Graph(g) => Some(g),
        StateKind::Ghz => None,
    };
    let ghz = graph.is_none();
    let mut criteria = criteria.to_vec();
    criteria.sort_unstable();
    criteria.dedup();
    for c in criteria {
        match (c, kind) {
            (Criterion::Sector, _) => {
                for p in sector_partitions(n)? {
                    push(c.name(), Some(p.label()), sector_threshold_for(&state.dist, &p, kind)?);
                }
            }
            (Criterion::Ppt, NoiseKind::Global) => {
                if graph.is_some_and(AdjacencyMatrix::is_zero) {
                    continue;
                }
                push(c.name(), Some(full.clone()), ratio_f64(ppt_threshold_global(d, n)?));
                if let Some(g) = graph {
                    let (_, gg, _) = g.gcd_reduce()?;
                    if gg > 1 {
                        push("ppt_gcd", Some(full.clone()), ratio_f64(ppt_threshold_gcd(g)?));
                    }
                }
            }
            (Criterion::Ppt, NoiseKind::Local) if ghz => {
                push(c.name(), Some(full.clone()), ghz_local_ppt_threshold(d, n)?);
            }
            (Criterion::Reduction, NoiseKind::Global) => {
                if graph.is_some_and(AdjacencyMatrix::is_zero) {
                    continue;
                }
                push(c.name(), Some(full.clone()), ratio_f64(ppt_threshold_global(d, n)?));
            }
            (Criterion::Entropy, NoiseKind::Global) => {
                if graph.is_some_and(|g| !has_invertible_edge(g)) {
                    continue;
                }
                push(c.name(), Some(full.clone()), entropy_threshold_global(d, n)?);
            }
            (Criterion::Witness, NoiseKind::Global) => {
                let applies = graph.is_none_or(|g| is_connected(g) && is_prime(d.get()));
                if applies {
                    let alpha = Ratio::new(1, d.get() as u128);
                    push(c.name(), None, ratio_f64(witness_gme_threshold(d, n, alpha)?));
                }
            }
            (Criterion::Huber, NoiseKind::Global) if ghz => {
                push(c.name(), Some(full.clone()), ratio_f64(huber_threshold(d, n, 1)?));
                push(c.name(), Some(semi.clone()), ratio_f64(huber_threshold(d, n, n as u128)?));
                push(c.name(), None, ratio_f64(huber_threshold(d, n, (1u128 << (n - 1)) - 1)?));
            }
            (Criterion::PosMap, NoiseKind::Global) if ghz => {
                push(c.name(), None, ratio_f64(posmap_gme_threshold(d, n)?));
            }
            (Criterion::Distillation, NoiseKind::Local) if d.get() == 2 => {
                let degrees = match graph {
                    None => Some((n - 1, 1)),
                    Some(g) => g.edges().iter().map(|&(i, j, _)| (g.degree(i), g.degree(j))).min_by_key(|&(a, b)| (a + b, a.max(b))),
                };
                if let Some((a, b)) = degrees {
                    push(c.name(), Some(full.clone()), distillation_local_threshold(a, b)?);
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::enumerate_partitions;
    use crate::graph::{make_family, GraphFamily};
    use crate::sector::{ame4_analytic, family_full_body, ghz_analytic, sector_brute};

    fn dim(d: u64) -> RingDim {
        RingDim::new(d).unwrap()
    }

    fn ghz_state(d: u64, n: usize) -> ThresholdState {
        ThresholdState { label: format!("ghz:{d},{n}"), dist: ghz_analytic(dim(d), n).unwrap(), kind: StateKind::Ghz }
    }

    fn find<'a>(rows: &'a [ThresholdReport], c: &str, p: Option<&str>) -> &'a ThresholdReport {
        rows.iter().find(|r| r.criterion == c && r.partition.as_deref() == p).unwrap()
    }

    #[test]
    fn damping() {
        let dist = ghz_analytic(dim(2), 3).unwrap();
        let half = damp_sector(&dist, NoiseModel::new(NoiseKind::Global, 0.5).unwrap());
        assert_eq!(half.get(3).unwrap(), 1.0);
        assert_eq!(half.get(0).unwrap(), 1.0);
        let same = damp_sector(&dist, NoiseModel::new(NoiseKind::Global, 0.0).unwrap());
        assert!(same.l.iter().zip(&dist.l).all(|(a, &b)| a.unwrap() == b as f64));
        let gone = damp_sector(&dist, NoiseModel::new(NoiseKind::Local, 1.0).unwrap());
        assert_eq!(gone.get(3).unwrap(), 0.0);
        assert!(gone.get(2).is_err());
        assert!(NoiseModel::new(NoiseKind::Local, -0.1).is_err());
    }

    #[test]
    fn sector_threshold_examples() {
        let w = sector_threshold(3, 1, NoiseKind::Global, 2).unwrap();
        assert!((w - (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-15);
        assert!((w - 0.4226).abs() < 1e-4);
        assert_eq!(sector_threshold(5, 5, NoiseKind::Global, 2).unwrap(), 0.0);
        assert_eq!(sector_threshold(5, 7, NoiseKind::Local, 2).unwrap(), 0.0);
        let g4 = sector_threshold(9, 1, NoiseKind::Local, 4).unwrap();
        assert!((g4 - 0.2401).abs() < 1e-4);
        assert!(sector_threshold(0, 1, NoiseKind::Global, 2).is_err());
    }

    #[test]
    fn ppt_examples() {
        assert_eq!(ppt_threshold_global(dim(2), 2).unwrap(), Ratio::new(2, 3));
        assert_eq!(ppt_threshold_global(dim(2), 3).unwrap(), Ratio::new(4, 5));
        assert!(ppt_threshold_global(dim(2), 1).is_err());
        let g = AdjacencyMatrix::from_edges(dim(4), 2, &[(0, 1, 2)]).unwrap();
        assert_eq!(ppt_threshold_global(g.dim(), 2).unwrap(), Ratio::new(4, 5));
        assert_eq!(ppt_threshold_gcd(&g).unwrap(), Ratio::new(8, 9));
        let inv = AdjacencyMatrix::from_edges(dim(5), 3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
        assert_eq!(ppt_threshold_gcd(&inv).unwrap(), ppt_threshold_global(dim(5), 3).unwrap());
    }

    #[test]
    fn gcd_form_matches_power_form() {
        // D = 4 splits into g = 2 qubits: 1 - 1/(d^{ng-1} + 1)
        for n in 2..=6 {
            let mut adj = AdjacencyMatrix::empty(dim(4), n);
            (1..n).for_each(|k| adj.set(k - 1, k, 2));
            assert_eq!(ppt_threshold_gcd(&adj).unwrap(), one_minus_inverse(2u128.pow(2 * n as u32 - 1)));
        }
    }

    #[test]
    fn entropy() {
        let p = entropy_threshold_global(dim(2), 2).unwrap();
        assert!((p - 0.2524).abs() < 5e-4);
        assert!(entropy_gap(dim(3), 2, 0.0) < 0.0);
        assert!((entropy_gap(dim(3), 2, 0.0) + 3f64.log2()).abs() < 1e-12);
        let q = entropy_threshold_global(dim(2), 3).unwrap();
        assert!(q > 0.0 && q < 0.8);
    }

    #[test]
    fn literature_examples() {
        let half = Ratio::new(1, 2);
        assert_eq!(witness_gme_threshold(dim(2), 3, half).unwrap(), Ratio::new(4, 7));
        let ame = witness_gme_threshold(dim(5), 4, Ratio::new(1, 5)).unwrap();
        assert_eq!(ame, Ratio::new(625 * 4, 624 * 5));
        assert!((ratio_f64(ame) - 0.8013).abs() < 1e-4);
        assert!(witness_gme_threshold(dim(2), 3, Ratio::from_integer(1)).is_err());
        assert_eq!(witness_gme_threshold(dim(2), 3, Ratio::new(999_999, 1_000_000)).unwrap(), Ratio::new(8, 7_000_000));
        for d in 2..=7 {
            for n in 2..=8 {
                assert_eq!(huber_threshold(dim(d), n, 1).unwrap(), ppt_threshold_global(dim(d), n).unwrap());
            }
        }
        assert_eq!(huber_threshold(dim(2), 4, 4).unwrap(), Ratio::new(2, 3));
        for n in 3..=10 {
            let semi = huber_threshold(dim(2), n, n as u128).unwrap();
            assert_eq!(semi, Ratio::new(1u128 << (n - 1), n as u128 + (1 << (n - 1))));
        }
        assert_eq!(posmap_gme_threshold(dim(2), 5).unwrap(), Ratio::from_integer(0));
        assert_eq!(posmap_gme_threshold(dim(3), 3).unwrap(), Ratio::new(9, 13));
        assert_eq!(posmap_gme_threshold(dim(3), 4).unwrap(), Ratio::new(27, 35));
    }

    #[test]
    fn ghz_local_ppt() {
        for n in 2..=12 {
            let general = ghz_local_ppt_threshold(dim(2), n).unwrap();
            assert!((general - ghz_local_ppt_qubit(n)).abs() < 1e-12, "n={n}");
        }
        assert!((ghz_local_ppt_qubit(2) - 0.4226).abs() < 1e-4);
        assert!((ghz_local_ppt_qubit(10_000) - (1.0 - 1.0 / 5f64.sqrt())).abs() < 1e-4);
    }

    #[test]
    fn distillation() {
        assert!((distillation_local_threshold(1, 1).unwrap() - 0.2929).abs() < 1e-4);
        assert!((distillation_local_threshold(5, 1).unwrap() - 0.1591).abs() < 1e-4);
        assert!((distillation_local_threshold(2, 2).unwrap() - 0.2063).abs() < 1e-4);
        assert!(distillation_local_threshold(0, 2).is_err());
    }

    #[test]
    fn line_limit() {
        assert!((line_local_limit() - 0.174).abs() < 5e-4);
        // the sequence approaches the limit from above, decreasing from n = 5 on
        let p = |n: usize| sector_threshold(family_full_body(GraphFamily::Line, n).unwrap(), 1, NoiseKind::Local, n).unwrap();
        assert!(p(5) > p(4));
        for n in 6..=120 {
            assert!(p(n) < p(n - 1), "n={n}");
            assert!(p(n) > line_local_limit(), "n={n}");
        }
        assert!((p(120) - line_local_limit()).abs() < 1e-3);
        assert!((p(28) - 0.174).abs() < 0.005);
    }

    #[test]
    fn table_for_ghz4() {
        let rows = threshold_table(&ghz_state(2, 4), &Criterion::ALL, NoiseKind::Global).unwrap();
        assert!((find(&rows, "ppt", Some("1+1+1+1")).p_crit - 8.0 / 9.0).abs() < 1e-15);
        assert!((find(&rows, "witness", None).p_crit - 16.0 / 30.0).abs() < 1e-15);
        assert!((find(&rows, "sector", Some("1+1+1+1")).p_crit - 2.0 / 3.0).abs() < 1e-15);
        assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r.p_crit)));
        let local = threshold_table(&ghz_state(2, 4), &Criterion::ALL, NoiseKind::Local).unwrap();
        assert!(local.iter().any(|r| r.criterion == "ppt"));
        assert!(local.iter().all(|r| r.criterion != "witness"));
    }

    #[test]
    fn table_for_ame4_qutrit() {
        let g = make_family(GraphFamily::Ame4Ring, 4, dim(3)).unwrap();
        let state = ThresholdState { label: "ame4:3".into(), dist: ame4_analytic(dim(3)).unwrap(), kind: StateKind::Graph(g) };
        let rows = threshold_table(&state, &[Criterion::Sector], NoiseKind::Global).unwrap();
        let semi = find(&rows, "sector", Some("3+1"));
        assert_eq!(semi.p_crit, 0.0);
        assert_eq!(bound(dim(3), &Partition::semiseparable(4).unwrap(), BoundMode::Generic).unwrap().get(4), 52);
        assert!(state.dist.l[4] == 48);
    }

    #[test]
    fn sector_partition_order() {
        let labels: Vec<String> = sector_partitions(6).unwrap().iter().map(Partition::label).collect();
        assert_eq!(labels, vec!["5+1", "4+1+1", "3+1+1+1", "2+1+1+1+1", "1+1+1+1+1+1"]);
        let labels: Vec<String> = sector_partitions(3).unwrap().iter().map(Partition::label).collect();
        assert_eq!(labels, vec!["2+1", "1+1+1"]);
    }

    #[test]
    fn criteria_parsing() {
        assert_eq!(Criterion::parse_list("ppt, sector").unwrap(), vec![Criterion::Sector, Criterion::Ppt]);
        assert_eq!(Criterion::parse_list("").unwrap().len(), 8);
        assert!(Criterion::parse_list("bogus").is_err());
        assert_eq!("local".parse::<NoiseKind>().unwrap(), NoiseKind::Local);
    }

    #[test]
    fn sector_below_ppt_for_small_graphs() {
        for d in 2..=5 {
            for kind in [GraphFamily::Line, GraphFamily::Ring, GraphFamily::Star] {
                for n in kind.min_n().max(2)..=5 {
                    let g = make_family(kind, n, dim(d)).unwrap();
                    let dist = sector_brute(&g).unwrap();
                    let ppt = ratio_f64(ppt_threshold_global(dim(d), n).unwrap());
                    for p in enumerate_partitions(n).unwrap() {
                        let s = sector_threshold_for(&dist, &p, NoiseKind::Global).unwrap();
                        assert!(s < ppt, "{kind:?} n={n} D={d} {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(2.0 / 3.0, 12), 0.666666666667);
        assert_eq!(round_sig(0.8, 12), 0.8);
        assert_eq!(round_sig(0.0, 12), 0.0);
    }
}
