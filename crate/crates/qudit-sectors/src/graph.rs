//! Weighted graphs over Z/DZ and their graph-state stabilizers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliOp, StabilizerGroupSpec};
use crate::ring::{gcd, RingDim};

/// Symmetric, zero-diagonal adjacency matrix with entries in `[0, D)`.
///
/// Vertices are 0-based in the API; the text format and the CLI use 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    d: RingDim,
    n: usize,
    gamma: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    Star,
    Line,
    Ring,
    Dandelion,
    Ame4Ring,
    Custom,
}

impl GraphFamily {
    pub const QUBIT_FAMILIES: [GraphFamily; 4] = [GraphFamily::Star, GraphFamily::Dandelion, GraphFamily::Line, GraphFamily::Ring];

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Star => "star",
            GraphFamily::Line => "line",
            GraphFamily::Ring => "ring",
            GraphFamily::Dandelion => "dandelion",
            GraphFamily::Ame4Ring => "ame4_ring",
            GraphFamily::Custom => "custom",
        }
    }

    /// Smallest vertex count the family is defined for.
    pub fn min_n(self) -> usize {
        match self {
            GraphFamily::Star | GraphFamily::Line => 1,
            GraphFamily::Ring => 3,
            GraphFamily::Ame4Ring => 4,
            GraphFamily::Dandelion => 5,
            GraphFamily::Custom => 1,
        }
    }
}

impl std::str::FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "star" => GraphFamily::Star,
            "line" => GraphFamily::Line,
            "ring" => GraphFamily::Ring,
            "dandelion" => GraphFamily::Dandelion,
            "ame4_ring" | "ame4" => GraphFamily::Ame4Ring,
            "custom" => GraphFamily::Custom,
            other => return Err(Error::Invalid(format!("unknown graph family '{other}'"))),
        })
    }
}

impl AdjacencyMatrix {
    /// The empty graph on `n` vertices.
    pub fn empty(d: RingDim, n: usize) -> Self {
        AdjacencyMatrix { d, n, gamma: vec![0; n * n] }
    }

    /// Builds a graph from 0-based weighted edges. Rejects loops, duplicates and weights outside `(0, D)`.
    pub fn from_edges(d: RingDim, n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut g = Self::empty(d, n);
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::Invalid(format!("vertex out of range in edge ({i}, {j})")));
            }
            if i == j {
                return Err(Error::Invalid(format!("loop at vertex {i}")));
            }
            if w == 0 || w >= d.get() {
                return Err(Error::Invalid(format!("weight {w} not in (0, {d})")));
            }
            if g.get(i, j) != 0 {
                return Err(Error::Invalid(format!("duplicate edge ({i}, {j})")));
            }
            g.set(i, j, w);
        }
        Ok(g)
    }

    /// Builds a graph from a full matrix, checking symmetry and the zero diagonal.
    pub fn from_matrix(d: RingDim, rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(d, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Mismatch(format!("row {i} has length {}", row.len())));
            }
            for (j, &w) in row.iter().enumerate() {
                if w >= d.get() {
                    return Err(Error::Invalid(format!("entry {w} not in [0, {d})")));
                }
                if w != rows[j][i] {
                    return Err(Error::Invalid(format!("not symmetric at ({i}, {j})")));
                }
                if i == j && w != 0 {
                    return Err(Error::Invalid(format!("nonzero diagonal at {i}")));
                }
                g.gamma[i * n + j] = w;
            }
        }
        Ok(g)
    }

    pub fn dim(&self) -> RingDim {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.gamma[i * self.n + j]
    }

    /// Sets `γ_{ij} = γ_{ji} = w mod D`. Diagonal writes are ignored.
    pub fn set(&mut self, i: usize, j: usize, w: u64) {
        if i == j {
            return;
        }
        let w = w % self.d.get();
        self.gamma[i * self.n + j] = w;
        self.gamma[j * self.n + i] = w;
    }

    /// Column `k`, which equals row `k`.
    pub fn column(&self, k: usize) -> &[u64] {
        &self.gamma[k * self.n..(k + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|k| self.column(k).to_vec()).collect()
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(i, j) != 0).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.column(i).iter().filter(|&&w| w != 0).count()
    }

    /// Weighted edges `(i, j, w)` with `i < j`, 0-based, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let w = self.get(i, j);
                if w != 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(|&w| w == 0)
    }

    /// Disjoint union, with `other`'s vertices numbered after `self`'s.
    pub fn block_diag(&self, other: &AdjacencyMatrix) -> Result<AdjacencyMatrix> {
        if self.d != other.d {
            return Err(Error::Mismatch(format!("D={} vs D={}", self.d, other.d)));
        }
        let mut g = Self::empty(self.d, self.n + other.n);
        for (i, j, w) in self.edges() {
            g.set(i, j, w);
        }
        for (i, j, w) in other.edges() {
            g.set(self.n + i, self.n + j, w);
        }
        Ok(g)
    }

    /// Induced subgraph on `verts` (in the given order).
    pub fn restrict(&self, verts: &[usize]) -> AdjacencyMatrix {
        let mut g = Self::empty(self.d, verts.len());
        for (a, &i) in verts.iter().enumerate() {
            for (b, &j) in verts.iter().enumerate() {
                g.gamma[a * verts.len() + b] = self.get(i, j);
            }
        }
        g
    }

    /// `S_k = X^{(k)} Π_j (Z^{(j)})^{γ_{jk}}`.
    pub fn stabilizer_generators(&self) -> Vec<PauliOp> {
        (0..self.n)
            .map(|k| {
                let mut r = vec![0; self.n];
                r[k] = 1;
                PauliOp { d: self.d, q: 0, r, s: self.column(k).to_vec() }
            })
            .collect()
    }

    pub fn stabilizer_spec(&self) -> StabilizerGroupSpec {
        StabilizerGroupSpec::new(self.d, self.n, self.stabilizer_generators()).expect("generators share D and n by construction")
    }

    /// Qubit local complementation about vertex `k`.
    pub fn local_complement(&self, k: usize) -> Result<AdjacencyMatrix> {
        if self.d.get() != 2 {
            return Err(Error::Invalid(format!("local complementation needs D=2, got D={}", self.d)));
        }
        if k >= self.n {
            return Err(Error::Invalid(format!("vertex {k} out of range")));
        }
        let mut g = self.clone();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let w = (self.get(i, j) + self.get(i, k) * self.get(j, k)) % 2;
                g.set(i, j, w);
            }
        }
        Ok(g)
    }

    /// Splits each qudit into `g` qudits of dimension `d = D/g` where
    /// `g = gcd(D, γ_{ij})`; returns `(Γ/g over Z/dZ, g, d)`.
    pub fn gcd_reduce(&self) -> Result<(AdjacencyMatrix, u64, u64)> {
        if self.is_zero() {
            return Err(Error::Invalid("the empty graph has no reduction".into()));
        }
        let g = self.gamma.iter().fold(self.d.get(), |acc, &w| gcd(acc, w));
        let small = self.d.get() / g;
        let dd = RingDim::new(small)?;
        let gamma = self.gamma.iter().map(|&w| (w / g) % small).collect();
        Ok((AdjacencyMatrix { d: dd, n: self.n, gamma }, g, small))
    }
}

/// Builds a named family. Numbering: star has centre 0; dandelion has
/// 0 joined to 1, 2, 3 and seeds 4..n joined to 3; ame4_ring is A-B-C-D-A with
/// weight `D-1` on A-D.
pub fn make_family(kind: GraphFamily, n: usize, d: RingDim) -> Result<AdjacencyMatrix> {
    if n < kind.min_n() {
        return Err(Error::Invalid(format!("{} needs n >= {}, got {n}", kind.name(), kind.min_n())));
    }
    let mut g = AdjacencyMatrix::empty(d, n);
    match kind {
        GraphFamily::Star => (1..n).for_each(|k| g.set(0, k, 1)),
        GraphFamily::Line => (1..n).for_each(|k| g.set(k - 1, k, 1)),
        GraphFamily::Ring => (0..n).for_each(|k| g.set(k, (k + 1) % n, 1)),
        GraphFamily::Dandelion => {
            for k in 1..4 {
                g.set(0, k, 1);
            }
            for k in 4..n {
                g.set(3, k, 1);
            }
        }
        GraphFamily::Ame4Ring => {
            if n != 4 {
                return Err(Error::Invalid(format!("ame4_ring has n=4, got {n}")));
            }
            g.set(0, 1, 1);
            g.set(1, 2, 1);
            g.set(2, 3, 1);
            g.set(0, 3, d.get() - 1);
        }
        GraphFamily::Custom => return Err(Error::Invalid("custom graphs are read from a file".into())),
    }
    Ok(g)
}
