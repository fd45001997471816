//! Text formats: graph files, state specifications and CSV output.
//!
//! Graph files hold `D n` on the first line followed by `i j w` lines with
//! 1-based vertices. Blank lines and `#` comments are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bounds::SeparabilityBound;
use crate::error::{Error, Result};
use crate::graph::{make_family, AdjacencyMatrix, GraphFamily};
use crate::ring::RingDim;
use crate::sector::{ame4_analytic, ghz_analytic, sector_brute, SectorDistribution};
use crate::thresholds::{StateKind, ThresholdReport, ThresholdState};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn fields(line: &str) -> Vec<&str> {
    line.split('#').next().unwrap_or("").split_whitespace().collect()
}

pub fn parse_graph(text: &str) -> Result<AdjacencyMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, fields(l))).filter(|(_, f)| !f.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing 'D n' header"))?;
    if header.len() != 2 {
        return Err(parse_err(hl, "header must be 'D n'"));
    }
    let d: u64 = header[0].parse().map_err(|_| parse_err(hl, format!("bad dimension '{}'", header[0])))?;
    let n: usize = header[1].parse().map_err(|_| parse_err(hl, format!("bad vertex count '{}'", header[1])))?;
    let dim = RingDim::new(d).map_err(|e| parse_err(hl, e.to_string()))?;
    if n == 0 {
        return Err(parse_err(hl, "a graph needs at least one vertex"));
    }
    let mut seen = BTreeSet::new();
    let mut g = AdjacencyMatrix::empty(dim, n);
    for (ln, f) in lines {
        if f.len() != 3 {
            return Err(parse_err(ln, "edge lines are 'i j w'"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| parse_err(ln, format!("'{s}' is not a non-negative integer")));
        let (i, j, w) = (num(f[0])?, num(f[1])?, num(f[2])?);
        if i == 0 || j == 0 || i > n as u64 || j > n as u64 {
            return Err(parse_err(ln, format!("vertex out of range 1..={n}")));
        }
        if i == j {
            return Err(parse_err(ln, format!("loop at vertex {i}")));
        }
        if w == 0 || w >= d {
            return Err(parse_err(ln, format!("weight {w} not in 1..{d}")));
        }
        let key = (i.min(j), i.max(j));
        if !seen.insert(key) {
            return Err(parse_err(ln, format!("duplicate pair {} {}", key.0, key.1)));
        }
        g.set(i as usize - 1, j as usize - 1, w);
    }
    Ok(g)
}

/// Inverse of [`parse_graph`]; edges in ascending order.
pub fn write_graph(g: &AdjacencyMatrix) -> String {
    let mut out = format!("{} {}\n", g.dim(), g.n());
    for (i, j, w) in g.edges() {
        let _ = writeln!(out, "{} {} {w}", i + 1, j + 1);
    }
    out
}

pub fn read_graph(path: &Path) -> Result<AdjacencyMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

/// `ghz:D,n` | `ame4:D` | `family:KIND,n,D` | `graph:PATH`
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSpec {
    Ghz { d: u64, n: usize },
    Ame4 { d: u64 },
    Family { kind: GraphFamily, n: usize, d: u64 },
    Graph(PathBuf),
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad state spec '{s}'"));
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        let args: Vec<&str> = rest.split(',').map(str::trim).collect();
        let int = |x: &str| x.parse::<u64>().map_err(|_| bad());
        match (tag, args.as_slice()) {
            ("ghz", [d, n]) => Ok(StateSpec::Ghz { d: int(d)?, n: int(n)? as usize }),
            ("ame4", [d]) => Ok(StateSpec::Ame4 { d: int(d)? }),
            ("family", [k, n, d]) => Ok(StateSpec::Family { kind: k.parse()?, n: int(n)? as usize, d: int(d)? }),
            ("graph", _) if !rest.is_empty() => Ok(StateSpec::Graph(PathBuf::from(rest))),
            _ => Err(bad()),
        }
    }
}

impl StateSpec {
    pub fn label(&self) -> String {
        match self {
            StateSpec::Ghz { d, n } => format!("ghz:{d},{n}"),
            StateSpec::Ame4 { d } => format!("ame4:{d}"),
            StateSpec::Family { kind, n, d } => format!("family:{},{n},{d}", kind.name()),
            StateSpec::Graph(p) => format!("graph:{}", p.display()),
        }
    }

    pub fn resolve(&self) -> Result<ThresholdState> {
        let label = self.label();
        let graph_state =
            |g: AdjacencyMatrix, dist: SectorDistribution| ThresholdState { label: label.clone(), dist, kind: StateKind::Graph(g) };
        match self {
            StateSpec::Ghz { d, n } => {
                Ok(ThresholdState { label: label.clone(), dist: ghz_analytic(RingDim::new(*d)?, *n)?, kind: StateKind::Ghz })
            }
            StateSpec::Ame4 { d } => {
                let dim = RingDim::new(*d)?;
                let g = make_family(GraphFamily::Ame4Ring, 4, dim)?;
                let dist = if d % 2 == 1 { ame4_analytic(dim)? } else { sector_brute(&g)? };
                Ok(graph_state(g, dist))
            }
            StateSpec::Family { kind, n, d } => {
                let g = make_family(*kind, *n, RingDim::new(*d)?)?;
                let dist = sector_brute(&g)?;
                Ok(graph_state(g, dist))
            }
            StateSpec::Graph(path) => {
                let g = read_graph(path)?;
                let dist = sector_brute(&g)?;
                Ok(graph_state(g, dist))
            }
        }
    }
}

/// `x` with 12 significant digits, trailing zeros removed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        let s = format!("{x:.11e}");
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn bounds_csv(rows: &[SeparabilityBound]) -> String {
    let mut out = String::from("D,partition,j,bound,mode\n");
    for b in rows {
        for (j, v) in b.values.iter().enumerate() {
            let _ = writeln!(out, "{},{},{j},{v},{}", b.d, b.partition.label(), b.mode.name());
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn thresholds_csv(rows: &[ThresholdReport]) -> String {
    let mut out = String::from("state,D,n,model,criterion,partition,p_crit\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            csv_field(&r.state),
            r.d,
            r.n,
            r.model,
            r.criterion,
            r.partition.as_deref().unwrap_or(""),
            fmt_sig(r.p_crit)
        );
    }
    out
}

/// Qubit family rows for `n` up to `max_n`, padded to a common width.
pub fn family_table_csv(kind: GraphFamily, max_n: usize) -> Result<String> {
    if !GraphFamily::QUBIT_FAMILIES.contains(&kind) {
        return Err(Error::Invalid(format!("no table for family {}", kind.name())));
    }
    let start = kind.min_n().max(2);
    if max_n < start {
        return Err(Error::Invalid(format!("{} needs --max-n >= {start}", kind.name())));
    }
    let d = RingDim::new(2)?;
    let mut out = String::from("family,D,n");
    for j in 0..=max_n {
        let _ = write!(out, ",l{j}");
    }
    out.push('\n');
    for n in start..=max_n {
        let dist = sector_brute(&make_family(kind, n, d)?)?;
        let _ = write!(out, "{},{}", kind.name(), dist.csv_row());
        out.push_str(&",".repeat(max_n - n));
        out.push('\n');
    }
    Ok(out)
}
