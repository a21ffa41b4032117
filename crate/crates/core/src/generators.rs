//! Base-graph families.
//!
//! Numbering is canonical per family: row-major grids, binary-coded
//! hypercubes, consecutive blocks for disjoint cliques, the `a`-side before
//! the `b`-side for complete bipartite graphs. Tree growth probes neighbours
//! in ascending index order, so the numbering is part of the contract.

use std::fmt;
use std::path::PathBuf;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{io, Edge, Graph};
use crate::rng::sequential_rng;

/// Pairing-model restarts allowed before giving up.
pub const RESTART_BUDGET: u32 = 10_000;

const MAX_HYPERCUBE_DIM: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Hypercube { dim: usize },
    Grid { rows: usize, cols: usize },
    RandomRegular { n: usize, r: usize },
    DisjointCliques { copies: usize, r: usize },
    FromFile { path: PathBuf },
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::Hypercube { .. } => "hypercube",
            FamilySpec::Grid { .. } => "grid",
            FamilySpec::RandomRegular { .. } => "random_regular",
            FamilySpec::DisjointCliques { .. } => "disjoint_cliques",
            FamilySpec::FromFile { .. } => "from_file",
        }
    }

    /// Whether the generated graph depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(self, FamilySpec::RandomRegular { .. })
    }

    /// Vertex count, when known without generating.
    pub fn vertex_count(&self) -> Option<usize> {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::RandomRegular { n, .. } => Some(n),
            FamilySpec::CompleteBipartite { a, b } => Some(a + b),
            FamilySpec::Hypercube { dim } => Some(1 << dim),
            FamilySpec::Grid { rows, cols } => Some(rows * cols),
            FamilySpec::DisjointCliques { copies, r } => Some(copies * (r + 1)),
            FamilySpec::FromFile { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            FamilySpec::Complete { n } if n < 1 => bad("complete: n must be >= 1".into()),
            FamilySpec::CompleteBipartite { a, b } if a < 1 || b < 1 => {
                bad("complete_bipartite: a and b must be >= 1".into())
            }
            FamilySpec::Hypercube { dim } if !(1..=MAX_HYPERCUBE_DIM).contains(&dim) => bad(
                format!("hypercube: dimension must be in 1..={MAX_HYPERCUBE_DIM}, got {dim}"),
            ),
            FamilySpec::Grid { rows, cols } if rows < 1 || cols < 1 => {
                bad("grid: rows and cols must be >= 1".into())
            }
            FamilySpec::RandomRegular { n, r } => {
                if n < 1 || r < 1 {
                    bad("random_regular: n and r must be >= 1".into())
                } else if r >= n {
                    bad(format!("random_regular: need r < n, got r = {r}, n = {n}"))
                } else if n * r % 2 == 1 {
                    bad(format!("random_regular: n * r must be even, got {n} * {r}"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::DisjointCliques { copies, r } if copies < 1 || r < 1 => {
                bad("disjoint_cliques: copies and r must be >= 1".into())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete(n={n})"),
            FamilySpec::CompleteBipartite { a, b } => write!(f, "complete_bipartite(a={a}, b={b})"),
            FamilySpec::Hypercube { dim } => write!(f, "hypercube(d={dim})"),
            FamilySpec::Grid { rows, cols } => write!(f, "grid(rows={rows}, cols={cols})"),
            FamilySpec::RandomRegular { n, r } => write!(f, "random_regular(n={n}, r={r})"),
            FamilySpec::DisjointCliques { copies, r } => {
                write!(f, "disjoint_cliques(copies={copies}, r={r})")
            }
            FamilySpec::FromFile { path } => write!(f, "from_file({})", path.display()),
        }
    }
}

/// Builds the family member; deterministic in `(spec, seed)`. Only
/// `random_regular` consumes the seed.
pub fn generate(spec: &FamilySpec, seed: u64) -> Result<Graph> {
    spec.validate()?;
    Ok(match *spec {
        FamilySpec::Complete { n } => Graph::complete(n),
        FamilySpec::CompleteBipartite { a, b } => complete_bipartite(a, b),
        FamilySpec::Hypercube { dim } => hypercube(dim),
        FamilySpec::Grid { rows, cols } => grid(rows, cols),
        FamilySpec::RandomRegular { n, r } => random_regular(n, r, seed)?,
        FamilySpec::DisjointCliques { copies, r } => disjoint_cliques(copies, r),
        FamilySpec::FromFile { ref path } => io::read_edge_list(path)?,
    })
}

pub fn validate_min_degree(g: &Graph, r: usize) -> bool {
    (0..g.n()).all(|v| g.degree(v) >= r)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::from_sorted_canonical(a + b, edges)
}

pub fn hypercube(dim: usize) -> Graph {
    let n = 1usize << dim;
    let mut edges = Vec::with_capacity(dim * n / 2);
    for v in 0..n {
        for b in 0..dim {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_unsorted_distinct(n, edges)
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1));
            }
            if i + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_unsorted_distinct(rows * cols, edges)
}

pub fn disjoint_cliques(copies: usize, r: usize) -> Graph {
    let k = r + 1;
    let mut edges = Vec::with_capacity(copies * k * r / 2);
    for c in 0..copies {
        let base = c * k;
        for u in 0..k {
            for v in u + 1..k {
                edges.push((base + u, base + v));
            }
        }
    }
    Graph::from_sorted_canonical(copies * k, edges)
}

/// r-regular simple graph from the pairing model, pairing only compatible
/// points (distinct vertices, not yet adjacent) and restarting when the
/// remaining points admit no compatible pair.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    FamilySpec::RandomRegular { n, r }.validate()?;
    let mut rng = sequential_rng(seed, 0x0072_6567_756c_6172);
    for _ in 0..RESTART_BUDGET {
        if let Some(edges) = try_pairing(n, r, &mut rng) {
            return Ok(Graph::from_unsorted_distinct(n, edges));
        }
    }
    Err(Error::RestartBudgetExhausted {
        n,
        r,
        attempts: RESTART_BUDGET,
    })
}

fn try_pairing(n: usize, r: usize, rng: &mut impl Rng) -> Option<Vec<Edge>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(r); n];
    let mut edges = Vec::with_capacity(n * r / 2);
    const BLIND_TRIES: usize = 64;

    while !points.is_empty() {
        let k = points.len();
        let mut chosen = None;
        for _ in 0..BLIND_TRIES {
            let i = rng.gen_range(0..k);
            let j = rng.gen_range(0..k);
            let (a, b) = (points[i], points[j]);
            if i != j && a != b && !adj[a].contains(&b) {
                chosen = Some((i, j));
                break;
            }
        }
        if chosen.is_none() {
            // few points left: enumerate the compatible pairs exactly
            let mut ok = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    let (a, b) = (points[i], points[j]);
                    if a != b && !adj[a].contains(&b) {
                        ok.push((i, j));
                    }
                }
            }
            if ok.is_empty() {
                return None;
            }
            chosen = Some(ok[rng.gen_range(0..ok.len())]);
        }
        let (i, j) = chosen.unwrap();
        let (a, b) = (points[i], points[j]);
        adj[a].push(b);
        adj[b].push(a);
        edges.push((a, b));
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    Some(edges)
}
