//! Planarity: an exact oracle, and checkable non-planarity certificates
//! based on the Euler bound for graphs of given girth.
//!
//! A planar graph with `n >= 3` vertices and girth `g` has at most
//! `g(n - 2)/(g - 2)` edges. A [`DensityGirth`] certificate names a
//! subgraph whose recomputed girth is at least `g` and whose edge count
//! strictly exceeds that bound; [`verify_certificate`] re-derives both facts
//! from the host graph, independent of how the certificate was found.

mod lr;

use std::fmt::{self, Write as _};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{canonical, Edge, Graph, DEFAULT_CYCLE_BUDGET};

/// Exact planarity test.
pub fn is_planar(g: &Graph) -> bool {
    let (n, m) = (g.n(), g.m());
    if n <= 4 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    if g.is_forest() {
        return true;
    }
    lr::lr_is_planar(g)
}

/// `g(n - 2)/(g - 2)`, the largest edge count of a planar graph with `n`
/// vertices and girth `g`.
pub fn euler_bound(n: u64, g: u64) -> Result<Ratio<u64>> {
    if n < 3 || g < 3 {
        return Err(Error::InvalidParameter(format!(
            "euler bound needs n >= 3 and g >= 3, got n = {n}, g = {g}"
        )));
    }
    Ok(Ratio::new(g * (n - 2), g - 2))
}

/// The looser form `n + 2n/(g - 2)`, strictly above [`euler_bound`].
pub fn euler_slack_bound(n: u64, g: u64) -> Result<Ratio<u64>> {
    euler_bound(n, g)?;
    Ok(Ratio::from_integer(n) + Ratio::new(2 * n, g - 2))
}

/// True iff `m` edges on `n` vertices with girth `>= g` is impossible in a
/// planar graph. Integer arithmetic only.
pub fn violates_euler_bound(n: usize, m: usize, g: usize) -> bool {
    match euler_bound(n as u64, g as u64) {
        Ok(bound) => Ratio::from_integer(m as u64) > bound,
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityGirth {
    /// Claimed lower bound on the girth of `(vertices, edges)`.
    pub girth_floor: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    /// Claimed `|vertices|`.
    pub n_prime: usize,
    /// Claimed `|edges|`.
    pub m_prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    DensityGirth(DensityGirth),
    /// Verdict of the exact oracle; carries no checkable structure.
    OracleVerdict {
        planar: bool,
        note: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RejectReason {
    /// Stored `n'` or `m'` disagrees with the listed vertices or edges.
    RecountMismatch,
    /// A listed vertex or edge appears twice, or an edge is a loop.
    Malformed,
    TooFewVertices,
    GirthFloorTooSmall,
    VertexOutOfRange,
    /// An edge has an endpoint outside the listed vertex set.
    EdgeOutsideVertexSet,
    /// A listed edge is not an edge of the host graph.
    MissingEdge,
    /// The subgraph has a cycle shorter than the claimed girth floor.
    GirthViolated,
    /// The edge count does not exceed the Euler bound.
    NotDenseEnough,
    /// The oracle verdict does not match a fresh oracle run.
    OracleMismatch,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RejectReason::RecountMismatch => "recount-mismatch",
            RejectReason::Malformed => "malformed",
            RejectReason::TooFewVertices => "too-few-vertices",
            RejectReason::GirthFloorTooSmall => "girth-floor-too-small",
            RejectReason::VertexOutOfRange => "vertex-out-of-range",
            RejectReason::EdgeOutsideVertexSet => "edge-outside-vertex-set",
            RejectReason::MissingEdge => "missing-edge",
            RejectReason::GirthViolated => "girth-violated",
            RejectReason::NotDenseEnough => "not-dense-enough",
            RejectReason::OracleMismatch => "oracle-mismatch",
        };
        f.write_str(s)
    }
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::DensityGirth(_) => "density-girth",
            Certificate::OracleVerdict { .. } => "oracle",
        }
    }

    pub fn as_density(&self) -> Option<&DensityGirth> {
        match self {
            Certificate::DensityGirth(d) => Some(d),
            Certificate::OracleVerdict { .. } => None,
        }
    }

    /// Plain-text block; see [`parse_certificate`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Certificate::DensityGirth(d) => {
                writeln!(s, "certificate density-girth").unwrap();
                writeln!(s, "g {}", d.girth_floor).unwrap();
                s.push_str("vertices");
                for v in &d.vertices {
                    write!(s, " {v}").unwrap();
                }
                s.push_str("\nedges");
                for (u, v) in &d.edges {
                    write!(s, " {u}-{v}").unwrap();
                }
                s.push('\n');
            }
            Certificate::OracleVerdict { planar, note } => {
                writeln!(s, "certificate oracle").unwrap();
                writeln!(s, "planar {planar}").unwrap();
                writeln!(s, "note {note}").unwrap();
            }
        }
        s
    }
}

impl DensityGirth {
    fn new(girth_floor: usize, mut vertices: Vec<usize>, mut edges: Vec<Edge>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        DensityGirth {
            girth_floor,
            n_prime: vertices.len(),
            m_prime: edges.len(),
            vertices,
            edges,
        }
    }
}

/// Parses the block written by [`Certificate::to_text`]; `n'` and `m'` are
/// recounted from the lists.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let bad = |m: &str| Error::Parse {
        path: "<certificate>".into(),
        line: 0,
        message: m.to_string(),
    };
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some("certificate density-girth") => {
            let mut g = None;
            let mut vertices = None;
            let mut edges = None;
            for line in lines {
                let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
                match key {
                    "g" => g = Some(rest.trim().parse().map_err(|_| bad("bad girth floor"))?),
                    "vertices" => {
                        vertices = Some(
                            rest.split_ascii_whitespace()
                                .map(|t| t.parse::<usize>())
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .map_err(|_| bad("bad vertex list"))?,
                        )
                    }
                    "edges" => {
                        let mut list = Vec::new();
                        for tok in rest.split_ascii_whitespace() {
                            let (a, b) = tok.split_once('-').ok_or_else(|| bad("bad edge"))?;
                            let a = a.parse().map_err(|_| bad("bad edge"))?;
                            let b = b.parse().map_err(|_| bad("bad edge"))?;
                            list.push((a, b));
                        }
                        edges = Some(list);
                    }
                    _ => return Err(bad(&format!("unknown certificate field `{key}`"))),
                }
            }
            let vertices: Vec<usize> = vertices.ok_or_else(|| bad("missing vertices"))?;
            let edges: Vec<Edge> = edges.ok_or_else(|| bad("missing edges"))?;
            Ok(Certificate::DensityGirth(DensityGirth {
                girth_floor: g.ok_or_else(|| bad("missing girth floor"))?,
                n_prime: vertices.len(),
                m_prime: edges.len(),
                vertices,
                edges,
            }))
        }
        Some("certificate oracle") => {
            let mut planar = None;
            let mut note = String::new();
            for line in lines {
                let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
                match key {
                    "planar" => planar = Some(rest.trim() == "true"),
                    "note" => note = rest.to_string(),
                    _ => return Err(bad(&format!("unknown certificate field `{key}`"))),
                }
            }
            Ok(Certificate::OracleVerdict {
                planar: planar.ok_or_else(|| bad("missing verdict"))?,
                note,
            })
        }
        _ => Err(bad(
            "expected `certificate density-girth` or `certificate oracle`",
        )),
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Rejected(RejectReason),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Re-checks a certificate against `g` from scratch.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Verification {
    match check(g, cert) {
        Ok(()) => Verification::Valid,
        Err(r) => Verification::Rejected(r),
    }
}

fn check(g: &Graph, cert: &Certificate) -> std::result::Result<(), RejectReason> {
    let d = match cert {
        Certificate::DensityGirth(d) => d,
        Certificate::OracleVerdict { planar, .. } => {
            return if is_planar(g) == *planar && !*planar {
                Ok(())
            } else {
                Err(RejectReason::OracleMismatch)
            };
        }
    };
    if d.n_prime != d.vertices.len() || d.m_prime != d.edges.len() {
        return Err(RejectReason::RecountMismatch);
    }
    if d.girth_floor < 3 {
        return Err(RejectReason::GirthFloorTooSmall);
    }
    if d.n_prime < 3 {
        return Err(RejectReason::TooFewVertices);
    }
    let mut verts = d.vertices.clone();
    verts.sort_unstable();
    if verts.windows(2).any(|w| w[0] == w[1]) {
        return Err(RejectReason::Malformed);
    }
    if verts.last().is_some_and(|&v| v >= g.n()) {
        return Err(RejectReason::VertexOutOfRange);
    }
    let mut edges = Vec::with_capacity(d.edges.len());
    for &(u, v) in &d.edges {
        if u == v {
            return Err(RejectReason::Malformed);
        }
        if verts.binary_search(&u).is_err() || verts.binary_search(&v).is_err() {
            return Err(RejectReason::EdgeOutsideVertexSet);
        }
        if !g.has_edge(u, v) {
            return Err(RejectReason::MissingEdge);
        }
        edges.push(canonical(u, v));
    }
    edges.sort_unstable();
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return Err(RejectReason::Malformed);
    }

    let (sub, _) = {
        let h = Graph::from_sorted_canonical(g.n(), edges);
        h.induced_subgraph(&verts)
    };
    if d.girth_floor > 3 && !sub.girth(d.girth_floor - 1).exceeds(d.girth_floor - 1) {
        return Err(RejectReason::GirthViolated);
    }
    if !violates_euler_bound(sub.n(), sub.m(), d.girth_floor) {
        return Err(RejectReason::NotDenseEnough);
    }
    Ok(())
}

/// Searches `g` for a density/girth certificate.
///
/// Two routes, both on subgraphs of `g`:
/// 1. peel vertices of degree `<= 2` and test each remaining component
///    against `m > 3n - 6` (girth floor 3);
/// 2. delete edges until no cycle of length `<= horizon` remains, then on
///    the 2-core, with chains of degree-2 vertices longer than half the
///    girth floor stripped, test each component against the bound for
///    girth floor `horizon + 1`.
pub fn density_certificate(g: &Graph, horizon: usize) -> Result<Option<Certificate>> {
    density_certificate_with_budget(g, horizon, DEFAULT_CYCLE_BUDGET)
}

pub fn density_certificate_with_budget(
    g: &Graph,
    horizon: usize,
    budget: u64,
) -> Result<Option<Certificate>> {
    if horizon < 3 {
        return Err(Error::InvalidParameter(format!(
            "certificate horizon must be >= 3, got {horizon}"
        )));
    }
    if let Some(c) = triangle_route(g) {
        return Ok(Some(c));
    }
    girth_route(g, horizon, budget)
}

/// Tries horizons `3..=max_horizon` in turn and returns the first
/// certificate. Each horizon continues from the previous horizon's pruned
/// graph, so only cycles of exactly the new length need deleting. A horizon
/// whose cycle enumeration exceeds `budget` ends the search.
pub fn search_certificate(g: &Graph, max_horizon: usize, budget: u64) -> Option<Certificate> {
    if let Some(c) = triangle_route(g) {
        return Some(c);
    }
    let (mut pruned, map) = g.k_core(2);
    for horizon in 3..=max_horizon.max(3) {
        pruned = match pruned.short_cycle_edge_deletion_with_budget(horizon, budget) {
            Ok((next, _)) => next,
            Err(_) => break,
        };
        let stripped = strip_long_chains(&pruned, horizon + 1);
        let (core, core_map) = stripped.k_core(2);
        if let Some(c) = best_component(&core, horizon + 1) {
            return Some(relabel(relabel(c, &core_map), &map));
        }
        let mask = pruned.core_mask(2);
        pruned = pruned.spanning_subgraph(|_, (u, v)| mask[u] && mask[v]);
    }
    None
}

fn relabel(c: Certificate, map: &[usize]) -> Certificate {
    match c {
        Certificate::DensityGirth(d) => Certificate::DensityGirth(DensityGirth::new(
            d.girth_floor,
            d.vertices.iter().map(|&v| map[v]).collect(),
            d.edges
                .iter()
                .map(|&(u, v)| canonical(map[u], map[v]))
                .collect(),
        )),
        other => other,
    }
}

fn triangle_route(g: &Graph) -> Option<Certificate> {
    let (core, map) = g.k_core(3);
    best_component(&core, 3).map(|c| relabel(c, &map))
}

fn girth_route(g: &Graph, horizon: usize, budget: u64) -> Result<Option<Certificate>> {
    let floor = horizon + 1;
    let (pruned, _) = g.short_cycle_edge_deletion_with_budget(horizon, budget)?;
    let stripped = strip_long_chains(&pruned, floor);
    let (core, map) = stripped.k_core(2);
    Ok(best_component(&core, floor).map(|c| relabel(c, &map)))
}

/// Largest-first scan of components for one violating the bound at `floor`.
fn best_component(g: &Graph, floor: usize) -> Option<Certificate> {
    let mut comps = g.components();
    comps.retain(|c| c.len() >= 3);
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    for comp in comps {
        let (sub, map) = g.induced_subgraph(&comp);
        if violates_euler_bound(sub.n(), sub.m(), floor) {
            let edges = sub.edges().iter().map(|&(u, v)| (map[u], map[v])).collect();
            return Some(Certificate::DensityGirth(DensityGirth::new(
                floor, map, edges,
            )));
        }
    }
    None
}

/// Removes, from the 2-core, every maximal chain of degree-2 vertices with
/// more than `floor / 2` edges and every cycle component, repeating until
/// stable. Each removal raises `m - floor(n - 2)/(floor - 2)` (a chain of
/// `L` edges changes it by `(2L - floor)/(floor - 2)`), and girth never
/// drops when edges are removed.
pub fn strip_long_chains(g: &Graph, floor: usize) -> Graph {
    let n = g.n();
    let mut alive = g.core_mask(2);
    let mut deg: Vec<usize> = (0..n)
        .map(|v| {
            if alive[v] {
                g.neighbors(v).iter().filter(|&&w| alive[w]).count()
            } else {
                0
            }
        })
        .collect();

    let kill = |v: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>| {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    };

    loop {
        let mut changed = false;
        let mut seen = vec![false; n];
        for start in 0..n {
            if !alive[start] || deg[start] != 2 || seen[start] {
                continue;
            }
            // walk both ways from `start` to the chain ends
            seen[start] = true;
            let mut interior = vec![start];
            let mut closed = false;
            for dir in 0..2 {
                let mut prev = start;
                let mut cur = g
                    .neighbors(start)
                    .iter()
                    .copied()
                    .filter(|&w| alive[w])
                    .nth(dir)
                    .expect("degree-2 vertex has two live neighbours");
                while alive[cur] && deg[cur] == 2 {
                    if cur == start {
                        closed = true;
                        break;
                    }
                    if seen[cur] {
                        break;
                    }
                    seen[cur] = true;
                    interior.push(cur);
                    let next = g
                        .neighbors(cur)
                        .iter()
                        .copied()
                        .find(|&w| alive[w] && w != prev)
                        .expect("chain continues");
                    prev = cur;
                    cur = next;
                }
                if closed {
                    break;
                }
            }
            let edges_in_chain = interior.len() + 1;
            if closed || 2 * edges_in_chain > floor {
                for &v in &interior {
                    kill(v, &mut alive, &mut deg);
                }
                changed = true;
            }
        }
        // re-peel to the 2-core
        let mut stack: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] < 2).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            kill(v, &mut alive, &mut deg);
            changed = true;
            for &w in g.neighbors(v) {
                if alive[w] && deg[w] < 2 {
                    stack.push(w);
                }
            }
        }
        if !changed {
            break;
        }
    }
    g.spanning_subgraph(|_, (u, v)| alive[u] && alive[v])
}
