//! Immutable simple undirected graphs and the structural queries the rest of
//! the crate is built on.
//!
//! Vertices are `0..n`. Edges are stored once, canonically as `(u, v)` with
//! `u < v`, sorted lexicographically; adjacency lists are sorted ascending.
//! Every constructor maintains those two invariants, so edge lists of equal
//! graphs compare (and serialize) identically.

mod cycles;
pub mod io;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use cycles::{cycle_edges, GirthResult, DEFAULT_CYCLE_BUDGET};

pub type Edge = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Validating constructor; see [`Graph::new`].
pub fn build_graph(n: usize, edges: &[Edge]) -> Result<Graph> {
    Graph::new(n, edges)
}

#[inline]
pub(crate) fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from an arbitrary-order pair list. Self-loops,
    /// repeated pairs (in either orientation) and out-of-range endpoints are
    /// rejected with an error naming the first offending pair.
    pub fn new(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push(canonical(u, v));
        }
        let mut sorted = canon.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            // report the pair in the orientation the caller used first
            let dup = w[0];
            let orig = edges
                .iter()
                .copied()
                .zip(canon.iter())
                .filter(|(_, c)| **c == dup)
                .nth(1)
                .map(|(e, _)| e)
                .unwrap_or(dup);
            return Err(Error::DuplicateEdge(orig.0, orig.1));
        }
        Ok(Self::from_sorted_canonical(n, sorted))
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Trusted constructor for edge lists already canonical, sorted and
    /// duplicate-free.
    pub(crate) fn from_sorted_canonical(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut adj: Vec<Vec<usize>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        // Pushing in lexicographic edge order leaves each list sorted: for a
        // fixed w, neighbours u < w arrive (as (u, w)) before neighbours
        // v > w (as (w, v)), and each group arrives ascending.
        for &(u, v) in &edges {
            adj[u].push(v);
        }
        for &(u, v) in &edges {
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Canonicalizes and sorts, assuming the pairs are distinct and loop-free.
    pub(crate) fn from_unsorted_distinct(n: usize, mut edges: Vec<Edge>) -> Self {
        for e in edges.iter_mut() {
            *e = canonical(e.0, e.1);
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_canonical(n, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of the canonical pair in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    pub fn stats(&self) -> GraphStats {
        let degrees = self.adj.iter().map(Vec::len);
        GraphStats {
            n: self.n,
            m: self.m(),
            min_degree: degrees.clone().min().unwrap_or(0),
            max_degree: degrees.max().unwrap_or(0),
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Connected components, each sorted ascending, listed in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Largest connected component as a relabeled induced subgraph, plus the
    /// map from new labels to original vertices. Among equal-size components
    /// the one holding the smallest vertex wins.
    pub fn largest_component(&self) -> (Graph, Vec<usize>) {
        let comps = self.components();
        let mut best: Option<&Vec<usize>> = None;
        for c in &comps {
            if best.is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
        match best {
            Some(c) => self.induced_subgraph(c),
            None => (self.clone(), Vec::new()),
        }
    }

    /// Induced subgraph on `vertices` (any order, duplicates ignored),
    /// relabeled `0..k` in ascending original order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        (Graph::from_sorted_canonical(map.len(), edges), map)
    }

    /// Spanning subgraph keeping the edges whose index satisfies `keep`.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(usize, Edge) -> bool) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, &e)| keep(i, e))
            .map(|(_, &e)| e)
            .collect();
        Graph::from_sorted_canonical(self.n, edges)
    }

    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut drop: Vec<Edge> = removed.iter().map(|&(u, v)| canonical(u, v)).collect();
        drop.sort_unstable();
        self.spanning_subgraph(|_, e| drop.binary_search(&e).is_err())
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.component_count() == self.n
    }

    /// Membership mask of the `k`-core: repeatedly delete vertices of degree
    /// below `k`.
    pub fn core_mask(&self, k: usize) -> Vec<bool> {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; self.n];
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| deg[v] < k).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &w in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] + 1 == k {
                        stack.push(w);
                    }
                }
            }
        }
        alive
    }

    /// The `k`-core as a relabeled induced subgraph.
    pub fn k_core(&self, k: usize) -> (Graph, Vec<usize>) {
        let mask = self.core_mask(k);
        let keep: Vec<usize> = (0..self.n).filter(|&v| mask[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_sorted_canonical(n, edges)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_unsorted_distinct(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_unsorted_distinct(n, (1..n).map(|i| (i - 1, i)).collect())
    }
}

impl GraphStats {
    pub fn of(g: &Graph) -> Self {
        g.stats()
    }
}


/// Read access to sorted adjacency, for algorithms that also run on graphs
/// too large to materialize.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn degree_of(&self, v: usize) -> usize;
    /// The `i`-th smallest neighbour of `v`.
    fn neighbor_at(&self, v: usize, i: usize) -> usize;
    /// Number of neighbours of `v` smaller than `w`.
    fn rank(&self, v: usize, w: usize) -> usize;
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn degree_of(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn neighbor_at(&self, v: usize, i: usize) -> usize {
        self.adj[v][i]
    }

    fn rank(&self, v: usize, w: usize) -> usize {
        self.adj[v].partition_point(|&x| x < w)
    }
}

/// `K_n` without stored edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImplicitComplete {
    pub n: usize,
}

impl Adjacency for ImplicitComplete {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn degree_of(&self, _v: usize) -> usize {
        self.n.saturating_sub(1)
    }

    fn neighbor_at(&self, v: usize, i: usize) -> usize {
        if i < v {
            i
        } else {
            i + 1
        }
    }

    fn rank(&self, v: usize, w: usize) -> usize {
        if w <= v {
            w
        } else {
            w - 1
        }
    }
}
