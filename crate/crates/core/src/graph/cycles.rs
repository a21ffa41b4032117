//! Girth, short-cycle enumeration and short-cycle breaking.

use std::collections::VecDeque;

use super::{canonical, Edge, Graph};
use crate::error::{Error, Result};

/// Default cap on DFS path extensions for cycle enumeration.
pub const DEFAULT_CYCLE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GirthResult {
    /// Shortest cycle has exactly this length.
    Finite(usize),
    /// The graph has cycles, all longer than the cap.
    ExceedsCap(usize),
    Acyclic,
}

impl GirthResult {
    /// True when no cycle of length `<= len` exists.
    pub fn exceeds(&self, len: usize) -> bool {
        match *self {
            GirthResult::Finite(g) => g > len,
            GirthResult::ExceedsCap(cap) => cap >= len,
            GirthResult::Acyclic => true,
        }
    }
}

impl Graph {
    /// Exact girth when it is at most `cap`.
    ///
    /// Runs a depth-truncated BFS from every vertex of the 2-core. A non-tree
    /// edge `(u, w)` seen from root `s` closes a walk of length
    /// `dist(u) + dist(w) + 1` containing a cycle, and for a root on a
    /// shortest cycle the bound is attained.
    pub fn girth(&self, cap: usize) -> GirthResult {
        assert!(cap >= 3, "girth cap must be at least 3");
        if self.is_forest() {
            return GirthResult::Acyclic;
        }
        match self.shortest_cycle_len(cap) {
            Some(g) => GirthResult::Finite(g),
            None => GirthResult::ExceedsCap(cap),
        }
    }

    fn shortest_cycle_len(&self, limit: usize) -> Option<usize> {
        let core = self.core_mask(2);
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        let mut best = usize::MAX;

        for root in (0..n).filter(|&v| core[v]) {
            dist[root] = 0;
            touched.push(root);
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                let du = dist[u];
                if 2 * du + 1 >= best.min(limit + 1) {
                    break;
                }
                for &w in self.neighbors(u) {
                    if !core[w] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = du + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if w != parent[u] && parent[w] != u {
                        let len = du + dist[w] + 1;
                        if len < best {
                            best = len;
                            if best == 3 {
                                break 'bfs;
                            }
                        }
                    }
                }
            }
            for v in touched.drain(..) {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
            queue.clear();
            if best == 3 {
                break;
            }
        }
        (best <= limit).then_some(best)
    }

    /// Calls `visit` once per cycle of length `<= max_len`, passing its
    /// vertices in cyclic order starting from the smallest vertex and
    /// oriented so the second vertex is smaller than the last.
    ///
    /// Fails with [`Error::CycleBudgetExceeded`] once more than `budget` DFS
    /// path extensions have been made.
    pub fn for_each_short_cycle(
        &self,
        max_len: usize,
        budget: u64,
        mut visit: impl FnMut(&[usize]),
    ) -> Result<()> {
        assert!(max_len >= 3, "cycle length bound must be at least 3");
        let n = self.n();
        let core = self.core_mask(2);
        let mut dist = vec![usize::MAX; n];
        let mut on_path = vec![false; n];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        let mut path: Vec<usize> = Vec::with_capacity(max_len);
        // (vertex, next neighbour index)
        let mut stack: Vec<(usize, usize)> = Vec::with_capacity(max_len);
        let mut steps = 0u64;

        for s in (0..n).filter(|&v| core[v]) {
            // distances to s inside the vertices >= s, for pruning
            dist[s] = 0;
            touched.push(s);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if dist[u] >= max_len {
                    continue;
                }
                for &w in self.neighbors(u) {
                    if w > s && core[w] && dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        touched.push(w);
                        queue.push_back(w);
                    }
                }
            }

            path.push(s);
            on_path[s] = true;
            stack.push((s, 0));
            while let Some(top) = stack.last_mut() {
                let (u, idx) = *top;
                let nbrs = self.neighbors(u);
                if idx >= nbrs.len() {
                    stack.pop();
                    path.pop();
                    on_path[u] = false;
                    continue;
                }
                top.1 += 1;
                let w = nbrs[idx];
                if w < s || !core[w] {
                    continue;
                }
                let depth = path.len(); // edges used if we step to w
                if w == s {
                    if depth >= 3 && path[1] < path[depth - 1] {
                        visit(&path);
                    }
                    continue;
                }
                if on_path[w] || dist[w] == usize::MAX || depth + dist[w] > max_len {
                    continue;
                }
                steps += 1;
                if steps > budget {
                    return Err(Error::CycleBudgetExceeded { budget });
                }
                path.push(w);
                on_path[w] = true;
                stack.push((w, 0));
            }

            for v in touched.drain(..) {
                dist[v] = usize::MAX;
            }
        }
        Ok(())
    }

    /// All cycles of length `<= max_len`, as vertex sequences (see
    /// [`Graph::for_each_short_cycle`] for the normal form).
    pub fn short_cycles(&self, max_len: usize, budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.for_each_short_cycle(max_len, budget, |c| out.push(c.to_vec()))?;
        Ok(out)
    }

    /// Number of distinct cycles of length `<= max_len`, each counted once.
    pub fn count_short_cycles(&self, max_len: usize) -> Result<u64> {
        self.count_short_cycles_with_budget(max_len, DEFAULT_CYCLE_BUDGET)
    }

    pub fn count_short_cycles_with_budget(&self, max_len: usize, budget: u64) -> Result<u64> {
        let mut count = 0u64;
        self.for_each_short_cycle(max_len, budget, |_| count += 1)?;
        Ok(count)
    }

    /// Deletes edges until no cycle of length `<= max_len` remains. Returns
    /// the pruned graph and the deleted edges in deletion order.
    ///
    /// All short cycles are enumerated once (deletions cannot create new
    /// cycles), then edges are removed greedily: each step deletes the edge
    /// lying on the most not-yet-broken cycles, ties going to the
    /// lexicographically smallest edge.
    pub fn short_cycle_edge_deletion(&self, max_len: usize) -> Result<(Graph, Vec<Edge>)> {
        self.short_cycle_edge_deletion_with_budget(max_len, DEFAULT_CYCLE_BUDGET)
    }

    pub fn short_cycle_edge_deletion_with_budget(
        &self,
        max_len: usize,
        budget: u64,
    ) -> Result<(Graph, Vec<Edge>)> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        self.for_each_short_cycle(max_len, budget, |c| {
            let k = c.len();
            let ids = (0..k)
                .map(|i| {
                    self.edge_index(c[i], c[(i + 1) % k])
                        .expect("cycle edges belong to the graph")
                })
                .collect();
            cycles.push(ids);
        })?;
        if cycles.is_empty() {
            return Ok((self.clone(), Vec::new()));
        }

        let mut on_cycles: Vec<Vec<usize>> = vec![Vec::new(); self.m()];
        for (ci, c) in cycles.iter().enumerate() {
            for &e in c {
                on_cycles[e].push(ci);
            }
        }
        let mut load: Vec<usize> = on_cycles.iter().map(Vec::len).collect();
        let mut candidates: Vec<usize> = (0..self.m()).filter(|&e| load[e] > 0).collect();
        let mut broken = vec![false; cycles.len()];
        let mut remaining = cycles.len();
        let mut deleted_ids = Vec::new();

        while remaining > 0 {
            candidates.retain(|&e| load[e] > 0);
            // candidates ascend by edge index, which is lexicographic order
            let mut pick = candidates[0];
            for &e in &candidates[1..] {
                if load[e] > load[pick] {
                    pick = e;
                }
            }
            deleted_ids.push(pick);
            for &ci in &on_cycles[pick] {
                if !broken[ci] {
                    broken[ci] = true;
                    remaining -= 1;
                    for &e in &cycles[ci] {
                        load[e] -= 1;
                    }
                }
            }
        }

        let mut drop = vec![false; self.m()];
        for &e in &deleted_ids {
            drop[e] = true;
        }
        let pruned = self.spanning_subgraph(|i, _| !drop[i]);
        let deleted = deleted_ids.iter().map(|&e| self.edges()[e]).collect();
        Ok((pruned, deleted))
    }

    /// One shortest cycle of length `<= cap` as a vertex sequence, if any.
    pub fn shortest_cycle(&self, cap: usize) -> Option<Vec<usize>> {
        let len = self.shortest_cycle_len(cap)?;
        let mut found = None;
        self.for_each_short_cycle(len, u64::MAX, |c| {
            if found.is_none() && c.len() == len {
                found = Some(c.to_vec());
            }
        })
        .ok()?;
        found
    }
}

/// Edges of a cycle given as a vertex sequence.
pub fn cycle_edges(cycle: &[usize]) -> Vec<Edge> {
    let k = cycle.len();
    (0..k)
        .map(|i| canonical(cycle[i], cycle[(i + 1) % k]))
        .collect()
}
