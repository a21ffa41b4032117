use std::collections::BTreeMap;

use crate::graph::{canonical, Adjacency, Edge};

use super::tree::{Exposure, TreeState};
use super::WitnessParams;

/// Bookkeeping for one frontier round.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RoundLedger {
    /// Frontier size `s_k` at the start of the round.
    pub frontier_size: usize,
    /// Pairs probed from the frontier this round.
    pub probes: usize,
    /// Probed pairs whose far end is already in the tree.
    pub internal: Vec<Edge>,
    /// Vertices outside the tree probed at least `heavy_multiplier * r`
    /// times this round, ascending.
    pub heavy: Vec<usize>,
    /// Probed pairs into the heavy set.
    pub heavy_edges: Vec<Edge>,
    /// Probed pairs into eligible vertices.
    pub eligible: usize,
    /// Eligible pairs retained in the first round, as `(frontier, new)`.
    pub retained: Vec<Edge>,
    /// Distinct new endpoints of `retained`, ascending.
    pub new_neighbors: Vec<usize>,
    /// Matching left after trimming, as `(frontier, new)`.
    pub matching: Vec<Edge>,
}

impl RoundLedger {
    pub fn matched(&self) -> usize {
        self.matching.len()
    }
}

/// `T` together with this round's retained edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RoundSignal {
    /// The matched frontier exceeded `(1 + eps/25) s_k`.
    Grew,
    /// At least `(eps/10) r s_k` probes landed back in the tree; the pool is
    /// those internal pairs.
    InternalHeavy { pool: Vec<Edge> },
    /// At least `(eps/10) r s_k` probes landed on heavy vertices; the pool
    /// is those pairs.
    HeavyBipartite { pool: Vec<Edge> },
    /// Growth fell short of `(1 + eps/25) s_k`.
    Finalize { gamma: Gamma },
}

impl RoundSignal {
    pub fn tag(&self) -> &'static str {
        match self {
            RoundSignal::Grew => "grew",
            RoundSignal::InternalHeavy { .. } => "internal-heavy",
            RoundSignal::HeavyBipartite { .. } => "heavy-bipartite",
            RoundSignal::Finalize { .. } => "finalize",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoundOutcome {
    pub signal: RoundSignal,
    pub ledger: RoundLedger,
    /// The tree extended by the matching, whatever the signal.
    pub next: TreeState,
}

/// One round of remaining tree growth.
pub fn expand_frontier<A: Adjacency + ?Sized>(
    g: &A,
    mut state: TreeState,
    first: &Exposure,
    params: &WitnessParams,
) -> RoundOutcome {
    let frontier = std::mem::take(&mut state.frontier);
    let s_k = frontier.len();
    let mut ledger = RoundLedger {
        frontier_size: s_k,
        ..RoundLedger::default()
    };

    let mut probed: Vec<Edge> = Vec::new();
    for &u in &frontier {
        for w in state.probes.probe(g, u, params.branch_limit, |_| false) {
            probed.push((u, w));
        }
    }
    ledger.probes = probed.len();

    let mut frontier_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(_, w) in &probed {
        if !state.in_tree[w] {
            *frontier_degree.entry(w).or_default() += 1;
        }
    }
    let heavy_at = params.heavy_threshold();
    ledger.heavy = frontier_degree
        .iter()
        .filter(|&(_, &k)| k as f64 >= heavy_at)
        .map(|(&w, _)| w)
        .collect();
    let is_heavy = |w: usize| ledger.heavy.binary_search(&w).is_ok();

    let mut retained_at: BTreeMap<usize, usize> = BTreeMap::new();
    let mut internal = Vec::new();
    let mut heavy_edges = Vec::new();
    let mut retained = Vec::new();
    for &(u, w) in &probed {
        if state.in_tree[w] {
            internal.push(canonical(u, w));
        } else if is_heavy(w) {
            heavy_edges.push(canonical(u, w));
        } else if !state.in_rejected[w] {
            ledger.eligible += 1;
            if first.retained(u, w) {
                retained.push((u, w));
                *retained_at.entry(u).or_default() += 1;
            }
        }
    }
    let mut new_neighbors: Vec<usize> = retained.iter().map(|&(_, w)| w).collect();
    new_neighbors.sort_unstable();
    new_neighbors.dedup();

    // trim: overloaded frontier vertices lose all their edges, then each new
    // vertex keeps the edge from its smallest frontier neighbour
    let mut matching: Vec<Edge> = Vec::new();
    let mut claimed = std::collections::HashSet::new();
    for &(u, w) in &retained {
        if retained_at[&u] > params.trim_threshold {
            continue;
        }
        if claimed.insert(w) {
            matching.push((u, w));
        }
    }

    let gamma = Gamma {
        vertices: {
            let mut v: Vec<usize> = state.vertices.clone();
            v.extend(&new_neighbors);
            v.sort_unstable();
            v
        },
        edges: {
            let mut e: Vec<Edge> = state.tree_edges.clone();
            e.extend(retained.iter().map(|&(u, w)| canonical(u, w)));
            e.sort_unstable();
            e
        },
    };

    let mut next_frontier = Vec::with_capacity(matching.len());
    for &(u, w) in &matching {
        state.attach(u, w);
        next_frontier.push(w);
    }
    next_frontier.sort_unstable();
    state.frontier = next_frontier;
    state.round += 1;

    let trigger = params.epsilon / 10.0 * params.r as f64 * s_k as f64;
    let signal = if s_k > 0 && internal.len() as f64 >= trigger {
        RoundSignal::InternalHeavy {
            pool: sorted(internal.clone()),
        }
    } else if s_k > 0 && heavy_edges.len() as f64 >= trigger {
        RoundSignal::HeavyBipartite {
            pool: sorted(heavy_edges.clone()),
        }
    } else if matching.len() as f64 > (1.0 + params.epsilon / 25.0) * s_k as f64 {
        RoundSignal::Grew
    } else {
        RoundSignal::Finalize { gamma }
    };

    ledger.internal = internal;
    ledger.heavy_edges = heavy_edges;
    ledger.retained = retained;
    ledger.new_neighbors = new_neighbors;
    ledger.matching = matching;
    RoundOutcome {
        signal,
        ledger,
        next: state,
    }
}

fn sorted(mut v: Vec<Edge>) -> Vec<Edge> {
    v.sort_unstable();
    v.dedup();
    v
}
