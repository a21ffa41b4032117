use std::fmt;

use crate::graph::{canonical, Adjacency, Edge, Graph};
use crate::percolation::CoupledSampler;
use crate::rng::{Domain, EdgeVariates};

use super::WitnessParams;

const NONE: usize = usize::MAX;

/// One exposure round: the per-edge variates of one domain compared against
/// a fixed probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exposure {
    variates: EdgeVariates,
    p: f64,
}

impl Exposure {
    pub fn new(seed: u64, stream_id: u64, domain: Domain, p: f64) -> Self {
        Exposure {
            variates: EdgeVariates::new(seed, stream_id, domain),
            p,
        }
    }

    pub fn from_sampler(sampler: &CoupledSampler<'_>, p: f64) -> Self {
        Exposure {
            variates: sampler.variates(),
            p,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn retained(&self, u: usize, v: usize) -> bool {
        self.variates.retained(u, v, self.p)
    }
}

/// Per-vertex probe cursors over the sorted adjacency lists. A pair is
/// probed at most once across the whole run, from whichever endpoint gets
/// to it first.
#[derive(Clone, Debug)]
pub(crate) struct ProbeLog {
    cursor: Vec<usize>,
    total: u64,
    trace: Option<Vec<Edge>>,
}

impl ProbeLog {
    fn new(n: usize, record: bool) -> Self {
        ProbeLog {
            cursor: vec![0; n],
            total: 0,
            trace: record.then(Vec::new),
        }
    }

    fn exposed_from<A: Adjacency + ?Sized>(&self, g: &A, w: usize, u: usize) -> bool {
        g.rank(w, u) < self.cursor[w]
    }

    /// Probes up to `limit` unexposed neighbours of `u` in ascending order,
    /// skipping pairs already exposed from the other side and neighbours
    /// rejected by `skip`.
    pub(crate) fn probe<A: Adjacency + ?Sized>(
        &mut self,
        g: &A,
        u: usize,
        limit: usize,
        skip: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        let deg = g.degree_of(u);
        let mut out = Vec::new();
        let mut i = self.cursor[u];
        while i < deg && out.len() < limit {
            let w = g.neighbor_at(u, i);
            i += 1;
            if skip(w) || self.exposed_from(g, w, u) {
                continue;
            }
            out.push(w);
            if let Some(t) = self.trace.as_mut() {
                t.push(canonical(u, w));
            }
        }
        self.cursor[u] = i;
        self.total += out.len() as u64;
        out
    }

    pub(crate) fn untouched(&self, v: usize) -> bool {
        self.cursor[v] == 0
    }
}

/// The growing tree: its vertices `T`, the newest level `S`, rejected roots
/// `B` and the probe history.
#[derive(Clone, Debug)]
pub struct TreeState {
    pub(crate) tree_edges: Vec<Edge>,
    pub(crate) vertices: Vec<usize>,
    pub(crate) frontier: Vec<usize>,
    pub(crate) rejected: Vec<usize>,
    pub(crate) round: usize,
    pub(crate) parent: Vec<usize>,
    pub(crate) in_tree: Vec<bool>,
    pub(crate) in_rejected: Vec<bool>,
    pub(crate) probes: ProbeLog,
}

impl TreeState {
    pub fn new(n: usize, record_probes: bool) -> Self {
        TreeState {
            tree_edges: Vec::new(),
            vertices: Vec::new(),
            frontier: Vec::new(),
            rejected: Vec::new(),
            round: 0,
            parent: vec![NONE; n],
            in_tree: vec![false; n],
            in_rejected: vec![false; n],
            probes: ProbeLog::new(n, record_probes),
        }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Tree edges as a spanning subgraph of the base vertex set.
    pub fn tree(&self) -> Graph {
        Graph::new(self.n(), &self.tree_edges).expect("tree edges are simple")
    }

    pub fn tree_edges(&self) -> &[Edge] {
        &self.tree_edges
    }

    /// `T` in discovery order; the root comes first.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `S`, ascending.
    pub fn frontier(&self) -> &[usize] {
        &self.frontier
    }

    pub fn rejected(&self) -> &[usize] {
        &self.rejected
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_tree[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NONE).then_some(self.parent[v])
    }

    pub fn probes_used(&self) -> u64 {
        self.probes.total
    }

    pub fn probe_trace(&self) -> Option<&[Edge]> {
        self.probes.trace.as_deref()
    }

    pub(crate) fn take_probe_trace(&mut self) -> Option<Vec<Edge>> {
        self.probes.trace.take()
    }

    pub(crate) fn attach(&mut self, parent: usize, child: usize) {
        self.in_tree[child] = true;
        self.parent[child] = parent;
        self.vertices.push(child);
        self.tree_edges.push(canonical(parent, child));
    }

    pub(crate) fn plant(&mut self, root: usize) {
        self.in_tree[root] = true;
        self.vertices.push(root);
    }

    fn uproot(&mut self) {
        for &v in &self.vertices {
            self.in_tree[v] = false;
            self.parent[v] = NONE;
        }
        self.vertices.clear();
        self.tree_edges.clear();
        self.frontier.clear();
        self.round = 0;
    }

    fn reject(&mut self, v: usize) {
        if !self.in_rejected[v] {
            self.in_rejected[v] = true;
            self.rejected.push(v);
        }
    }

    fn in_band(&self, params: &WitnessParams) -> bool {
        let t = self.vertices.len();
        let ratio = self.frontier.len() as f64 / t as f64;
        (params.i0..=2 * params.i0).contains(&t)
            && params.ratio_band.0 <= ratio
            && ratio <= params.ratio_band.1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthFailureKind {
    /// `l0_cap` roots tried (or no untried root left) without a root
    /// having `d` retained neighbours.
    RootSearchExhausted,
    /// The frontier died or the round cap was hit.
    GrowthStalled,
    /// `|T|` passed `2 i0` without the frontier ratio entering the band.
    BandMissed,
}

impl fmt::Display for GrowthFailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthFailureKind::RootSearchExhausted => "root-search-exhausted",
            GrowthFailureKind::GrowthStalled => "growth-stalled",
            GrowthFailureKind::BandMissed => "band-missed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GrowthFailure {
    /// The last failure seen; `RootSearchExhausted` if no root ever passed
    /// the neighbour test.
    pub kind: GrowthFailureKind,
    pub roots_tried: usize,
    pub probes: u64,
    pub(crate) state: Box<TreeState>,
}

/// Restricted breadth-first growth from successive roots until the tree
/// size and frontier ratio land in their target ranges together.
pub fn initial_tree_growth<A: Adjacency + ?Sized>(
    g: &A,
    first: &Exposure,
    params: &WitnessParams,
) -> Result<TreeState, GrowthFailure> {
    let n = g.vertex_count();
    let mut st = TreeState::new(n, params.record_probes);
    let mut roots_tried = 0;
    let mut last: Option<GrowthFailureKind> = None;
    let mut next_root = 0;

    let fail = |st: TreeState, kind: Option<GrowthFailureKind>, roots_tried| GrowthFailure {
        kind: kind.unwrap_or(GrowthFailureKind::RootSearchExhausted),
        roots_tried,
        probes: st.probes.total,
        state: Box::new(st),
    };

    loop {
        if roots_tried >= params.l0_cap {
            return Err(fail(st, last, roots_tried));
        }
        let root = (next_root..n).find(|&v| !st.in_rejected[v] && st.probes.untouched(v));
        let Some(root) = root else {
            return Err(fail(st, last, roots_tried));
        };
        next_root = root + 1;
        roots_tried += 1;

        let budget = params.r.saturating_sub(st.rejected.len()).max(1);
        let seen = st.probes.probe(g, root, budget, |w| st.in_rejected[w]);
        let kids: Vec<usize> = seen
            .into_iter()
            .filter(|&w| first.retained(root, w))
            .collect();
        if kids.len() < params.d {
            st.reject(root);
            continue;
        }

        st.plant(root);
        for &w in &kids {
            st.attach(root, w);
        }
        st.frontier = kids;
        st.round = 1;

        let outcome = loop {
            if st.in_band(params) {
                break None;
            }
            if st.vertices.len() > 2 * params.i0 {
                break Some(GrowthFailureKind::BandMissed);
            }
            if st.frontier.is_empty() || st.round >= params.round_cap {
                break Some(GrowthFailureKind::GrowthStalled);
            }
            grow_level(g, &mut st, first, params.branch_limit);
        };
        match outcome {
            None => return Ok(st),
            Some(kind) => {
                last = Some(kind);
                st.uproot();
                st.reject(root);
            }
        }
    }
}

/// One plain RBFS level: every frontier vertex probes its next
/// `branch_limit` unused neighbours; the first retained edge to reach a new
/// vertex joins the tree.
fn grow_level<A: Adjacency + ?Sized>(
    g: &A,
    st: &mut TreeState,
    first: &Exposure,
    branch_limit: usize,
) {
    let frontier = std::mem::take(&mut st.frontier);
    let mut next = Vec::new();
    for &u in &frontier {
        for w in st.probes.probe(g, u, branch_limit, |_| false) {
            if first.retained(u, w) && !st.in_tree[w] && !st.in_rejected[w] {
                st.attach(u, w);
                next.push(w);
            }
        }
    }
    next.sort_unstable();
    st.frontier = next;
    st.round += 1;
}
