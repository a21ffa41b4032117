//! Bernoulli edge percolation, two-round exposure and coupled sampling.
//!
//! `percolate(G, p)` keeps edge `{u, v}` iff its `Single`-domain variate is
//! below `p`, so it coincides with [`CoupledSampler::query`] for the same
//! `(seed, stream)`. The two rounds of [`two_round_sample`] draw from the
//! `FirstRound` and `SecondRound` domains and are therefore independent of
//! each other and of single-round samples.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rng::{sequential_rng, Domain, EdgeVariates};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleParams {
    pub p: f64,
    pub seed: u64,
    pub stream_id: u64,
}

impl SampleParams {
    pub fn new(p: f64, seed: u64, stream_id: u64) -> Result<Self> {
        check_probability(p, "p")?;
        Ok(SampleParams { p, seed, stream_id })
    }
}

pub(crate) fn check_probability(p: f64, name: &str) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Probability(format!("{name} = {p} is not in [0, 1]")))
    }
}

/// Spanning subgraph keeping each edge independently with probability `p`.
pub fn percolate(g: &Graph, params: &SampleParams) -> Graph {
    CoupledSampler::new(g, params.seed, params.stream_id).query(params.p)
}

/// Solves `(1 - p1)(1 - p2) = 1 - p` for `p2`.
pub fn split_probability(p: f64, p1: f64) -> Result<f64> {
    check_probability(p, "p")?;
    check_probability(p1, "p1")?;
    if p1 > p {
        return Err(Error::Probability(format!(
            "first-round probability {p1} exceeds the target {p}"
        )));
    }
    if p1 == p {
        return Ok(0.0);
    }
    if p1 == 1.0 || p == 1.0 {
        return Err(Error::Probability(format!(
            "no second-round probability splits p = {p} with p1 = {p1}"
        )));
    }
    Ok(1.0 - (1.0 - p) / (1.0 - p1))
}

/// Probability of the union of independent rounds at `p1` and `p2`.
pub fn combined_probability(p1: f64, p2: f64) -> f64 {
    1.0 - (1.0 - p1) * (1.0 - p2)
}

/// Independent samples `G_1 ~ G_{p1}` and `G_2 ~ G_{p2}`; their union is
/// distributed as `G_p` with `p = 1 - (1 - p1)(1 - p2)`.
pub fn two_round_sample(
    g: &Graph,
    p1: f64,
    p2: f64,
    seed: u64,
    stream_id: u64,
) -> Result<(Graph, Graph)> {
    check_probability(p1, "p1")?;
    check_probability(p2, "p2")?;
    let first = EdgeVariates::new(seed, stream_id, Domain::FirstRound);
    let second = EdgeVariates::new(seed, stream_id, Domain::SecondRound);
    let g1 = g.spanning_subgraph(|_, (u, v)| first.retained(u, v, p1));
    let g2 = g.spanning_subgraph(|_, (u, v)| second.retained(u, v, p2));
    Ok((g1, g2))
}

/// Union of two graphs on the same vertex set.
pub fn union(a: &Graph, b: &Graph) -> Graph {
    assert_eq!(a.n(), b.n(), "union of graphs on different vertex sets");
    let (x, y) = (a.edges(), b.edges());
    let mut out: Vec<Edge> = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let next = match (x.get(i), y.get(j)) {
            (Some(&e), Some(&f)) if e == f => {
                i += 1;
                j += 1;
                e
            }
            (Some(&e), Some(&f)) if e < f => {
                i += 1;
                e
            }
            (Some(_), Some(&f)) => {
                j += 1;
                f
            }
            (Some(&e), None) => {
                i += 1;
                e
            }
            (None, Some(&f)) => {
                j += 1;
                f
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    Graph::from_sorted_canonical(a.n(), out)
}

/// Per-edge uniforms fixed once per `(seed, stream)`: the sample at `p` is
/// the set of edges whose variate is below `p`, so samples are nested in `p`.
#[derive(Clone, Debug)]
pub struct CoupledSampler<'g> {
    graph: &'g Graph,
    variates: EdgeVariates,
}

impl<'g> CoupledSampler<'g> {
    pub fn new(graph: &'g Graph, seed: u64, stream_id: u64) -> Self {
        Self::with_domain(graph, seed, stream_id, Domain::Single)
    }

    pub fn with_domain(graph: &'g Graph, seed: u64, stream_id: u64, domain: Domain) -> Self {
        CoupledSampler {
            graph,
            variates: EdgeVariates::new(seed, stream_id, domain),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn variates(&self) -> EdgeVariates {
        self.variates
    }

    pub fn variate(&self, u: usize, v: usize) -> f64 {
        self.variates.variate(u, v)
    }

    pub fn query(&self, p: f64) -> Graph {
        let ev = self.variates;
        self.graph
            .spanning_subgraph(|_, (u, v)| ev.retained(u, v, p))
    }
}

/// `G_{n,p}` without materializing `K_n`, by geometric skipping over the
/// pairs `(w, v)`, `w < v`, in order of `v`. Same distribution as
/// percolating `K_n`, but not coupled across `p`.
pub fn sample_complete(n: usize, p: f64, seed: u64, stream_id: u64) -> Result<Graph> {
    check_probability(p, "p")?;
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = sequential_rng(seed, stream_id);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + if skip.is_finite() {
            skip as i64
        } else {
            i64::MAX / 4
        };
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Ok(Graph::from_unsorted_distinct(n, edges))
}
