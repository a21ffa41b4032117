//! Constructive search for a non-planarity certificate inside a percolated
//! graph.
//!
//! The sample is drawn in two independent rounds, `G_1` at `p1` and `G_2`
//! at `p2`, whose union is a sample at `p`. A tree is grown in `G_1` by
//! restricted breadth-first search, then extended round by round. Rounds
//! whose probes fall back into the tree (or onto heavy vertices) hand the
//! probed pairs to a sprinkling step that keeps each with probability
//! `p2`; when growth falls off, the union-sample component holding the
//! tree is searched for a density/girth certificate. Every certificate is
//! re-verified against `G_1 ∪ G_2` before it is reported.

mod params;
mod round;
mod tree;

use std::fmt;

pub use params::WitnessParams;
pub use round::{expand_frontier, Gamma, RoundLedger, RoundOutcome, RoundSignal};
pub use tree::{initial_tree_growth, Exposure, GrowthFailure, GrowthFailureKind, TreeState};

use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::percolation::{two_round_sample, union};
use crate::planarity::{
    density_certificate_with_budget, search_certificate, verify_certificate, Certificate,
};
use crate::rng::Domain;

/// Stream used for both exposure rounds of a witness run.
pub const WITNESS_STREAM: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mechanism {
    DensityAfterGrowth,
    InternalSprinkle,
    HeavyBipartite,
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mechanism::DensityAfterGrowth => "density-after-growth",
            Mechanism::InternalSprinkle => "internal-sprinkle",
            Mechanism::HeavyBipartite => "heavy-bipartite",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExhaustReason {
    Growth(GrowthFailureKind),
    /// The final search found no certificate.
    NoCertificate,
}

impl fmt::Display for ExhaustReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExhaustReason::Growth(k) => k.fmt(f),
            ExhaustReason::NoCertificate => f.write_str("no-certificate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessOutcome {
    Certified {
        certificate: Certificate,
        mechanism: Mechanism,
    },
    Exhausted {
        reason: ExhaustReason,
    },
}

impl WitnessOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            WitnessOutcome::Certified { .. } => "Certified",
            WitnessOutcome::Exhausted { .. } => "Exhausted",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            WitnessOutcome::Certified { certificate, .. } => Some(certificate),
            WitnessOutcome::Exhausted { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, WitnessOutcome::Certified { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub outcome: WitnessOutcome,
    pub rounds: usize,
    pub tree_size: usize,
    pub probes: u64,
    pub seed: u64,
    pub p: f64,
    pub p1: f64,
    pub p2: f64,
    /// Every probed pair in probe order, when `record_probes` is set.
    pub probe_trace: Option<Vec<Edge>>,
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            WitnessOutcome::Certified {
                certificate,
                mechanism,
            } => write!(
                f,
                "Certified mechanism={mechanism} kind={}",
                certificate.kind()
            )?,
            WitnessOutcome::Exhausted { reason } => write!(f, "Exhausted reason={reason}")?,
        }
        write!(
            f,
            " rounds={} tree={} probes={} seed={} p={:.6e}",
            self.rounds, self.tree_size, self.probes, self.seed, self.p
        )
    }
}

/// Keeps each pool pair independently (per `second`) and searches
/// `tree ∪ kept` for a certificate at horizons up to `horizon`.
pub fn sprinkle_certify(
    n: usize,
    tree: &[Edge],
    pool: &[Edge],
    second: &Exposure,
    horizon: usize,
    budget: u64,
) -> Option<Certificate> {
    let mut edges: Vec<Edge> = tree.to_vec();
    edges.extend(pool.iter().copied().filter(|&(u, v)| second.retained(u, v)));
    edges.sort_unstable();
    edges.dedup();
    let h = Graph::new(n, &edges).expect("tree and pool pairs are simple");
    let cert = search_certificate(&h, horizon, budget)?;
    verify_certificate(&h, &cert).is_valid().then_some(cert)
}

/// Single-horizon variant of [`sprinkle_certify`].
pub fn sprinkle_certify_at(
    n: usize,
    tree: &[Edge],
    pool: &[Edge],
    second: &Exposure,
    horizon: usize,
    budget: u64,
) -> Result<Option<Certificate>> {
    let mut edges: Vec<Edge> = tree.to_vec();
    edges.extend(pool.iter().copied().filter(|&(u, v)| second.retained(u, v)));
    edges.sort_unstable();
    edges.dedup();
    let h = Graph::new(n, &edges).expect("tree and pool pairs are simple");
    density_certificate_with_budget(&h, horizon, budget)
}

/// The sample `G_1 ∪ G_2` that a run with this seed draws from.
pub fn witness_sample(g: &Graph, params: &WitnessParams, seed: u64) -> Result<Graph> {
    let (_, p1, p2) = params.probabilities()?;
    let (g1, g2) = two_round_sample(g, p1, p2, seed, WITNESS_STREAM)?;
    Ok(union(&g1, &g2))
}

/// Runs the whole search on `g` with randomness from `seed`.
pub fn find_witness(g: &Graph, params: &WitnessParams, seed: u64) -> Result<WitnessReport> {
    params.validate()?;
    let (p, p1, p2) = params.probabilities()?;
    let first = Exposure::new(seed, WITNESS_STREAM, Domain::FirstRound, p1);
    let second = Exposure::new(seed, WITNESS_STREAM, Domain::SecondRound, p2);

    let mut report = WitnessReport {
        outcome: WitnessOutcome::Exhausted {
            reason: ExhaustReason::NoCertificate,
        },
        rounds: 0,
        tree_size: 0,
        probes: 0,
        seed,
        p,
        p1,
        p2,
        probe_trace: None,
    };

    let mut state = match initial_tree_growth(g, &first, params) {
        Ok(s) => s,
        Err(mut failure) => {
            report.outcome = WitnessOutcome::Exhausted {
                reason: ExhaustReason::Growth(failure.kind),
            };
            report.probes = failure.probes;
            report.probe_trace = failure.state.take_probe_trace();
            return Ok(report);
        }
    };

    loop {
        if state.round() >= params.round_cap || state.frontier().is_empty() {
            break;
        }
        let outcome = expand_frontier(g, state, &first, params);
        state = outcome.next;
        let (pool, mechanism) = match outcome.signal {
            RoundSignal::Grew => continue,
            RoundSignal::Finalize { .. } => break,
            RoundSignal::InternalHeavy { pool } => (pool, Mechanism::InternalSprinkle),
            RoundSignal::HeavyBipartite { pool } => (pool, Mechanism::HeavyBipartite),
        };
        if let Some(cert) = sprinkle_certify(
            g.n(),
            state.tree_edges(),
            &pool,
            &second,
            params.horizon,
            params.cycle_budget,
        ) {
            let drawn = witness_sample(g, params, seed)?;
            assert!(
                verify_certificate(&drawn, &cert).is_valid(),
                "sprinkled certificate must lie in the drawn sample"
            );
            report.outcome = WitnessOutcome::Certified {
                certificate: cert,
                mechanism,
            };
            return Ok(finish(report, state));
        }
    }

    // endgame: the union-sample component holding the tree
    let drawn = witness_sample(g, params, seed)?;
    let root = state.vertices()[0];
    let comp = drawn
        .components()
        .into_iter()
        .find(|c| c.binary_search(&root).is_ok())
        .expect("every vertex lies in a component");
    let (sub, map) = drawn.induced_subgraph(&comp);
    if let Some(cert) = search_certificate(&sub, params.endgame_horizon, params.cycle_budget) {
        let cert = relabel(cert, &map);
        assert!(
            verify_certificate(&drawn, &cert).is_valid(),
            "endgame certificate must lie in the drawn sample"
        );
        report.outcome = WitnessOutcome::Certified {
            certificate: cert,
            mechanism: Mechanism::DensityAfterGrowth,
        };
    }
    Ok(finish(report, state))
}

fn finish(mut report: WitnessReport, mut state: TreeState) -> WitnessReport {
    report.rounds = state.round();
    report.tree_size = state.vertices().len();
    report.probes = state.probes_used();
    report.probe_trace = state.take_probe_trace();
    report
}

fn relabel(cert: Certificate, map: &[usize]) -> Certificate {
    match cert {
        Certificate::DensityGirth(mut d) => {
            d.vertices = d.vertices.iter().map(|&v| map[v]).collect();
            d.vertices.sort_unstable();
            d.edges = d
                .edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (map[u], map[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            d.edges.sort_unstable();
            Certificate::DensityGirth(d)
        }
        other => other,
    }
}
