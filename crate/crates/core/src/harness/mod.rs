//! Monte Carlo sweeps over a parameter grid.
//!
//! Each grid point fixes a graph family and a retention probability; each
//! trial draws one percolated sample and runs the planarity oracle, the
//! witness search, or both. Trial seeds are derived from
//! `(master_seed, grid_index, trial)` so results do not depend on how many
//! threads run the sweep. In coupled mode the grid index is dropped from
//! the trial seed, which makes samples of the same trial nested in `p`.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

pub use config::{
    load_config, parse_config, ExperimentConfig, FamilyTemplate, GridPoint, Mode, ResolvedPoint,
    Retention,
};
pub use output::{
    emit_csv, emit_summary_csv, format_float, format_summary, records_to_csv, CSV_HEADER,
};

use crate::error::{Error, Result};
use crate::generators::{generate, FamilySpec};
use crate::graph::Graph;
use crate::percolation::{percolate, sample_complete, SampleParams};
use crate::planarity::{is_planar, verify_certificate, Certificate};
use crate::rng::derive_seed;
use crate::stats::Proportion;
use crate::witness::{find_witness, witness_sample, WitnessParams};

/// Complete graphs with more edges than this are sampled without being
/// materialized (oracle mode, uncoupled).
pub const IMPLICIT_EDGE_THRESHOLD: u64 = 20_000_000;

const BASE_GRAPH_TAG: u64 = 0xba5e;
const SAMPLE_STREAM: u64 = 0;

/// One row of the results table.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub grid_index: usize,
    pub family: String,
    pub n: usize,
    pub m: u64,
    pub r: usize,
    pub epsilon: Option<f64>,
    pub p: f64,
    pub seed: u64,
    pub trial: usize,
    pub oracle_planar: Option<bool>,
    pub witness_outcome: Option<String>,
    pub certificate_kind: Option<String>,
    /// Kept for auditing; not written to CSV.
    pub certificate: Option<Certificate>,
    pub giant_vertices: usize,
    pub giant_edges: usize,
    pub runtime_ms: Option<f64>,
}

/// Aggregates for one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryStats {
    pub grid_index: usize,
    pub family: String,
    pub n: usize,
    pub r: usize,
    pub epsilon: Option<f64>,
    pub p: f64,
    pub trials: usize,
    pub planar: Option<Proportion>,
    pub certified: Option<Proportion>,
    pub mean_giant_fraction: f64,
}

/// Base graph of a grid point, or just its size when it is only ever
/// sampled implicitly.
enum Base {
    Materialized(Graph),
    ImplicitComplete { n: usize },
}

impl Base {
    fn n(&self) -> usize {
        match self {
            Base::Materialized(g) => g.n(),
            Base::ImplicitComplete { n } => *n,
        }
    }

    fn m(&self) -> u64 {
        match self {
            Base::Materialized(g) => g.m() as u64,
            Base::ImplicitComplete { n } => complete_edges(*n),
        }
    }

    fn min_degree(&self) -> usize {
        match self {
            Base::Materialized(g) => g.min_degree(),
            Base::ImplicitComplete { n } => n.saturating_sub(1),
        }
    }
}

fn complete_edges(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

struct PointPlan {
    index: usize,
    spec: FamilySpec,
    base: Base,
    r: usize,
    p: f64,
    epsilon: Option<f64>,
    retention: Retention,
    trials: usize,
}

fn plan_point(config: &ExperimentConfig, index: usize) -> Result<PointPlan> {
    let ResolvedPoint {
        spec,
        retention,
        trials,
    } = config.resolve(index)?;
    let implicit = match spec {
        FamilySpec::Complete { n } => {
            !config.coupled
                && !config.mode.runs_witness()
                && complete_edges(n) > IMPLICIT_EDGE_THRESHOLD
        }
        _ => false,
    };
    let base = if implicit {
        let FamilySpec::Complete { n } = spec else {
            unreachable!()
        };
        Base::ImplicitComplete { n }
    } else {
        let seed = if config.coupled {
            derive_seed(&[config.seed(), BASE_GRAPH_TAG])
        } else {
            derive_seed(&[config.seed(), index as u64, BASE_GRAPH_TAG])
        };
        Base::Materialized(generate(&spec, seed)?)
    };
    let r = base.min_degree();
    let n = base.n();
    let (p, epsilon) = match retention {
        Retention::Epsilon(e) => {
            if r == 0 {
                return Err(Error::InvalidParameter(
                    "epsilon needs a base graph with minimum degree >= 1".into(),
                ));
            }
            ((1.0 + e) / r as f64, Some(e))
        }
        Retention::MeanDegree(c) => {
            let scale = match spec {
                FamilySpec::Complete { .. } => n,
                _ => r,
            };
            if scale == 0 {
                return Err(Error::InvalidParameter(
                    "c needs a non-empty base graph".into(),
                ));
            }
            (c / scale as f64, config.epsilon)
        }
        Retention::Explicit(p) => (p, config.epsilon),
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(format!(
            "grid point gives p = {p}, outside [0, 1]"
        )));
    }
    if config.mode.runs_witness() && p >= 1.0 {
        return Err(Error::Probability("witness runs need p < 1".into()));
    }
    Ok(PointPlan {
        index,
        spec,
        base,
        r,
        p,
        epsilon,
        retention,
        trials,
    })
}

fn trial_seed(config: &ExperimentConfig, index: usize, trial: usize) -> u64 {
    if config.coupled {
        derive_seed(&[config.seed(), trial as u64])
    } else {
        derive_seed(&[config.seed(), index as u64, trial as u64])
    }
}

fn witness_params(config: &ExperimentConfig, plan: &PointPlan, g: &Graph) -> Result<WitnessParams> {
    let mut params = WitnessParams::for_graph(g.n(), plan.r, plan.epsilon.unwrap_or(0.5))?;
    if !matches!(plan.retention, Retention::Epsilon(_)) {
        params.p_override = Some(plan.p);
    }
    if let Some(ell) = config.ell {
        params.horizon = ell;
    }
    params.validate()?;
    Ok(params)
}

fn giant(sample: &Graph) -> (usize, usize) {
    if sample.n() == 0 {
        return (0, 0);
    }
    let (g, _) = sample.largest_component();
    (g.n(), g.m())
}

fn run_trial(config: &ExperimentConfig, plan: &PointPlan, trial: usize) -> Result<TrialRecord> {
    let started = config.timing.then(Instant::now);
    let seed = trial_seed(config, plan.index, trial);
    let mut record = TrialRecord {
        grid_index: plan.index,
        family: plan.spec.tag().to_string(),
        n: plan.base.n(),
        m: plan.base.m(),
        r: plan.r,
        epsilon: plan.epsilon,
        p: plan.p,
        seed,
        trial,
        oracle_planar: None,
        witness_outcome: None,
        certificate_kind: None,
        certificate: None,
        giant_vertices: 0,
        giant_edges: 0,
        runtime_ms: None,
    };

    let sample = match &plan.base {
        Base::ImplicitComplete { n } => sample_complete(*n, plan.p, seed, SAMPLE_STREAM)?,
        Base::Materialized(g) if config.mode.runs_witness() => {
            let params = witness_params(config, plan, g)?;
            let report = find_witness(g, &params, seed)?;
            let sample = witness_sample(g, &params, seed)?;
            record.witness_outcome = Some(report.outcome.tag().to_string());
            if let Some(cert) = report.outcome.certificate() {
                if !verify_certificate(&sample, cert).is_valid() {
                    return Err(Error::InvalidParameter(format!(
                        "certificate failed verification (seed {seed})"
                    )));
                }
                record.certificate_kind = Some(cert.kind().to_string());
                record.certificate = Some(cert.clone());
            }
            sample
        }
        Base::Materialized(g) => percolate(g, &SampleParams::new(plan.p, seed, SAMPLE_STREAM)?),
    };

    if config.mode.runs_oracle() {
        let planar = is_planar(&sample);
        if planar && record.certificate.is_some() {
            return Err(Error::InvalidParameter(format!(
                "certified sample is planar according to the oracle (seed {seed})"
            )));
        }
        record.oracle_planar = Some(planar);
    }
    (record.giant_vertices, record.giant_edges) = giant(&sample);
    record.runtime_ms = started.map(|t| t.elapsed().as_secs_f64() * 1e3);
    Ok(record)
}

/// Runs every trial of every grid point. Records come back sorted by
/// `(grid_index, trial)`.
///
/// If a trial fails, the sweep stops after its grid point; when
/// `config.out` is set, the records completed so far are written to
/// `<out>.partial` before the error is returned.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let mut records: Vec<TrialRecord> = Vec::new();
    for index in 0..config.grid.len() {
        let plan = match plan_point(config, index) {
            Ok(plan) => plan,
            Err(e) => {
                write_partial(config, &records)?;
                return Err(Error::GridPoint {
                    index,
                    source: Box::new(e),
                });
            }
        };
        let results: Vec<Result<TrialRecord>> = pool.install(|| {
            (0..plan.trials)
                .into_par_iter()
                .map(|t| run_trial(config, &plan, t))
                .collect()
        });
        let mut failure = None;
        for (trial, result) in results.into_iter().enumerate() {
            match result {
                Ok(rec) => records.push(rec),
                Err(e) if failure.is_none() => failure = Some((trial, e)),
                Err(_) => {}
            }
        }
        if let Some((trial, source)) = failure {
            let partial = write_partial(config, &records)?;
            return Err(Error::TrialFailed {
                index,
                trial,
                completed: records.len(),
                partial,
                source: Box::new(source),
            });
        }
    }
    Ok(records)
}

/// Path of the partial-results file for an output path.
pub fn partial_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".partial");
    PathBuf::from(name)
}

fn write_partial(config: &ExperimentConfig, records: &[TrialRecord]) -> Result<Option<PathBuf>> {
    match &config.out {
        Some(out) if !records.is_empty() => {
            let path = partial_path(out);
            emit_csv(records, &path)?;
            Ok(Some(path))
        }
        _ => Ok(None),
    }
}

/// Per-grid-point aggregates with 95% Wilson intervals.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryStats> {
    let mut out: Vec<SummaryStats> = Vec::new();
    let mut start = 0;
    while start < records.len() {
        let index = records[start].grid_index;
        let end = start
            + records[start..]
                .iter()
                .take_while(|r| r.grid_index == index)
                .count();
        let group = &records[start..end];
        let first = &group[0];
        let count = |pred: &dyn Fn(&TrialRecord) -> Option<bool>| {
            let seen: Vec<bool> = group.iter().filter_map(pred).collect();
            (!seen.is_empty()).then(|| {
                let hits = seen.iter().filter(|&&b| b).count();
                Proportion::new(hits as u64, seen.len() as u64)
            })
        };
        let planar = count(&|r| r.oracle_planar);
        let certified = count(&|r| {
            r.witness_outcome
                .as_ref()
                .map(|_| r.certificate_kind.is_some())
        });
        let mean_giant_fraction = group
            .iter()
            .map(|r| {
                if r.n == 0 {
                    0.0
                } else {
                    r.giant_vertices as f64 / r.n as f64
                }
            })
            .sum::<f64>()
            / group.len() as f64;
        out.push(SummaryStats {
            grid_index: index,
            family: first.family.clone(),
            n: first.n,
            r: first.r,
            epsilon: first.epsilon,
            p: first.p,
            trials: group.len(),
            planar,
            certified,
            mean_giant_fraction,
        });
        start = end;
    }
    out
}
