use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{SummaryStats, TrialRecord};
use crate::error::{Error, Result};
use crate::stats::Proportion;

pub const CSV_HEADER: &str = "family,n,m,r,epsilon,p,seed,trial,oracle_planar,witness_outcome,\
certificate_kind,giant_vertices,giant_edges,runtime_ms";

/// Fixed-point decimal with 10 significant digits.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (9 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn opt_float(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

fn csv_row(rec: &TrialRecord) -> String {
    [
        rec.family.clone(),
        rec.n.to_string(),
        rec.m.to_string(),
        rec.r.to_string(),
        opt_float(rec.epsilon),
        format_float(rec.p),
        rec.seed.to_string(),
        rec.trial.to_string(),
        opt(&rec.oracle_planar),
        opt(&rec.witness_outcome),
        opt(&rec.certificate_kind),
        rec.giant_vertices.to_string(),
        rec.giant_edges.to_string(),
        opt_float(rec.runtime_ms),
    ]
    .join(",")
}

pub fn records_to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&csv_row(rec));
        out.push('\n');
    }
    out
}

pub fn emit_csv(records: &[TrialRecord], path: &Path) -> Result<()> {
    fs::write(path, records_to_csv(records)).map_err(|e| Error::io(path, e))
}

fn proportion_cells(p: &Option<Proportion>) -> [String; 3] {
    match p {
        Some(p) => [
            format_float(p.estimate),
            format_float(p.lower),
            format_float(p.upper),
        ],
        None => Default::default(),
    }
}

pub fn emit_summary_csv(stats: &[SummaryStats], path: &Path) -> Result<()> {
    let mut out = String::from(
        "grid,family,n,r,epsilon,p,trials,planar,planar_lo,planar_hi,\
         certified,certified_lo,certified_hi,mean_giant_fraction\n",
    );
    for s in stats {
        let mut row = vec![
            s.grid_index.to_string(),
            s.family.clone(),
            s.n.to_string(),
            s.r.to_string(),
            opt_float(s.epsilon),
            format_float(s.p),
            s.trials.to_string(),
        ];
        row.extend(proportion_cells(&s.planar));
        row.extend(proportion_cells(&s.certified));
        row.push(format_float(s.mean_giant_fraction));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Plain-text table for terminals.
pub fn format_summary(stats: &[SummaryStats]) -> String {
    let cell = |p: &Option<Proportion>| match p {
        Some(p) => format!(
            "{}/{} [{:.3}, {:.3}]",
            p.successes, p.trials, p.lower, p.upper
        ),
        None => "-".into(),
    };
    let mut out = format!(
        "{:>4} {:<18} {:>8} {:>7} {:>12} {:>26} {:>26} {:>8}\n",
        "grid", "family", "n", "r", "p", "planar", "certified", "giant"
    );
    for s in stats {
        let _ = writeln!(
            out,
            "{:>4} {:<18} {:>8} {:>7} {:>12.6e} {:>26} {:>26} {:>8.4}",
            s.grid_index,
            s.family,
            s.n,
            s.r,
            s.p,
            cell(&s.planar),
            cell(&s.certified),
            s.mean_giant_fraction
        );
    }
    out
}
