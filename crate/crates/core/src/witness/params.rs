use crate::error::{Error, Result};
use crate::graph::DEFAULT_CYCLE_BUDGET;
use crate::percolation::split_probability;

/// Tunable constants of the witness search.
///
/// Defaults from [`WitnessParams::for_graph`] (natural logarithms
/// throughout):
///
/// | field | default |
/// |---|---|
/// | `i0` | `ceil(ln(r)^3)`, at most `ceil(n/20)` |
/// | `d` | `ceil(ln(r)^(1/2))`, at least 1 |
/// | `l0_cap` | `min(ceil((2d)^d), n)` |
/// | `horizon` | `max(3, ceil(10/eps))`, at most 12 |
/// | `endgame_horizon` | 32 |
/// | `ratio_band` | `[eps/4, 3 eps/4]` |
/// | `heavy_multiplier` | 8 (heavy means frontier degree `>= 8 r`) |
/// | `round_cap` | `10 ceil(ln n)` |
/// | `branch_limit` | `r` |
/// | `trim_threshold` | `max(ceil(ln ln r), 5)` |
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessParams {
    pub epsilon: f64,
    /// Minimum degree of the base graph.
    pub r: usize,
    /// Target tree size: initial growth stops inside `[i0, 2 i0]`.
    pub i0: usize,
    /// Retained root neighbours needed to start a tree.
    pub d: usize,
    /// Roots tried before giving up.
    pub l0_cap: usize,
    /// Short-cycle horizon used when certifying sprinkled edge sets.
    pub horizon: usize,
    /// Largest horizon tried by the final certificate search.
    pub endgame_horizon: usize,
    /// Accepted `|S|/|T|` interval at the end of initial growth.
    pub ratio_band: (f64, f64),
    /// A vertex receiving at least `heavy_multiplier * r` frontier probes in
    /// one round is heavy.
    pub heavy_multiplier: f64,
    pub round_cap: usize,
    /// Unused neighbours probed per frontier vertex per round.
    pub branch_limit: usize,
    /// Frontier vertices with more retained edges than this lose all of them.
    pub trim_threshold: usize,
    pub cycle_budget: u64,
    /// Replaces the target probability `(1 + eps)/r`.
    pub p_override: Option<f64>,
    /// Keep the full list of probed pairs in the report.
    pub record_probes: bool,
}

impl WitnessParams {
    pub fn for_graph(n: usize, r: usize, epsilon: f64) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidParameter(
                "witness search needs r >= 1".into(),
            ));
        }
        let ln_r = (r as f64).ln();
        let i0 = (ln_r.powi(3).ceil() as usize).min(n.div_ceil(20)).max(1);
        let d = (ln_r.max(0.0).sqrt().ceil() as usize).max(1);
        let l0 = (2.0 * d as f64).powi(d as i32).ceil();
        let l0_cap = if l0 >= n as f64 { n } else { l0 as usize }.max(1);
        let horizon = if epsilon > 0.0 {
            ((10.0 / epsilon).ceil().min(12.0) as usize).max(3)
        } else {
            3
        };
        let ln_ln_r = if r >= 3 { ln_r.ln().ceil() as usize } else { 0 };
        let params = WitnessParams {
            epsilon,
            r,
            i0: i0.max(d),
            d,
            l0_cap,
            horizon,
            endgame_horizon: 32,
            ratio_band: (epsilon / 4.0, 3.0 * epsilon / 4.0),
            heavy_multiplier: 8.0,
            round_cap: 10 * ((n.max(2) as f64).ln().ceil() as usize),
            branch_limit: r,
            trim_threshold: ln_ln_r.max(5),
            cycle_budget: DEFAULT_CYCLE_BUDGET,
            p_override: None,
            record_probes: false,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be > 0, got {}", self.epsilon));
        }
        if self.d < 1 || self.i0 < self.d {
            return bad(format!(
                "need i0 >= d >= 1, got i0 = {}, d = {}",
                self.i0, self.d
            ));
        }
        let (lo, hi) = self.ratio_band;
        if !(0.0 < lo && lo <= hi && hi < 1.0) {
            return bad(format!("ratio band [{lo}, {hi}] must lie inside (0, 1)"));
        }
        if self.horizon < 3 || self.endgame_horizon < 3 {
            return bad("certificate horizons must be >= 3".into());
        }
        if self.l0_cap < 1 || self.round_cap < 1 || self.branch_limit < 1 {
            return bad("l0_cap, round_cap and branch_limit must be >= 1".into());
        }
        if self.heavy_multiplier.is_nan() || self.heavy_multiplier <= 0.0 {
            return bad("heavy_multiplier must be > 0".into());
        }
        Ok(())
    }

    /// `(p, p1, p2)`: the target probability and its two-round split.
    ///
    /// Without an override, `p = (1 + eps)/r` and `p1 = (1 + eps/2)/r`; with
    /// an override `p`, `p1` keeps the same ratio to `p`.
    pub fn probabilities(&self) -> Result<(f64, f64, f64)> {
        let r = self.r as f64;
        let (p, p1) = match self.p_override {
            Some(p) => (p, p * (1.0 + self.epsilon / 2.0) / (1.0 + self.epsilon)),
            None => ((1.0 + self.epsilon) / r, (1.0 + self.epsilon / 2.0) / r),
        };
        if p.is_nan() || p >= 1.0 {
            return Err(Error::Probability(format!(
                "target probability {p} must be below 1; r = {} is too small",
                self.r
            )));
        }
        let p2 = split_probability(p, p1)?;
        Ok((p, p1, p2))
    }

    pub(crate) fn heavy_threshold(&self) -> f64 {
        self.heavy_multiplier * self.r as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_for_k3000() {
        let p = WitnessParams::for_graph(3000, 2999, 0.5).unwrap();
        assert_eq!((p.i0, p.d, p.l0_cap, p.horizon), (150, 3, 216, 12));
        let big = WitnessParams::for_graph(100_000, 99_999, 0.5).unwrap();
        assert_eq!(big.i0, 1527);
        assert_eq!(p.ratio_band, (0.125, 0.375));
        let (t, p1, p2) = p.probabilities().unwrap();
        assert!((t - 1.5 / 2999.0).abs() < 1e-15);
        assert!((p1 - 1.25 / 2999.0).abs() < 1e-15);
        assert!(((1.0 - p1) * (1.0 - p2) - (1.0 - t)).abs() < 1e-15);
    }

    #[test]
    fn defaults_for_small_r() {
        let p = WitnessParams::for_graph(20_000, 32, 0.5).unwrap();
        assert_eq!((p.i0, p.d, p.l0_cap), (42, 2, 16));
        assert!(WitnessParams::for_graph(10, 1, 0.5)
            .unwrap()
            .probabilities()
            .is_err());
        assert!(WitnessParams::for_graph(10, 4, 0.0).is_err());
    }
}
