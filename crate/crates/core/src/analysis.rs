//! Closed-form predictions for sparse random graphs `G(n, c/n)`.

use crate::error::{Error, Result};

/// Survival probability `x` of the giant component: the root of
/// `x = 1 - exp(-c x)` in `(0, 1)` for `c > 1`, zero otherwise.
///
/// Bisection on `f(x) = 1 - exp(-c x) - x` over `[tol, 1 - tol]`.
pub fn giant_fixed_point(c: f64, tol: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mean degree must be > 0, got {c}"
        )));
    }
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be in (0, 0.5), got {tol}"
        )));
    }
    if c <= 1.0 {
        return Ok(0.0);
    }
    let f = |x: f64| -(-c * x).exp_m1() - x;
    let (mut lo, mut hi) = (tol, 1.0 - tol);
    // very close to c = 1 the root can sit below `tol`
    if f(lo) <= 0.0 {
        return Ok(0.0);
    }
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GiantPrediction {
    pub c: f64,
    pub x: f64,
    pub vertices: f64,
    pub edges: f64,
}

/// Giant size `x n` and edge count `c n (2x - x^2) / 2`.
pub fn predicted_giant(n: usize, c: f64) -> Result<GiantPrediction> {
    if c <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "giant prediction needs c > 1, got {c}"
        )));
    }
    let x = giant_fixed_point(c, 1e-12)?;
    let n = n as f64;
    Ok(GiantPrediction {
        c,
        x,
        vertices: x * n,
        edges: c * n * (2.0 * x - x * x) / 2.0,
    })
}

/// `|-ln(1 - x)/x - sum_{k<=K} x^k/(k + 1)|`, with `K` the first index whose
/// tail bound `x^{K+1} / ((K + 2)(1 - x))` drops below `1e-12`.
pub fn series_identity_check(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "x must be in (0, 1), got {x}"
        )));
    }
    let closed = -(-x).ln_1p() / x;
    let mut sum = 0.0;
    let mut power = 1.0;
    let mut k = 0u32;
    loop {
        sum += power / f64::from(k + 1);
        power *= x;
        if power / (f64::from(k + 2) * (1.0 - x)) < 1e-12 {
            break;
        }
        k += 1;
    }
    Ok((closed - sum).abs())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleExpectation {
    /// `sum_{k=3}^{g0} c^k / (2k)`: limiting mean number of cycles of
    /// length at most `g0`.
    pub refined: f64,
    /// `g0 c^{g0}`, a crude bound on the same quantity.
    pub loose_upper: f64,
}

/// Expected number of cycles of length `3..=g0` in `G(n, c/n)` as
/// `n -> infinity`. `n` is accepted for symmetry with the simulations but
/// the limit does not depend on it.
pub fn expected_short_cycles(_n: usize, c: f64, g0: usize) -> Result<CycleExpectation> {
    if g0 < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length bound must be >= 3, got {g0}"
        )));
    }
    if c.is_nan() || c <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "mean degree must be > 0, got {c}"
        )));
    }
    let refined = (3..=g0).map(|k| c.powi(k as i32) / (2.0 * k as f64)).sum();
    Ok(CycleExpectation {
        refined,
        loose_upper: g0 as f64 * c.powi(g0 as i32),
    })
}

/// Probability that at least one of `copies` disjoint `K_{r+1}` keeps all
/// of its edges under percolation at `p`.
pub fn clique_survival_probability(copies: usize, r: usize, p: f64) -> f64 {
    let clique_edges = (r * (r + 1) / 2) as i32;
    1.0 - (1.0 - p.powi(clique_edges)).powi(copies as i32)
}
