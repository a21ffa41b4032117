//! Shared fixtures for the criterion benchmarks.

use percoplanar_core::generators::{generate, FamilySpec};
use percoplanar_core::percolation::{percolate, SampleParams};
use percoplanar_core::Graph;

/// A sample of `G(n, c/n)` drawn from a materialized `K_n`.
pub fn sparse_random(n: usize, c: f64, seed: u64) -> Graph {
    let base = Graph::complete(n);
    percolate(
        &base,
        &SampleParams::new(c / n as f64, seed, 0).expect("valid p"),
    )
}

pub fn regular(n: usize, r: usize, seed: u64) -> Graph {
    generate(&FamilySpec::RandomRegular { n, r }, seed).expect("regular graph")
}

/// A supercritical sample of a random `r`-regular graph at `p = (1 + eps)/r`.
pub fn supercritical_regular(n: usize, r: usize, eps: f64, seed: u64) -> Graph {
    let base = regular(n, r, seed);
    let p = (1.0 + eps) / r as f64;
    percolate(&base, &SampleParams::new(p, seed, 1).expect("valid p"))
}
