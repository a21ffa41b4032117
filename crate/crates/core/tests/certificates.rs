mod common;

use common::{brute_planar, planar_corpus, seeded_graph};
use num_rational::Ratio;
use percoplanar_core::generators::{hypercube, random_regular};
use percoplanar_core::graph::DEFAULT_CYCLE_BUDGET;
use percoplanar_core::percolation::{percolate, SampleParams};
use percoplanar_core::planarity::{
    density_certificate, euler_bound, is_planar, search_certificate, verify_certificate,
    violates_euler_bound, Certificate,
};
use percoplanar_core::{GirthResult, Graph};
use proptest::prelude::*;

#[test]
fn planar_graphs_respect_the_girth_density_bound() {
    let corpus = planar_corpus(1200, 17, is_planar);
    let mut checked = 0;
    let mut by_girth = std::collections::BTreeMap::<usize, usize>::new();
    for g in &corpus {
        assert!(is_planar(g));
        let n = g.n();
        let GirthResult::Finite(girth) = g.girth(n.max(3)) else {
            continue;
        };
        if n < 3 {
            continue;
        }
        // m (g - 2) <= g (n - 2), in integers
        let (m, n, k) = (g.m() as u128, n as u128, girth as u128);
        assert!(m * (k - 2) <= k * (n - 2), "n={n} m={m} g={k}");
        assert!(!violates_euler_bound(g.n(), g.m(), girth));
        checked += 1;
        *by_girth.entry(girth).or_default() += 1;
    }
    assert!(checked >= 1000, "only {checked} graphs with cycles");
    assert!(by_girth.keys().any(|&g| g >= 6), "{by_girth:?}");
}

#[test]
fn bound_is_attained_and_exact() {
    // triangulations (g = 3) and quadrangulations (Q3, g = 4) meet the bound
    assert!(!violates_euler_bound(6, 12, 3));
    assert!(violates_euler_bound(6, 13, 3));
    assert!(!violates_euler_bound(8, 12, 4));
    assert!(violates_euler_bound(8, 13, 4));
    assert_eq!(hypercube(3).m(), 12);
    // a bound with a non-integer value: 5 (10 - 2)/3 = 40/3
    assert_eq!(euler_bound(10, 5).unwrap(), Ratio::new(40, 3));
    assert!(!violates_euler_bound(10, 13, 5));
    assert!(violates_euler_bound(10, 14, 5));
}

proptest! {
    #[test]
    fn euler_bound_agrees_with_integer_comparison(n in 3u64..100_000, g in 3u64..200, m in 0u64..400_000) {
        let bound = euler_bound(n, g).unwrap();
        prop_assert_eq!(bound, Ratio::new(g * (n - 2), g - 2));
        let exceeds = (m as u128) * (g as u128 - 2) > (g as u128) * (n as u128 - 2);
        prop_assert_eq!(violates_euler_bound(n as usize, m as usize, g as usize), exceeds);
    }
}

fn audit(g: &Graph, cert: &Certificate) {
    assert!(verify_certificate(g, cert).is_valid(), "{}", cert.to_text());
    assert!(!is_planar(g));
}

#[test]
fn every_certificate_found_is_sound() {
    let mut emitted = 0;
    for seed in 0..300u64 {
        let n = 5 + (seed as usize % 9);
        let g = seeded_graph(n, 0.35 + (seed % 7) as f64 * 0.08, seed);
        for horizon in 3..=6 {
            if let Some(cert) = density_certificate(&g, horizon).unwrap() {
                audit(&g, &cert);
                assert!(!brute_planar(&g));
                emitted += 1;
            }
        }
        if let Some(cert) = search_certificate(&g, 8, DEFAULT_CYCLE_BUDGET) {
            audit(&g, &cert);
            emitted += 1;
        }
    }
    for seed in 0..20 {
        let base = random_regular(3000, 12, seed).unwrap();
        let sample = percolate(&base, &SampleParams::new(2.5 / 12.0, seed, 0).unwrap());
        if let Some(cert) = search_certificate(&sample, 16, DEFAULT_CYCLE_BUDGET) {
            audit(&sample, &cert);
            emitted += 1;
        }
    }
    assert!(emitted > 200, "only {emitted} certificates");
}

#[test]
fn planar_graphs_never_get_certificates() {
    for g in planar_corpus(300, 5, is_planar) {
        assert!(search_certificate(&g, 12, DEFAULT_CYCLE_BUDGET).is_none());
    }
}
