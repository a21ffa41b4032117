//! Test-side oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use percoplanar_core::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Small = BTreeSet<(u8, u8)>;

fn key(a: u8, b: u8) -> (u8, u8) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Deletes vertices of degree <= 1 and suppresses degree-2 vertices; none
/// of these moves changes whether a K5 or K3,3 minor exists. Returns the
/// vertex count after relabelling to `0..n`.
fn reduce(edges: &mut Small) -> usize {
    loop {
        let mut deg = std::collections::BTreeMap::<u8, Vec<u8>>::new();
        for &(a, b) in edges.iter() {
            deg.entry(a).or_default().push(b);
            deg.entry(b).or_default().push(a);
        }
        let low = deg.iter().find(|(_, nb)| nb.len() <= 2);
        match low {
            None => {
                let labels: Vec<u8> = deg.keys().copied().collect();
                let relabel = |x: u8| labels.binary_search(&x).unwrap() as u8;
                *edges = edges
                    .iter()
                    .map(|&(a, b)| key(relabel(a), relabel(b)))
                    .collect();
                return labels.len();
            }
            Some((&v, nb)) => {
                let nb = nb.clone();
                edges.retain(|&(a, b)| a != v && b != v);
                if nb.len() == 2 {
                    edges.insert(key(nb[0], nb[1]));
                }
            }
        }
    }
}

fn is_k33(n: usize, edges: &Small) -> bool {
    if n != 6 || edges.len() != 9 {
        return false;
    }
    let mut side = [u8::MAX; 6];
    side[0] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            let (a, b) = (a as usize, b as usize);
            if side[a] != u8::MAX && side[b] == u8::MAX {
                side[b] = 1 - side[a];
                changed = true;
            } else if side[b] != u8::MAX && side[a] == u8::MAX {
                side[a] = 1 - side[b];
                changed = true;
            } else if side[a] != u8::MAX && side[a] == side[b] {
                return false;
            }
        }
    }
    side.iter().filter(|&&s| s == 0).count() == 3 && side.iter().all(|&s| s != u8::MAX)
}

fn has_kuratowski_minor(edges: Small, planar_seen: &mut HashSet<Small>) -> bool {
    let mut edges = edges;
    let n = reduce(&mut edges);
    if n < 5 {
        return false;
    }
    let m = edges.len();
    if m > 3 * n - 6 || (n == 5 && m == 10) || is_k33(n, &edges) {
        return true;
    }
    if planar_seen.contains(&edges) {
        return false;
    }
    for &(a, b) in &edges {
        let mut deleted = edges.clone();
        deleted.remove(&(a, b));
        if has_kuratowski_minor(deleted, planar_seen) {
            return true;
        }
        let contracted: Small = edges
            .iter()
            .filter(|&&e| e != (a, b))
            .map(|&(x, y)| {
                let x = if x == b { a } else { x };
                let y = if y == b { a } else { y };
                key(x, y)
            })
            .filter(|&(x, y)| x != y)
            .collect();
        if has_kuratowski_minor(contracted, planar_seen) {
            return true;
        }
    }
    planar_seen.insert(edges);
    false
}

/// Planarity by exhaustive K5 / K3,3 minor search. Reduced graphs already
/// known to be minor-free are remembered across calls.
#[derive(Default)]
pub struct MinorSearch {
    planar_seen: HashSet<Small>,
}

impl MinorSearch {
    pub fn is_planar(&mut self, g: &Graph) -> bool {
        assert!(g.n() <= 64, "minor search is for small graphs");
        let edges: Small = g.edges().iter().map(|&(u, v)| (u as u8, v as u8)).collect();
        !has_kuratowski_minor(edges, &mut self.planar_seen)
    }
}

pub fn brute_planar(g: &Graph) -> bool {
    MinorSearch::default().is_planar(g)
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Random planar triangulation by repeated face splitting.
pub fn random_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.push([a, b, v]);
        faces.push([b, c, v]);
        faces.push([c, a, v]);
        edges.extend([(a, v), (b, v), (c, v)]);
    }
    edges
}

/// Every simple cycle of `g` of length at most `max_len`, each once, as
/// vertex lists starting at their smallest vertex. Plain DFS; small graphs
/// only.
pub fn simple_cycles(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(
        g: &Graph,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        max_len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > start && !on_path[w] && path.len() < max_len {
                on_path[w] = true;
                path.push(w);
                extend(g, start, path, on_path, max_len, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        on_path[s] = true;
        extend(g, s, &mut vec![s], &mut on_path, max_len, &mut out);
        on_path[s] = false;
    }
    out
}

/// Shortest cycle length by exhaustive enumeration, `None` for forests.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    simple_cycles(g, g.n()).iter().map(Vec::len).min()
}

pub fn seeded_graph(n: usize, density: f64, seed: u64) -> Graph {
    use rand::SeedableRng;
    random_graph(n, density, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Pearson statistic of `counts` (indexed by edge bitmask) against the
/// product distribution with retention probability `p` on `m` edges.
pub fn chi_square_product(counts: &[u64], m: usize, p: f64) -> f64 {
    assert_eq!(counts.len(), 1 << m);
    let total: u64 = counts.iter().sum();
    counts
        .iter()
        .enumerate()
        .map(|(mask, &obs)| {
            let k = (mask as u32).count_ones() as i32;
            let prob = p.powi(k) * (1.0 - p).powi(m as i32 - k);
            let exp = prob * total as f64;
            (obs as f64 - exp).powi(2) / exp
        })
        .sum()
}

/// Bitmask of which edges of `base` survive in `sample`.
pub fn edge_mask(base: &Graph, sample: &Graph) -> usize {
    base.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| sample.has_edge(e.0, e.1))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Upper 0.001 quantiles of the chi-square distribution.
pub const CHI2_999_DF15: f64 = 37.6973;
pub const CHI2_999_DF31: f64 = 61.0983;
pub const CHI2_999_DF63: f64 = 103.4424;

fn compact(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("simple graph")
}

/// Outerplanar graph: a polygon with a random set of non-crossing chords
/// from a recursive triangulation.
pub fn random_outerplanar(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    fn split(lo: usize, hi: usize, rng: &mut ChaCha8Rng, out: &mut Vec<(usize, usize)>) {
        if hi - lo < 2 {
            return;
        }
        let mid = rng.gen_range(lo + 1..hi);
        if mid - lo >= 2 {
            out.push((lo, mid));
        }
        if hi - mid >= 2 {
            out.push((mid, hi));
        }
        split(lo, mid, rng, out);
        split(mid, hi, rng, out);
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|v| (v, v + 1)).collect();
    if n >= 3 {
        edges.push((0, n - 1));
    }
    let mut chords = Vec::new();
    split(0, n - 1, rng, &mut chords);
    chords.retain(|_| rng.gen_bool(0.7));
    edges.extend(chords);
    compact(n, &edges)
}

/// Replaces each edge by a path of random length up to `max_extra + 1`.
pub fn subdivide(g: &Graph, max_extra: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut n = g.n();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        let k = rng.gen_range(0..=max_extra);
        let mut prev = u;
        for _ in 0..k {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, v));
    }
    compact(n, &edges)
}

/// Adds random edges to a planar graph, keeping those the oracle accepts.
pub fn grow_planar(
    g: &Graph,
    attempts: usize,
    rng: &mut ChaCha8Rng,
    is_planar: impl Fn(&Graph) -> bool,
) -> Graph {
    let mut edges = g.edges().to_vec();
    let n = g.n();
    for _ in 0..attempts {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || edges.contains(&(u.min(v), u.max(v))) {
            continue;
        }
        edges.push((u.min(v), u.max(v)));
        if !is_planar(&compact(n, &edges)) {
            edges.pop();
        }
    }
    compact(n, &edges)
}

/// Mixed corpus of planar graphs: grids, random subgraphs of grids,
/// outerplanar graphs, oracle-checked incremental constructions, and
/// subdivisions of all of these.
pub fn planar_corpus(size: usize, seed: u64, is_planar: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    use percoplanar_core::generators::grid;
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let g = match out.len() % 5 {
            0 => grid(rng.gen_range(1..25), rng.gen_range(2..25)),
            1 => {
                let q = rng.gen_range(0.5..1.0);
                grid(rng.gen_range(2..25), rng.gen_range(2..25))
                    .spanning_subgraph(|_, _| rng.gen_bool(q))
            }
            2 => random_outerplanar(rng.gen_range(3..80), &mut rng),
            3 => {
                let n = rng.gen_range(4..60);
                let tri = compact(n, &random_triangulation(n, &mut rng));
                let thin = tri.spanning_subgraph(|_, _| rng.gen_bool(0.5));
                grow_planar(&thin, n, &mut rng, &is_planar)
            }
            _ => {
                let base = if rng.gen_bool(0.5) {
                    grid(rng.gen_range(2..12), rng.gen_range(2..12))
                } else {
                    random_outerplanar(rng.gen_range(3..40), &mut rng)
                };
                subdivide(&base, rng.gen_range(1..4), &mut rng)
            }
        };
        out.push(g);
    }
    out
}
