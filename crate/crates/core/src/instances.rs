//! Named graphs and the exhaustive and random corpora.
//!
//! Vertex numbering of the named graphs:
//!
//! * `K2`, `K4`: `0..n`, all pairs.
//! * `K33`: classes `{0,1,2}` and `{3,4,5}`.
//! * `C2k(k)` (also `C6`, `C8`, ...): the cycle `0-1-...-(2k-1)-0`.
//! * `PETERSEN`: outer cycle `0-1-2-3-4`, spokes `i-(i+5)`, inner pentagram
//!   `5-7-9-6-8-5`.
//! * `PRISM`: triangles `0-1-2` and `3-4-5`, rungs `i-(i+3)`.
//! * `CUBE`: `0..8`, `u-v` when the binary labels differ in one bit.
//! * `DOUBLE_K4`: two copies of `K4` sharing the edge `0-1`; the other
//!   vertices are `2,3` and `4,5`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cut_vertices, is_connected, Graph, Vertex, VertexSet};
use crate::matching::is_matching_covered;
use crate::tightcuts::TightnessOracle;

pub const CANONICAL_NAMES: [&str; 8] = [
    "K2",
    "K4",
    "K33",
    "C2k(k)",
    "PETERSEN",
    "PRISM",
    "CUBE",
    "DOUBLE_K4",
];

/// Largest order accepted by the exhaustive labeled enumeration.
pub const EXHAUSTIVE_MAX_N: usize = 7;

/// Largest order accepted by the random sampler.
pub const RANDOM_MAX_N: usize = 24;

pub fn canonical(name: &str) -> Result<Graph> {
    let key = name.trim().to_ascii_uppercase();
    let edges: Vec<(u32, u32)> = match key.as_str() {
        "K2" => vec![(0, 1)],
        "K4" => complete(4),
        "K33" => {
            let mut e = Vec::new();
            for a in 0..3 {
                for b in 3..6 {
                    e.push((a, b));
                }
            }
            e
        }
        "PETERSEN" => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
            }
            for i in 0..5 {
                e.push((i, i + 5));
            }
            e.extend([(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]);
            e
        }
        "PRISM" => vec![
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
        "CUBE" => {
            let mut e = Vec::new();
            for u in 0..8u32 {
                for bit in 0..3 {
                    let v = u ^ (1 << bit);
                    if u < v {
                        e.push((u, v));
                    }
                }
            }
            e
        }
        "DOUBLE_K4" => vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (0, 5),
            (1, 4),
            (1, 5),
            (4, 5),
        ],
        _ => {
            let k = cycle_half_length(&key).ok_or_else(|| Error::UnknownGraph(name.to_string()))?;
            let n = 2 * k;
            return Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>());
        }
    };
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    Graph::new(n, &edges)
}

fn complete(n: u32) -> Vec<(u32, u32)> {
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            e.push((a, b));
        }
    }
    e
}

/// `C2K(k)` or `C<2k>` with `k >= 2`.
fn cycle_half_length(key: &str) -> Option<u32> {
    let k = if let Some(inner) = key.strip_prefix("C2K(").and_then(|s| s.strip_suffix(')')) {
        inner.trim().parse::<u32>().ok()?
    } else {
        let len = key.strip_prefix('C')?.parse::<u32>().ok()?;
        if len % 2 == 1 {
            return None;
        }
        len / 2
    };
    (2..=1000).contains(&k).then_some(k)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub mode: Mode,
    pub min_n: usize,
    pub max_n: usize,
    /// Graphs requested in random mode.
    pub samples: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn exhaustive(max_n: usize) -> CorpusSpec {
        CorpusSpec {
            mode: Mode::Exhaustive,
            min_n: 2,
            max_n,
            samples: 0,
            seed: 0,
        }
    }

    pub fn random(min_n: usize, max_n: usize, samples: usize, seed: u64) -> CorpusSpec {
        CorpusSpec {
            mode: Mode::Random,
            min_n,
            max_n,
            samples,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let limit = match self.mode {
            Mode::Exhaustive => EXHAUSTIVE_MAX_N,
            Mode::Random => RANDOM_MAX_N,
        };
        if self.max_n > limit {
            return Err(Error::LimitExceeded {
                what: "corpus order",
                size: self.max_n,
                limit,
            });
        }
        let lo = self.min_n.max(2);
        if lo > self.max_n || (lo..=self.max_n).all(|n| n % 2 == 1) {
            return Err(Error::precondition("no even order in the requested range"));
        }
        Ok(())
    }
}

/// The corpus as a list, in deterministic order.
pub fn enumerate_corpus(spec: &CorpusSpec) -> Result<Vec<Graph>> {
    spec.validate()?;
    let lo = spec.min_n.max(2);
    match spec.mode {
        Mode::Exhaustive => {
            let mut out = Vec::new();
            for n in (lo..=spec.max_n).filter(|n| n % 2 == 0) {
                out.extend(exhaustive_matching_covered(n));
            }
            Ok(out)
        }
        Mode::Random => {
            let orders: Vec<usize> = (lo..=spec.max_n).filter(|n| n % 2 == 0).collect();
            Ok(random_matching_covered(&orders, spec.samples, spec.seed))
        }
    }
}

/// Every labeled matching covered simple graph on `0..n`, ordered by the
/// bitmask of present edges (edge `k` is the `k`-th pair in lexicographic
/// order).
pub fn exhaustive_matching_covered(n: usize) -> Vec<Graph> {
    assert!(n <= EXHAUSTIVE_MAX_N, "exhaustive enumeration is bounded");
    let pairs = complete(n as u32);
    let m = pairs.len();
    let masks: Vec<u64> = (0..1u64 << m).collect();
    masks
        .par_iter()
        .filter_map(|&mask| {
            // fewer than n edges cannot be 2-connected unless n = 2
            if n > 2 && (mask.count_ones() as usize) < n {
                return None;
            }
            let edges: Vec<(u32, u32)> = (0..m)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| pairs[k])
                .collect();
            let g = Graph::new(n as u32, &edges).ok()?;
            (is_connected(&g) && is_matching_covered(&g)).then_some(g)
        })
        .collect()
}

/// Edge densities cycled through by the random sampler. Sparse graphs carry
/// most of the nontrivial tight cuts.
pub const DENSITY_SCHEDULE: [f64; 5] = [0.22, 0.28, 0.34, 0.42, 0.55];

/// `count` matching covered graphs with orders drawn from `orders`.
///
/// Sample `i` is drawn from one of three families by `i mod 3`: rejection
/// sampled `G(n, p)`; a splice of two smaller random matching covered graphs
/// (from order 14 on, a splice whose cut edges all touch cut vertices of the
/// shores); or a pinched graph, even blobs hanging between two hub vertices.
/// Each sample has its own stream derived from `seed`, so the output is
/// reproducible and independent of thread scheduling.
pub fn random_matching_covered(orders: &[usize], count: usize, seed: u64) -> Vec<Graph> {
    (0..count)
        .into_par_iter()
        .map(|i| sample_one(orders, seed, i as u64))
        .collect()
}

fn sample_one(orders: &[usize], seed: u64, index: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let i = index as usize;
    let n = orders[(i / 3) % orders.len()];
    let p = DENSITY_SCHEDULE[(i / (3 * orders.len())) % DENSITY_SCHEDULE.len()];
    match i % 3 {
        1 if n >= BLOCKY_MIN_N => random_blocky_splice(&mut rng, n),
        1 if n >= 6 => random_splice(&mut rng, n, p),
        2 if n >= 6 => random_pinched(&mut rng, n),
        _ => random_gnp(&mut rng, n, p),
    }
}

fn random_gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let pairs = complete(n as u32);
    loop {
        let edges: Vec<(u32, u32)> = pairs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        let Ok(g) = Graph::new(n as u32, &edges) else {
            continue;
        };
        if is_connected(&g) && is_matching_covered(&g) {
            return g;
        }
    }
}

fn random_splice(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let n1 = 2 * rng.gen_range(2..=n / 2 - 1);
        let n2 = n + 2 - n1;
        let g1 = random_gnp(rng, n1, p.max(0.3));
        let g2 = random_gnp(rng, n2, p.max(0.3));
        let h = Vertex(rng.gen_range(0..n1 as u32));
        let candidates: Vec<Vertex> = g2
            .vertices()
            .iter()
            .copied()
            .filter(|&k| g2.degree(k) == g1.degree(h))
            .collect();
        let Some(&k) = candidates.choose(rng) else {
            continue;
        };
        let mut partners = g2.neighbors(k).to_vec();
        partners.shuffle(rng);
        let Ok(g) = splice(&g1, h, &g2, k, &partners) else {
            continue;
        };
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(rng);
        let edges: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .map(|e| (perm[e.ends.0 .0 as usize], perm[e.ends.1 .0 as usize]))
            .collect();
        let Ok(g) = Graph::new(n as u32, &edges) else {
            continue;
        };
        if is_matching_covered(&g) {
            return g;
        }
    }
}

/// Hubs `0` and `1` with even blobs between them. Every blob is connected,
/// touches both hubs, and rarely sees another blob directly.
fn random_pinched(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let mut blobs: Vec<Vec<u32>> = Vec::new();
        let mut next = 2u32;
        while (next as usize) < n {
            let left = n - next as usize;
            let size = if left >= 4 && rng.gen_bool(0.35) {
                4
            } else {
                2
            };
            blobs.push((next..next + size as u32).collect());
            next += size as u32;
        }
        if blobs.len() < 2 {
            continue;
        }
        let mut edges = Vec::new();
        if rng.gen_bool(0.3) {
            edges.push((0, 1));
        }
        for blob in &blobs {
            let inner = complete(blob.len() as u32);
            let mut local: Vec<(u32, u32)>;
            loop {
                local = inner
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(0.6))
                    .collect();
                let g = Graph::new(blob.len() as u32, &local).expect("blob");
                if is_connected(&g) {
                    break;
                }
            }
            edges.extend(
                local
                    .iter()
                    .map(|&(a, b)| (blob[a as usize], blob[b as usize])),
            );
            let mut hubs = [false; 2];
            for &x in blob {
                for (hub, seen) in hubs.iter_mut().enumerate() {
                    if rng.gen_bool(0.5) {
                        edges.push((hub as u32, x));
                        *seen = true;
                    }
                }
            }
            for (hub, seen) in hubs.iter().enumerate() {
                if !seen {
                    edges.push((hub as u32, *blob.choose(rng).expect("blob")));
                }
            }
        }
        for (i, a) in blobs.iter().enumerate() {
            for b in &blobs[i + 1..] {
                if rng.gen_bool(0.06) {
                    edges.push((*a.choose(rng).expect("blob"), *b.choose(rng).expect("blob")));
                }
            }
        }
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(rng);
        let edges: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(a, b)| (perm[a as usize], perm[b as usize]))
            .collect();
        let g = Graph::new(n as u32, &edges).expect("pinched graph");
        if is_matching_covered(&g) {
            return g;
        }
    }
}

/// Smallest order at which the sampler switches to blocky splices.
pub const BLOCKY_MIN_N: usize = 14;

/// Neighbours of `h` that are not cut vertices of `g - h`.
fn loose_neighbors(g: &Graph, h: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let cv = cut_vertices(&g.without_vertices(&VertexSet::single(h)));
    g.neighbors(h).iter().partition(|v| !cv.contains(*v))
}

/// A splice whose cut edges all touch a cut vertex of one shore. Both pieces
/// have order at least 8: at order 6 every vertex `h` has at most one
/// neighbour that is a cut vertex of `g - h`, which is too few.
fn random_blocky_splice(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let n1 = 8;
    let n2 = n + 2 - n1;
    loop {
        let p = DENSITY_SCHEDULE[rng.gen_range(0..3)];
        let g1 = random_gnp(rng, n1, p);
        let Some((h, loose_h, tied_h)) = g1
            .vertices()
            .iter()
            .map(|&h| {
                let (l, t) = loose_neighbors(&g1, h);
                (h, l, t)
            })
            .filter(|(_, l, t)| 2 * l.len() <= l.len() + t.len())
            .min_by_key(|(h, l, _)| (l.len(), *h))
        else {
            continue;
        };
        let d = loose_h.len() + tied_h.len();
        for _ in 0..400 {
            let p2 = DENSITY_SCHEDULE[rng.gen_range(0..3)];
            let g2 = random_gnp(rng, n2, p2);
            let found = g2.vertices().iter().copied().find_map(|k| {
                let (l, t) = loose_neighbors(&g2, k);
                (l.len() + t.len() == d && l.len() + loose_h.len() <= d).then_some((k, l, t))
            });
            let Some((k, mut loose_k, mut tied_k)) = found else {
                continue;
            };
            loose_k.shuffle(rng);
            tied_k.shuffle(rng);
            // loose ends of h meet tied ends of k and vice versa
            let mut partner = std::collections::BTreeMap::new();
            let mut tied_h = tied_h.clone();
            tied_h.shuffle(rng);
            for &a in &loose_h {
                partner.insert(a, tied_k.pop().expect("counted"));
            }
            for &b in &loose_k {
                partner.insert(tied_h.pop().expect("counted"), b);
            }
            let rest: Vec<Vertex> = tied_k.into_iter().collect();
            for (a, b) in tied_h.into_iter().zip(rest) {
                partner.insert(a, b);
            }
            let partners: Vec<Vertex> = partner.values().copied().collect();
            let Ok(g) = splice(&g1, h, &g2, k, &partners) else {
                continue;
            };
            if !is_matching_covered(&g) || !splice_cut_is_tight(&g, n1 - 1) {
                continue;
            }
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(rng);
            let edges: Vec<(u32, u32)> = g
                .edges()
                .iter()
                .map(|e| (perm[e.ends.0 .0 as usize], perm[e.ends.1 .0 as usize]))
                .collect();
            return Graph::new(n as u32, &edges).expect("relabelled splice");
        }
    }
}

fn splice_cut_is_tight(g: &Graph, left: usize) -> bool {
    let shore: VertexSet = (0..left as u32).map(Vertex).collect();
    match (crate::graph::boundary(g, &shore), TightnessOracle::new(g)) {
        (Ok(c), Ok(oracle)) => oracle.is_tight(&c),
        _ => false,
    }
}

/// Splice of `g1` at `h` and `g2` at `k`: delete both vertices and join the
/// `i`-th neighbour of `h` (ascending) to `partners[i]`, a neighbour of `k`.
/// Vertices of `g1 - h` keep their rank order and come first; the result is
/// numbered `0..n1 + n2 - 2`. Both graphs must be simple.
pub fn splice(g1: &Graph, h: Vertex, g2: &Graph, k: Vertex, partners: &[Vertex]) -> Result<Graph> {
    let left: Vec<Vertex> = g1.vertices().iter().copied().filter(|&v| v != h).collect();
    let right: Vec<Vertex> = g2.vertices().iter().copied().filter(|&v| v != k).collect();
    let across = g1.neighbors(h).to_vec();
    let mut expected = g2.neighbors(k).to_vec();
    let mut given = partners.to_vec();
    expected.sort();
    given.sort();
    if g1.degree(h) != across.len()
        || g2.degree(k) != expected.len()
        || given != expected
        || across.len() != partners.len()
    {
        return Err(Error::precondition(
            "splice needs simple graphs and a bijection between the neighbourhoods",
        ));
    }
    let l = |v: Vertex| left.binary_search(&v).expect("left vertex") as u32;
    let r = |v: Vertex| (left.len() + right.binary_search(&v).expect("right vertex")) as u32;
    let mut edges = Vec::new();
    for e in g1.edges().iter().filter(|e| !e.touches(h)) {
        edges.push((l(e.ends.0), l(e.ends.1)));
    }
    for e in g2.edges().iter().filter(|e| !e.touches(k)) {
        edges.push((r(e.ends.0), r(e.ends.1)));
    }
    for (a, b) in across.iter().zip(partners) {
        edges.push((l(*a), r(*b)));
    }
    Graph::new((left.len() + right.len()) as u32, &edges)
}

/// One random matching covered graph of order `n`.
pub fn random_graph(n: usize, seed: u64) -> Result<Graph> {
    CorpusSpec::random(n, n, 1, seed).validate()?;
    if n % 2 == 1 {
        return Err(Error::precondition("order must be even"));
    }
    Ok(sample_one(&[n], seed, 0))
}
