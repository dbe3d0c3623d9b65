//! Corpus families of {C4,C6}-free graphs and special-path gadgets.

mod gadget;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use gadget::{gadget_catalogue, gadget_for_config, Gadget, GadgetRequest};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("random graph is empty after pruning vertices of degree < 2")]
    EmptyAfterPruning,
    #[error("random graph needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("gadget refused: {0}")]
    GadgetRefused(String),
}

pub fn cycle(n: usize) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(GenerateError::CycleTooShort(n));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::new(n, &edges).expect("cycle is simple"))
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).expect("path is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges).expect("complete graph is simple")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::new(leaves + 1, &edges).expect("star is simple")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("Petersen graph is simple")
}

/// `b` relabelled after `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::new(a.n() + b.n(), &edges).expect("disjoint union is simple")
}

/// Replaces every edge `uv` by a path `u - x - y - v` through two new
/// vertices, tripling the girth.
pub fn two_subdivision(g: &Graph) -> Graph {
    let mut edges = Vec::with_capacity(3 * g.m());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let x = g.n() + 2 * i;
        let y = x + 1;
        edges.extend([(u, x), (x, y), (y, v)]);
    }
    Graph::new(g.n() + 2 * g.m(), &edges).expect("subdivision is simple")
}

#[rustfmt::skip]
const TUTTE_COXETER_EDGES: [(Vertex, Vertex); 45] = [
    (0, 1), (0, 17), (0, 29), (1, 2), (1, 22), (2, 3), (2, 9), (3, 4), (3, 26),
    (4, 5), (4, 13), (5, 6), (5, 18), (6, 7), (6, 23), (7, 8), (7, 28), (8, 9),
    (8, 15), (9, 10), (10, 11), (10, 19), (11, 12), (11, 24), (12, 13), (12, 29),
    (13, 14), (14, 15), (14, 21), (15, 16), (16, 17), (16, 25), (17, 18), (18, 19),
    (19, 20), (20, 21), (20, 27), (21, 22), (22, 23), (23, 24), (24, 25), (25, 26),
    (26, 27), (27, 28), (28, 29),
];

/// The Tutte–Coxeter graph (Tutte 8-cage): 30 vertices, cubic, girth 8.
pub fn tutte_coxeter() -> Graph {
    let g = Graph::new(30, &TUTTE_COXETER_EDGES).expect("embedded edge list is simple");
    assert!(g.degree_sequence().iter().all(|&d| d == 3));
    assert!(g.is_free(&[4, 6]));
    g
}

/// Inserts edges in seeded random order, skipping any edge that would close
/// a C4 or C6, until `target_m` edges are placed or candidates run out. Then
/// vertices of degree < 2 are pruned repeatedly and the rest relabelled.
pub fn random_free_graph(n: usize, target_m: usize, seed: u64) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(GenerateError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    candidates.shuffle(&mut rng);

    let mut g = Graph::empty(n);
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if edges.len() >= target_m {
            break;
        }
        if g.has_path_of_length(u, v, 3) || g.has_path_of_length(u, v, 5) {
            continue;
        }
        edges.push((u, v));
        g = Graph::new(n, &edges).expect("candidates are distinct");
    }

    let mut alive: Vec<bool> = vec![true; n];
    loop {
        let keep: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
        let sub = g.induced(&keep);
        let low: Vec<Vertex> = (0..sub.n()).filter(|&i| sub.degree(i) < 2).collect();
        if low.is_empty() {
            return if sub.n() == 0 {
                Err(GenerateError::EmptyAfterPruning)
            } else {
                Ok(sub)
            };
        }
        for i in low {
            alive[keep[i]] = false;
        }
    }
}
