//! Classification of the non-pair edges by how many edges join their two pairs.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::matching::QuasiPerfectMatching;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pairs {pairs:?} are joined by {} edges: {edges:?}", edges.len())]
pub struct OverfullPairs {
    pub pairs: (usize, usize),
    pub edges: Vec<(Vertex, Vertex)>,
}

/// Two pairs joined by exactly two edges. In a {C4,C6}-free graph with a
/// valid pairing the two edges share the endpoint `apex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiTriangle {
    pub pairs: (usize, usize),
    pub edges: [(Vertex, Vertex); 2],
    pub apex: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePartition {
    /// Pairs that are edges of the graph.
    pub matching_edges: Vec<(Vertex, Vertex)>,
    /// Edges that are the only edge between their two pairs.
    pub e1: Vec<(Vertex, Vertex)>,
    /// Edges between two pairs joined by exactly two edges.
    pub e2: Vec<(Vertex, Vertex)>,
    pub quasi_triangles: Vec<QuasiTriangle>,
    /// Number of E₂ edges incident to each pair.
    pub pair_e2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSummary {
    pub matching_edges: usize,
    pub e1: usize,
    pub e2: usize,
    pub quasi_triangles: usize,
    pub max_pair_e2: usize,
}

impl EdgePartition {
    pub fn summary(&self) -> PartitionSummary {
        PartitionSummary {
            matching_edges: self.matching_edges.len(),
            e1: self.e1.len(),
            e2: self.e2.len(),
            quasi_triangles: self.quasi_triangles.len(),
            max_pair_e2: self.pair_e2.iter().copied().max().unwrap_or(0),
        }
    }

    pub fn is_e1(&self, a: Vertex, b: Vertex) -> bool {
        self.e1.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// Splits `E(G)` into pair edges, E₁ and E₂. Fails if two pairs are joined
/// by three or more edges.
pub fn edge_partition(g: &Graph, q: &QuasiPerfectMatching) -> Result<EdgePartition, OverfullPairs> {
    let mut matching_edges = Vec::new();
    let mut between: BTreeMap<(usize, usize), Vec<(Vertex, Vertex)>> = BTreeMap::new();
    for &(a, b) in g.edges() {
        let (pa, pb) = (q.pair_index(a), q.pair_index(b));
        if pa == pb {
            matching_edges.push((a, b));
        } else {
            between.entry((pa.min(pb), pa.max(pb))).or_default().push((a, b));
        }
    }

    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    let mut quasi_triangles = Vec::new();
    let mut pair_e2 = vec![0; q.num_pairs()];
    for (pairs, edges) in between {
        match edges.as_slice() {
            [e] => e1.push(*e),
            [x, y] => {
                let apex = [x.0, x.1].into_iter().find(|&v| v == y.0 || v == y.1);
                quasi_triangles.push(QuasiTriangle {
                    pairs,
                    edges: [*x, *y],
                    apex,
                });
                e2.extend([*x, *y]);
                pair_e2[pairs.0] += 2;
                pair_e2[pairs.1] += 2;
            }
            _ => return Err(OverfullPairs { pairs, edges }),
        }
    }
    e1.sort_unstable();
    e2.sort_unstable();
    Ok(EdgePartition {
        matching_edges,
        e1,
        e2,
        quasi_triangles,
        pair_e2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::matching::{quasi_perfect_matching, PairTag, QpmPair};

    fn m1(n: usize, list: &[(Vertex, Vertex)]) -> QuasiPerfectMatching {
        let pairs = list.iter().map(|&(a, b)| QpmPair::new(a, b, PairTag::M1)).collect();
        QuasiPerfectMatching::new(n, pairs).unwrap()
    }

    #[test]
    fn partition_examples() {
        let c8 = generators::cycle(8).unwrap();
        let q = m1(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]);
        let p = edge_partition(&c8, &q).unwrap();
        assert_eq!(p.e1.len(), 4);
        assert!(p.e2.is_empty());

        let g = Graph::new(4, &[(0, 1), (2, 3), (0, 2), (1, 2)]).unwrap();
        let p = edge_partition(&g, &m1(4, &[(0, 1), (2, 3)])).unwrap();
        assert_eq!(p.e2.len(), 2);
        assert_eq!(p.quasi_triangles.len(), 1);
        assert_eq!(p.quasi_triangles[0].apex, Some(2));
        assert_eq!(p.pair_e2, vec![2, 2]);

        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let p = edge_partition(&g, &m1(4, &[(0, 1), (2, 3)])).unwrap();
        assert_eq!(p.matching_edges.len(), 2);
        assert!(p.e1.is_empty() && p.e2.is_empty());
    }

    #[test]
    fn overfull_is_reported() {
        let k4 = generators::complete(4);
        let err = edge_partition(&k4, &m1(4, &[(0, 1), (2, 3)])).unwrap_err();
        assert_eq!(err.edges.len(), 4);
    }

    #[test]
    fn counting_on_random_free_graphs() {
        for seed in 0..20 {
            let Ok(g) = generators::random_free_graph(18, 26, seed) else {
                continue;
            };
            let Ok(g) = g.parity_augment() else { continue };
            let q = quasi_perfect_matching(&g, seed, 8).unwrap();
            let p = edge_partition(&g, &q).unwrap();
            assert_eq!(p.matching_edges.len() + p.e1.len() + p.e2.len(), g.m());
            assert!(p.e2.len() <= g.n());
            assert_eq!(p.pair_e2.iter().sum::<usize>(), 2 * p.e2.len());
            assert!(p.quasi_triangles.iter().all(|t| t.apex.is_some()));
        }
    }
}
