//! Maximum matching in general graphs (Edmonds' blossom contraction) and the
//! quasi-perfect matching `M1 ∪ M2 ∪ M3`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::rng::mix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("graph has odd order {0}; parity-augment it first")]
    OddOrder(usize),
    #[error("vertex {0} is not covered by exactly one pair")]
    NotAPartition(Vertex),
    #[error("matching leaves adjacent vertices {0} and {1} uncovered")]
    UncoveredEdge(Vertex, Vertex),
}

/// A set of vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<Vertex>>,
}

impl Matching {
    pub fn from_mates(mate: Vec<Option<Vertex>>) -> Self {
        Matching { mate }
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.mate[v]
    }

    pub fn is_covered(&self, v: Vertex) -> bool {
        self.mate[v].is_some()
    }

    /// Pairs as `(min, max)`, ascending.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| (v, w)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covered(&self) -> Vec<Vertex> {
        (0..self.mate.len()).filter(|&v| self.is_covered(v)).collect()
    }

    pub fn uncovered(&self) -> Vec<Vertex> {
        (0..self.mate.len()).filter(|&v| !self.is_covered(v)).collect()
    }

    /// Vertex-disjoint and every pair an edge of `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.mate.len() == g.n()
            && self.mate.iter().enumerate().all(|(v, m)| match m {
                None => true,
                Some(w) => self.mate[*w] == Some(v) && g.has_edge(v, *w),
            })
    }
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<Option<Vertex>>,
    parent: Vec<Option<Vertex>>,
    base: Vec<Vertex>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: Vertex, mut b: Vertex) -> Vertex {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("matched tree vertex has a parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("path to the root alternates");
            b = self.parent[m].expect("matched tree vertex has a parent");
        }
    }

    fn mark_path(&mut self, mut v: Vertex, b: Vertex, mut child: Vertex) {
        while self.base[v] != b {
            let m = self.mate[v].expect("odd vertex in a blossom is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("matched tree vertex has a parent");
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: Vertex) -> Option<Vertex> {
        let n = self.g.n();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.in_tree[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.g.neighbors(v).len() {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_even = to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_even {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.in_tree[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: Vertex) {
        loop {
            let pv = self.parent[v].expect("augmenting path is rooted");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                Some(w) => v = w,
                None => break,
            }
        }
    }

    fn run(mut self) -> Matching {
        for &(u, v) in self.g.edges() {
            if self.mate[u].is_none() && self.mate[v].is_none() {
                self.mate[u] = Some(v);
                self.mate[v] = Some(u);
            }
        }
        for root in 0..self.g.n() {
            if self.mate[root].is_none() {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
        Matching { mate: self.mate }
    }
}

/// A maximum-cardinality matching of a general graph.
pub fn maximum_matching(g: &Graph) -> Matching {
    Blossom::new(g).run()
}

/// A maximum matching found after relabelling the graph by `perm`; different
/// permutations reach different maximum matchings.
pub fn maximum_matching_permuted(g: &Graph, perm: &[Vertex]) -> Matching {
    let relabelled = maximum_matching(&g.permuted(perm));
    let mut inverse = vec![0; perm.len()];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p] = v;
    }
    let mate = (0..g.n())
        .map(|v| relabelled.mate(perm[v]).map(|w| inverse[w]))
        .collect();
    Matching { mate }
}

/// The graph `H` on the uncovered set `W`: `x ~ y` iff they share a
/// neighbour in `V(M1)`.
#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    /// `W`, ascending; local vertex `i` of `graph` is `vertices[i]`.
    pub vertices: Vec<Vertex>,
    pub graph: Graph,
    /// All common neighbours in `V(M1)` per edge, keyed by original ids.
    pub witnesses: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
}

impl AuxiliaryGraph {
    /// Edges with more than one witness (impossible when `G` is C4-free).
    pub fn ambiguous_witnesses(&self) -> Vec<(Vertex, Vertex)> {
        self.witnesses
            .iter()
            .filter(|(_, w)| w.len() > 1)
            .map(|(&e, _)| e)
            .collect()
    }
}

pub fn build_auxiliary_graph(g: &Graph, m1: &Matching) -> Result<AuxiliaryGraph, MatchingError> {
    let w = m1.uncovered();
    for (i, &a) in w.iter().enumerate() {
        for &b in &w[i + 1..] {
            if g.has_edge(a, b) {
                return Err(MatchingError::UncoveredEdge(a, b));
            }
        }
    }
    let mut witnesses = BTreeMap::new();
    let mut local_edges = Vec::new();
    for (i, &a) in w.iter().enumerate() {
        for (j, &b) in w.iter().enumerate().skip(i + 1) {
            // W is independent, so every common neighbour lies in V(M1)
            let common = g.common_neighbors(a, b);
            if !common.is_empty() {
                witnesses.insert((a, b), common);
                local_edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(w.len(), &local_edges).expect("pairs are distinct");
    Ok(AuxiliaryGraph {
        vertices: w,
        graph,
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PairTag {
    M1,
    M2,
    M3,
}

impl fmt::Display for PairTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairTag::M1 => "M1",
            PairTag::M2 => "M2",
            PairTag::M3 => "M3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpmPair {
    pub u: Vertex,
    pub v: Vertex,
    pub tag: PairTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vertex>,
}

impl QpmPair {
    pub fn new(u: Vertex, v: Vertex, tag: PairTag) -> Self {
        QpmPair {
            u,
            v,
            tag,
            witness: None,
        }
    }

    pub fn with_witness(u: Vertex, v: Vertex, z: Vertex) -> Self {
        QpmPair {
            u,
            v,
            tag: PairTag::M2,
            witness: Some(z),
        }
    }
}

/// A pairing of all vertices: a maximum matching `M1`, a matching `M2` of
/// uncovered vertices through common neighbours, and arbitrary pairs `M3`.
///
/// Construction only enforces the partition; [`verify_qpm`] audits the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPerfectMatching {
    pairs: Vec<QpmPair>,
    pair_of: Vec<usize>,
}

impl QuasiPerfectMatching {
    pub fn new(n: usize, pairs: Vec<QpmPair>) -> Result<Self, MatchingError> {
        let mut pair_of = vec![usize::MAX; n];
        for (i, p) in pairs.iter().enumerate() {
            for x in [p.u, p.v] {
                if x >= n || pair_of[x] != usize::MAX || p.u == p.v {
                    return Err(MatchingError::NotAPartition(x));
                }
                pair_of[x] = i;
            }
        }
        if let Some(v) = pair_of.iter().position(|&i| i == usize::MAX) {
            return Err(MatchingError::NotAPartition(v));
        }
        Ok(QuasiPerfectMatching { pairs, pair_of })
    }

    pub fn pairs(&self) -> &[QpmPair] {
        &self.pairs
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn n(&self) -> usize {
        self.pair_of.len()
    }

    pub fn pair_index(&self, v: Vertex) -> usize {
        self.pair_of[v]
    }

    pub fn pair(&self, i: usize) -> &QpmPair {
        &self.pairs[i]
    }

    pub fn partner(&self, v: Vertex) -> Vertex {
        let p = &self.pairs[self.pair_of[v]];
        if p.u == v {
            p.v
        } else {
            p.u
        }
    }

    pub fn tag_of(&self, v: Vertex) -> PairTag {
        self.pairs[self.pair_of[v]].tag
    }

    pub fn count(&self, tag: PairTag) -> usize {
        self.pairs.iter().filter(|p| p.tag == tag).count()
    }

    /// Index of the pair `{a, b}`, if it is one.
    pub fn find_pair(&self, a: Vertex, b: Vertex) -> Option<usize> {
        (a < self.n() && b < self.n() && self.partner(a) == b).then(|| self.pair_of[a])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.pairs).expect("pairs serialize")
    }
}

/// Builds `M1 ∪ M2 ∪ M3`. Each of `restarts` randomized maximum matchings is
/// tried as `M1` and the one with the largest `M2` wins (lowest restart index
/// on ties); leftover uncovered vertices are paired by a seeded shuffle.
pub fn quasi_perfect_matching(g: &Graph, seed: u64, restarts: usize) -> Result<QuasiPerfectMatching, MatchingError> {
    if g.n() % 2 == 1 {
        return Err(MatchingError::OddOrder(g.n()));
    }
    let mut best: Option<(usize, Matching, AuxiliaryGraph, Matching)> = None;
    for r in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, r as u64, 0x5150, 0));
        let mut perm: Vec<Vertex> = (0..g.n()).collect();
        if r > 0 {
            perm.shuffle(&mut rng);
        }
        let m1 = maximum_matching_permuted(g, &perm);
        let aux = build_auxiliary_graph(g, &m1)?;
        let m2 = maximum_matching(&aux.graph);
        if best.as_ref().map_or(true, |b| m2.len() > b.3.len()) {
            best = Some((r, m1, aux, m2));
        }
    }
    let (r, m1, aux, m2) = best.expect("at least one restart");

    let mut pairs: Vec<QpmPair> = m1
        .pairs()
        .into_iter()
        .map(|(a, b)| QpmPair::new(a, b, PairTag::M1))
        .collect();
    for (i, j) in m2.pairs() {
        let (a, b) = (aux.vertices[i], aux.vertices[j]);
        let z = aux.witnesses[&(a, b)][0];
        pairs.push(QpmPair::with_witness(a, b, z));
    }
    let mut rest: Vec<Vertex> = m2.uncovered().into_iter().map(|i| aux.vertices[i]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, r as u64, 0x3333, 1));
    rest.shuffle(&mut rng);
    for chunk in rest.chunks(2) {
        pairs.push(QpmPair::new(chunk[0], chunk[1], PairTag::M3));
    }
    QuasiPerfectMatching::new(g.n(), pairs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QpmCheck {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QpmAudit {
    pub checks: Vec<QpmCheck>,
}

impl QpmAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&QpmCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &QpmCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Audits every quasi-perfect-matching invariant on a raw pair list, plus
/// maximality of `M1` in `G` and of `M2` in the auxiliary graph.
pub fn verify_qpm(g: &Graph, pairs: &[QpmPair]) -> QpmAudit {
    let mut checks = Vec::new();
    let mut push = |name, failure: Option<String>| {
        checks.push(QpmCheck {
            name,
            passed: failure.is_none(),
            detail: failure,
        })
    };

    let mut count = vec![0usize; g.n()];
    let mut bad_vertex = None;
    for p in pairs {
        for x in [p.u, p.v] {
            if x >= g.n() {
                bad_vertex.get_or_insert(format!("pair ({}, {}) leaves the graph", p.u, p.v));
            } else {
                count[x] += 1;
            }
        }
        if p.u == p.v {
            bad_vertex.get_or_insert(format!("degenerate pair ({}, {})", p.u, p.v));
        }
    }
    if let Some(v) = count.iter().position(|&c| c != 1) {
        bad_vertex.get_or_insert(format!("vertex {v} covered {} times", count[v]));
    }
    let partition_ok = bad_vertex.is_none();
    push("partition", bad_vertex);
    if !partition_ok {
        return QpmAudit { checks };
    }

    let m1: Vec<_> = pairs.iter().filter(|p| p.tag == PairTag::M1).collect();
    push(
        "m1_edges",
        m1.iter()
            .find(|p| !g.has_edge(p.u, p.v))
            .map(|p| format!("M1 pair ({}, {}) is not an edge", p.u, p.v)),
    );

    let mut mate = vec![None; g.n()];
    for p in &m1 {
        mate[p.u] = Some(p.v);
        mate[p.v] = Some(p.u);
    }
    let m1_matching = Matching::from_mates(mate);
    let in_w = |x: Vertex| !m1_matching.is_covered(x);
    let w_edge = g.edges().iter().find(|(a, b)| in_w(*a) && in_w(*b));
    push(
        "w_independent",
        w_edge.map(|(a, b)| format!("uncovered vertices {a} and {b} are adjacent")),
    );

    let best = maximum_matching(g).len();
    push(
        "m1_maximum",
        (m1.len() != best).then(|| format!("|M1| = {} but a maximum matching has {best}", m1.len())),
    );

    let mut witness_failure = None;
    for p in pairs.iter().filter(|p| p.tag == PairTag::M2) {
        if !in_w(p.u) || !in_w(p.v) {
            witness_failure.get_or_insert(format!("M2 pair ({}, {}) not inside W", p.u, p.v));
            continue;
        }
        let common: Vec<_> = g
            .common_neighbors(p.u, p.v)
            .into_iter()
            .filter(|&z| m1_matching.is_covered(z))
            .collect();
        let msg = match (common.as_slice(), p.witness) {
            ([], _) => Some(format!("M2 pair ({}, {}) has no common neighbour", p.u, p.v)),
            ([z], Some(w)) if *z == w => None,
            ([_], _) => Some(format!("M2 pair ({}, {}) records the wrong witness", p.u, p.v)),
            (many, _) => Some(format!(
                "M2 pair ({}, {}) has {} common neighbours",
                p.u,
                p.v,
                many.len()
            )),
        };
        if let Some(m) = msg {
            witness_failure.get_or_insert(m);
        }
    }
    push("m2_witness", witness_failure);

    push(
        "m3_in_w",
        pairs
            .iter()
            .filter(|p| p.tag == PairTag::M3)
            .find(|p| !in_w(p.u) || !in_w(p.v))
            .map(|p| format!("M3 pair ({}, {}) not inside W", p.u, p.v)),
    );

    // maximality of M2 in H only makes sense once W is independent
    let m2_max = match build_auxiliary_graph(g, &m1_matching) {
        Err(_) => Some("auxiliary graph undefined".to_string()),
        Ok(aux) => {
            let m2 = pairs.iter().filter(|p| p.tag == PairTag::M2).count();
            let best = maximum_matching(&aux.graph).len();
            (m2 != best).then(|| format!("|M2| = {m2} but H has a matching of size {best}"))
        }
    };
    push("m2_maximum", m2_max);
    QpmAudit { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle;
    use proptest::prelude::*;

    #[test]
    fn maximum_matching_examples() {
        assert_eq!(maximum_matching(&generators::cycle(8).unwrap()).len(), 4);
        assert_eq!(maximum_matching(&generators::star(3)).len(), 1);
        assert_eq!(maximum_matching(&generators::petersen()).len(), 5);
        assert_eq!(maximum_matching(&Graph::empty(5)).len(), 0);
    }

    #[test]
    fn blossom_needs_contraction() {
        // triangle with a pendant on each corner: the greedy start must be repaired
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        let m = maximum_matching(&g);
        assert_eq!(m.len(), 3);
        assert!(m.is_valid_for(&g));
    }

    #[test]
    fn auxiliary_graph_examples() {
        let c8 = generators::cycle(8).unwrap();
        let aux = build_auxiliary_graph(&c8, &maximum_matching(&c8)).unwrap();
        assert_eq!(aux.vertices.len(), 0);

        // K_{1,3} with centre 0 and M1 = {0,1}
        let star = generators::star(3);
        let m1 = Matching::from_mates(vec![Some(1), Some(0), None, None]);
        let aux = build_auxiliary_graph(&star, &m1).unwrap();
        assert_eq!(aux.vertices, vec![2, 3]);
        assert_eq!(aux.graph.edges(), &[(0, 1)]);
        assert_eq!(aux.witnesses[&(2, 3)], vec![0]);

        let two = generators::disjoint_union(&star, &star);
        let m1 = Matching::from_mates(vec![Some(1), Some(0), None, None, Some(5), Some(4), None, None]);
        let aux = build_auxiliary_graph(&two, &m1).unwrap();
        assert_eq!(aux.graph.m(), 2);
        assert_eq!(aux.witnesses[&(6, 7)], vec![4]);
    }

    #[test]
    fn auxiliary_graph_rejects_non_maximal() {
        let p4 = generators::path(4);
        let m1 = Matching::from_mates(vec![None, Some(2), Some(1), None]);
        assert!(build_auxiliary_graph(&p4, &m1).is_ok());
        let m1 = Matching::from_mates(vec![None, None, Some(3), Some(2)]);
        assert_eq!(
            build_auxiliary_graph(&p4, &m1).unwrap_err(),
            MatchingError::UncoveredEdge(0, 1)
        );
    }

    #[test]
    fn qpm_examples() {
        let q = quasi_perfect_matching(&generators::cycle(8).unwrap(), 1, 16).unwrap();
        assert_eq!(q.count(PairTag::M1), 4);

        let star = generators::star(3);
        let q = quasi_perfect_matching(&star, 7, 16).unwrap();
        assert_eq!(q.count(PairTag::M1), 1);
        assert_eq!(q.count(PairTag::M2), 1);
        let m2 = q.pairs().iter().find(|p| p.tag == PairTag::M2).unwrap();
        assert_eq!(m2.witness, Some(0));
        assert!(verify_qpm(&star, q.pairs()).passed());

        assert_eq!(
            quasi_perfect_matching(&generators::cycle(5).unwrap(), 0, 4),
            Err(MatchingError::OddOrder(5))
        );
    }

    #[test]
    fn verify_qpm_flags_bad_inputs() {
        let star = generators::star(3);
        let overlapping = [QpmPair::new(0, 1, PairTag::M1), QpmPair::new(1, 2, PairTag::M1)];
        let audit = verify_qpm(&star, &overlapping);
        assert!(!audit.check("partition").unwrap().passed);

        let no_witness = [QpmPair::new(0, 1, PairTag::M1), QpmPair::with_witness(2, 3, 1)];
        let audit = verify_qpm(&star, &no_witness);
        assert!(audit.check("partition").unwrap().passed);
        assert!(!audit.check("m2_witness").unwrap().passed);

        // two disjoint edges paired across: M1 not maximum, W not independent
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let bad = [QpmPair::new(0, 1, PairTag::M1), QpmPair::new(2, 3, PairTag::M3)];
        let audit = verify_qpm(&g, &bad);
        assert!(!audit.check("w_independent").unwrap().passed);
        assert!(!audit.check("m1_maximum").unwrap().passed);
    }

    #[test]
    fn qpm_is_deterministic() {
        let g = generators::random_free_graph(20, 26, 5).unwrap();
        let g = g.parity_augment().unwrap();
        let a = quasi_perfect_matching(&g, 99, 8).unwrap();
        let b = quasi_perfect_matching(&g, 99, 8).unwrap();
        assert_eq!(a, b);
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (1usize..=10).prop_flat_map(|n| {
            let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let len = all.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
                let edges: Vec<_> = all.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
                Graph::new(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn blossom_matches_brute_force(g in small_graph()) {
            let m = maximum_matching(&g);
            prop_assert!(m.is_valid_for(&g));
            prop_assert_eq!(m.len(), oracle::max_matching_exact(&g, 12).unwrap());
        }

        #[test]
        fn permuted_matching_stays_maximum(g in small_graph(), seed in any::<u64>()) {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let m = maximum_matching_permuted(&g, &perm);
            prop_assert!(m.is_valid_for(&g));
            prop_assert_eq!(m.len(), maximum_matching(&g).len());
        }

        #[test]
        fn qpm_invariants_hold(g in small_graph(), seed in any::<u64>()) {
            prop_assume!(g.n() % 2 == 0);
            let q = quasi_perfect_matching(&g, seed, 4).unwrap();
            let audit = verify_qpm(&g, q.pairs());
            prop_assert!(audit.check("partition").unwrap().passed);
            prop_assert!(audit.check("m1_edges").unwrap().passed);
            prop_assert!(audit.check("w_independent").unwrap().passed);
            prop_assert!(audit.check("m1_maximum").unwrap().passed);
            prop_assert!(audit.check("m3_in_w").unwrap().passed);
            prop_assert!(audit.check("m2_maximum").unwrap().passed);
            if g.is_free(&[4]) {
                prop_assert!(audit.passed());
            }
        }
    }
}
