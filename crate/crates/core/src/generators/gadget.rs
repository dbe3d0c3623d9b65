//! Small graphs with a prescribed special path `u′ u v v′`: each requested
//! type is attached as its own piece and every free vertex as a matched
//! pendant edge, then the result is checked by running the analyzer on it.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GenerateError;
use crate::analyzer::special_path::{check_k_constraints, special_path, KVector};
use crate::graph::{Graph, Vertex};
use crate::matching::{verify_qpm, PairTag, QpmPair, QuasiPerfectMatching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetRequest {
    pub k: KVector,
    pub s1: usize,
    pub s2: usize,
    /// Hang a triangle on every vertex of degree below 2.
    #[serde(default)]
    pub complete_min_degree: bool,
}

impl GadgetRequest {
    pub fn new(k: KVector, s1: usize, s2: usize) -> Self {
        GadgetRequest {
            k,
            s1,
            s2,
            complete_min_degree: false,
        }
    }

    pub fn completed(self) -> Self {
        GadgetRequest {
            complete_min_degree: true,
            ..self
        }
    }
}

#[derive(Debug, Clone)]
pub struct Gadget {
    pub graph: Graph,
    pub qpm: QuasiPerfectMatching,
    /// The middle edge `uv`, with `u` first.
    pub edge: (Vertex, Vertex),
    pub request: GadgetRequest,
}

pub const MAX_K6: usize = 3;

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    pairs: Vec<QpmPair>,
}

impl Builder {
    fn vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    fn vertices<const N: usize>(&mut self) -> [Vertex; N] {
        std::array::from_fn(|_| self.vertex())
    }

    fn edge(&mut self, a: Vertex, b: Vertex) {
        self.edges.push((a, b));
    }

    fn pair(&mut self, a: Vertex, b: Vertex, tag: PairTag) {
        if tag == PairTag::M1 {
            self.edge(a, b);
        }
        self.pairs.push(QpmPair::new(a, b, tag));
    }

    /// A new vertex adjacent to every host, matched to a new pendant.
    fn matched_pendant(&mut self, hosts: &[Vertex]) -> Vertex {
        let [a, b] = self.vertices();
        for &h in hosts {
            self.edge(h, a);
        }
        self.pair(a, b, PairTag::M1);
        a
    }

    fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

fn refuse(msg: impl Into<String>) -> GenerateError {
    GenerateError::GadgetRefused(msg.into())
}

/// Builds and validates a gadget realizing `req`; vertex ids are shuffled by
/// `seed` (seed 0 keeps `u′, u, v, v′ = 0, 1, 2, 3`).
pub fn gadget_for_config(req: &GadgetRequest, seed: u64) -> Result<Gadget, GenerateError> {
    let k = &req.k;
    let matched = k.k5 == 0;
    if let Some(f) = check_k_constraints(k, matched).first() {
        return Err(refuse(format!("rule {}: {}", f.rule, f.detail)));
    }
    if k.k6 > MAX_K6 {
        return Err(refuse(format!("k6 = {} above the supported {MAX_K6}", k.k6)));
    }
    if k.k5 > 0 && k.k6 > 0 {
        return Err(refuse("k5 needs vv' outside M1 while k6 needs it inside"));
    }

    let mut b = Builder::default();
    let [u_prime, u, v, v_prime] = b.vertices();
    b.pair(u_prime, u, PairTag::M1);
    b.edge(u, v);
    b.pair(v, v_prime, if matched { PairTag::M1 } else { PairTag::M3 });

    for _ in 0..k.k11 {
        let [x, xp] = b.vertices();
        b.edge(u, x);
        b.edge(xp, v_prime);
        b.pair(x, xp, PairTag::M1);
    }
    for _ in 0..k.k21 {
        let [y, yp] = b.vertices();
        b.edge(v, y);
        b.edge(yp, u_prime);
        b.pair(y, yp, PairTag::M1);
    }
    for _ in 0..k.k23 {
        let [y, yp] = b.vertices();
        b.edge(v, y);
        b.edge(yp, u_prime);
        b.pair(y, yp, PairTag::M3);
    }
    for _ in 0..k.k3 {
        b.matched_pendant(&[u, v]);
    }
    for _ in 0..k.k4 {
        b.matched_pendant(&[u_prime, v_prime]);
    }
    for _ in 0..k.k5 {
        b.matched_pendant(&[u, v_prime]);
    }
    if k.k6 == 1 {
        let [z, zp] = b.vertices();
        b.edge(v, z);
        b.edge(zp, u);
        b.pair(z, zp, PairTag::M3);
    } else {
        for _ in 0..k.k6 {
            let [z, zp] = b.vertices();
            b.edge(v, z);
            b.edge(zp, u);
            let w = b.matched_pendant(&[z, zp]);
            b.pairs.push(QpmPair::with_witness(z, zp, w));
        }
    }
    for i in 0..req.s1 {
        b.matched_pendant(&[if i % 2 == 0 { u } else { u_prime }]);
    }
    for i in 0..req.s2 {
        b.matched_pendant(&[if i % 2 == 0 { v } else { v_prime }]);
    }
    if req.complete_min_degree {
        for x in 0..b.n {
            if b.degree(x) < 2 {
                let [p, q] = b.vertices();
                b.edge(x, p);
                b.edge(x, q);
                b.pair(p, q, PairTag::M1);
            }
        }
    }

    let mut perm: Vec<Vertex> = (0..b.n).collect();
    if seed != 0 {
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let edges: Vec<_> = b.edges.iter().map(|&(x, y)| (perm[x], perm[y])).collect();
    let pairs: Vec<_> = b
        .pairs
        .iter()
        .map(|p| QpmPair {
            u: perm[p.u],
            v: perm[p.v],
            tag: p.tag,
            witness: p.witness.map(|w| perm[w]),
        })
        .collect();
    let graph = Graph::new(b.n, &edges).expect("builder emits a simple graph");
    let edge = (perm[u], perm[v]);

    if let Some(c) = graph.forbidden_cycle(&[4, 6]) {
        return Err(refuse(format!("construction closes the cycle {c:?}")));
    }
    let audit = verify_qpm(&graph, &pairs);
    if let Some(f) = audit.failures().next() {
        return Err(refuse(format!(
            "pairing fails {}: {}",
            f.name,
            f.detail.clone().unwrap_or_default()
        )));
    }
    let qpm = QuasiPerfectMatching::new(graph.n(), pairs).expect("audited partition");
    let sp = special_path(&graph, &qpm, edge).map_err(|e| refuse(e.to_string()))?;
    if sp.swapped || !sp.is_classified() || sp.k != *k || (sp.s1, sp.s2) != (req.s1, req.s2) {
        return Err(refuse(format!(
            "analysis gives k = {:?}, s = ({}, {}), unclassified {:?}",
            sp.k, sp.s1, sp.s2, sp.types.unclassified
        )));
    }
    Ok(Gadget {
        graph,
        qpm,
        edge,
        request: *req,
    })
}

/// Every constructible gadget with at most `max_pairs` pairs, over `k11, k21,
/// k23, k3, k4, k5` in `{0, 1}`, `k6 <= MAX_K6`, `s1, s2 <= max_s`, with and
/// without completion. Refused requests are skipped.
pub fn gadget_catalogue(max_pairs: usize, max_s: usize, seed: u64) -> Vec<Gadget> {
    let mut out = Vec::new();
    for bits in 0u32..1 << 6 {
        for k6 in 0..=MAX_K6 {
            let bit = |i: u32| (bits >> i & 1) as usize;
            let k = KVector {
                k11: bit(0),
                k21: bit(1),
                k23: bit(2),
                k3: bit(3),
                k4: bit(4),
                k5: bit(5),
                k6,
                ..KVector::default()
            };
            for s1 in 0..=max_s {
                for s2 in 0..=max_s {
                    for complete in [false, true] {
                        let req = GadgetRequest {
                            k,
                            s1,
                            s2,
                            complete_min_degree: complete,
                        };
                        if let Ok(g) = gadget_for_config(&req, seed) {
                            if g.qpm.num_pairs() <= max_pairs {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
