//! The two-stage random bisection: label every pair at random, then
//! re-randomize each pair that is active (σ < 0) under the first labelling.

use serde::Serialize;
use thiserror::Error;

use crate::analyzer::partition::edge_partition;
use crate::graph::{Graph, GraphError, Vertex};
use crate::matching::{quasi_perfect_matching, MatchingError, QuasiPerfectMatching};
use crate::rng::coin;

pub const STAGE1: u64 = 1;
pub const STAGE2: u64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisectionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("pair index {0} is out of range")]
    NoSuchPair(usize),
}

/// A side `h(v) ∈ {0, 1}` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    h: Vec<u8>,
}

impl Labeling {
    pub fn from_sides(h: Vec<u8>) -> Self {
        assert!(h.iter().all(|&x| x <= 1), "labels are 0 or 1");
        Labeling { h }
    }

    /// Pair `i = (a, b)` gets `(h(a), h(b)) = (0, 1)` when `bits[i]` is false.
    pub fn from_pair_bits(q: &QuasiPerfectMatching, bits: &[bool]) -> Self {
        let mut h = vec![0; q.n()];
        for (p, &bit) in q.pairs().iter().zip(bits) {
            h[p.u] = u8::from(bit);
            h[p.v] = u8::from(!bit);
        }
        Labeling { h }
    }

    pub fn h(&self, v: Vertex) -> u8 {
        self.h[v]
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.h
    }

    pub fn flip_pair(&mut self, q: &QuasiPerfectMatching, i: usize) {
        let p = q.pair(i);
        self.h[p.u] ^= 1;
        self.h[p.v] ^= 1;
    }

    pub fn respects(&self, q: &QuasiPerfectMatching) -> bool {
        q.pairs().iter().all(|p| self.h[p.u] != self.h[p.v])
    }

    pub fn side_sizes(&self) -> (usize, usize) {
        let ones = self.h.iter().filter(|&&x| x == 1).count();
        (self.h.len() - ones, ones)
    }

    pub fn sides(&self) -> [Vec<Vertex>; 2] {
        let mut sides = [Vec::new(), Vec::new()];
        for (v, &x) in self.h.iter().enumerate() {
            sides[x as usize].push(v);
        }
        sides
    }

    pub fn cut_size(&self, g: &Graph) -> usize {
        g.edges().iter().filter(|&&(a, b)| self.h[a] != self.h[b]).count()
    }

    pub fn truncated(&self, n: usize) -> Labeling {
        Labeling {
            h: self.h[..n].to_vec(),
        }
    }
}

/// `σ` of pair `i`: over both endpoints, neighbours on the other side minus
/// neighbours on the same side, ignoring the pair edge itself.
pub fn sigma(g: &Graph, q: &QuasiPerfectMatching, l: &Labeling, i: usize) -> Result<i64, BisectionError> {
    if i >= q.num_pairs() {
        return Err(BisectionError::NoSuchPair(i));
    }
    let p = q.pair(i);
    let mut s = 0i64;
    for (x, partner) in [(p.u, p.v), (p.v, p.u)] {
        for &w in g.neighbors(x) {
            if w == partner {
                continue;
            }
            s += if l.h(w) != l.h(x) { 1 } else { -1 };
        }
    }
    Ok(s)
}

pub fn stage1(q: &QuasiPerfectMatching, seed: u64, run: u64) -> Labeling {
    let bits: Vec<bool> = (0..q.num_pairs()).map(|i| coin(seed, run, STAGE1, i as u64)).collect();
    Labeling::from_pair_bits(q, &bits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisectionResult {
    pub seed: u64,
    pub run: u64,
    pub stage1: Labeling,
    pub labeling: Labeling,
    pub stage1_cut: usize,
    pub cut_size: usize,
    pub stable_pairs: Vec<usize>,
    pub active_pairs: Vec<usize>,
}

#[derive(Serialize)]
struct ResultJson {
    seed: u64,
    cut_size: usize,
    stage1_cut: usize,
    sides: [Vec<Vertex>; 2],
    active_pairs: usize,
}

impl BisectionResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ResultJson {
            seed: self.seed,
            cut_size: self.cut_size,
            stage1_cut: self.stage1_cut,
            sides: self.labeling.sides(),
            active_pairs: self.active_pairs.len(),
        })
        .expect("result serializes")
    }

    /// The view on the first `n` vertices of `g`'s parity-augmented form.
    pub fn restricted(&self, g: &Graph) -> BisectionResult {
        let stage1 = self.stage1.truncated(g.n());
        let labeling = self.labeling.truncated(g.n());
        BisectionResult {
            stage1_cut: stage1.cut_size(g),
            cut_size: labeling.cut_size(g),
            stage1,
            labeling,
            ..self.clone()
        }
    }
}

/// Re-randomizes every pair with `σ < 0` under `l`; stable pairs keep their labels.
pub fn stage2(g: &Graph, q: &QuasiPerfectMatching, l: &Labeling, seed: u64, run: u64) -> BisectionResult {
    let mut out = l.clone();
    let mut stable = Vec::new();
    let mut active = Vec::new();
    for i in 0..q.num_pairs() {
        if sigma(g, q, l, i).expect("index in range") >= 0 {
            stable.push(i);
        } else {
            active.push(i);
            let p = q.pair(i);
            let bit = coin(seed, run, STAGE2, i as u64);
            out.h[p.u] = u8::from(bit);
            out.h[p.v] = u8::from(!bit);
        }
    }
    BisectionResult {
        seed,
        run,
        stage1_cut: l.cut_size(g),
        cut_size: out.cut_size(g),
        stage1: l.clone(),
        labeling: out,
        stable_pairs: stable,
        active_pairs: active,
    }
}

/// One full run of the algorithm over a fixed pairing.
pub fn run_once(g: &Graph, q: &QuasiPerfectMatching, seed: u64, run: u64) -> BisectionResult {
    let l = stage1(q, seed, run);
    stage2(g, q, &l, seed, run)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct BisectionParams {
    pub restarts: usize,
    pub seed: u64,
    pub qpm_restarts: usize,
}

impl Default for BisectionParams {
    fn default() -> Self {
        BisectionParams {
            restarts: 200,
            seed: 0,
            qpm_restarts: 16,
        }
    }
}

/// Everything a best-of-`R` run produced, on the working (even-order) graph.
#[derive(Debug, Clone)]
pub struct BisectionRun {
    pub original_n: usize,
    pub graph: Graph,
    pub qpm: QuasiPerfectMatching,
    /// Best run on the working graph.
    pub best_run: BisectionResult,
    /// `best_run` restricted to the original vertices.
    pub best: BisectionResult,
}

/// Best of `restarts` runs by cut on the original vertices, lowest run index
/// on ties. Odd-order graphs are parity-augmented first and the extra vertex
/// is dropped from the reported bisection.
pub fn run_bisection(g: &Graph, params: &BisectionParams) -> Result<BisectionRun, BisectionError> {
    let work = g.parity_augment()?;
    let qpm = quasi_perfect_matching(&work, params.seed, params.qpm_restarts)?;
    let mut best: Option<(BisectionResult, BisectionResult)> = None;
    for run in 0..params.restarts.max(1) as u64 {
        let r = run_once(&work, &qpm, params.seed, run);
        let view = r.restricted(g);
        if best.as_ref().map_or(true, |(_, b)| view.cut_size > b.cut_size) {
            best = Some((r, view));
        }
    }
    let (best_run, best) = best.expect("at least one run");
    Ok(BisectionRun {
        original_n: g.n(),
        graph: work,
        qpm,
        best_run,
        best,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunAudit {
    pub matching_edges_cut: bool,
    pub e2_half_cut: bool,
    pub balanced: bool,
    pub cut_consistent: bool,
    pub findings: Vec<String>,
}

impl RunAudit {
    pub fn passed(&self) -> bool {
        self.matching_edges_cut && self.e2_half_cut && self.balanced && self.cut_consistent
    }
}

/// Checks that (a) every pair that is an edge is cut, (b) exactly half of
/// the E₂ edges are cut, (c) the sides are equal and (d) `cut_size` matches a
/// recount.
pub fn audit_run(g: &Graph, q: &QuasiPerfectMatching, b: &BisectionResult) -> RunAudit {
    let l = &b.labeling;
    let mut findings = Vec::new();

    let uncut: Vec<_> = q
        .pairs()
        .iter()
        .filter(|p| g.has_edge(p.u, p.v) && l.h(p.u) == l.h(p.v))
        .map(|p| (p.u, p.v))
        .collect();
    if !uncut.is_empty() {
        findings.push(format!("matching edges not cut: {uncut:?}"));
    }

    let e2_half_cut = match edge_partition(g, q) {
        Ok(part) => {
            let cut = part.e2.iter().filter(|&&(a, c)| l.h(a) != l.h(c)).count();
            let ok = 2 * cut == part.e2.len();
            if !ok {
                findings.push(format!("{cut} of {} E2 edges cut", part.e2.len()));
            }
            ok
        }
        Err(e) => {
            findings.push(e.to_string());
            false
        }
    };

    let (zeros, ones) = l.side_sizes();
    if zeros != ones {
        findings.push(format!("sides have sizes {zeros} and {ones}"));
    }
    let recount = l.cut_size(g);
    if recount != b.cut_size {
        findings.push(format!("cut_size {} but recount gives {recount}", b.cut_size));
    }
    RunAudit {
        matching_edges_cut: uncut.is_empty(),
        e2_half_cut,
        balanced: zeros == ones,
        cut_consistent: recount == b.cut_size,
        findings,
    }
}
