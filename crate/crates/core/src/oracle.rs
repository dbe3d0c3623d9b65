//! Brute-force ground truth for small instances.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::analyzer::closed_form::Pij;
use crate::analyzer::partition::edge_partition;
use crate::analyzer::AnalyzerError;
use crate::bisection::{run_once, Labeling};
use crate::graph::{Graph, Vertex};
use crate::matching::QuasiPerfectMatching;
use crate::tail::Rational;

pub const BISECTION_CAP: usize = 20;
pub const MATCHING_CAP: usize = 12;
pub const PAIR_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} has size {size}, above the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error(transparent)]
    Analyzer(#[from] AnalyzerError),
}

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        return Err(OracleError::TooLarge { what, size, cap });
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Maximum bisection size and one optimal side assignment, by enumerating
/// every `⌊n/2⌋`-subset.
pub fn max_bisection_exact(g: &Graph, cap: usize) -> Result<(usize, Labeling), OracleError> {
    check_cap("vertex count", g.n(), cap.min(63))?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let half = n / 2;
    let mut s: u64 = (1u64 << half) - 1;
    let mut best: Option<(usize, u64)> = None;
    loop {
        let cut = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .map(|v| (adj[v] & all & !s).count_ones() as usize)
            .sum();
        if best.map_or(true, |(b, _)| cut > b) {
            best = Some((cut, s));
        }
        if half == 0 {
            break;
        }
        // next subset of the same size
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
        if s > all {
            break;
        }
    }
    let (size, set) = best.expect("at least one subset");
    let sides = (0..n).map(|v| (set >> v & 1) as u8).collect();
    Ok((size, Labeling::from_sides(sides)))
}

/// Maximum matching size by exhaustive search.
pub fn max_matching_exact(g: &Graph, cap: usize) -> Result<usize, OracleError> {
    check_cap("vertex count", g.n(), cap.min(63))?;
    fn go(adj: &[u64], free: u64) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = go(adj, rest);
        let mut nb = adj[v] & rest;
        while nb != 0 {
            let w = nb.trailing_zeros();
            nb &= nb - 1;
            best = best.max(1 + go(adj, rest & !(1 << w)));
        }
        best
    }
    let n = g.n();
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    Ok(go(&adjacency_masks(g), all))
}

#[derive(Serialize)]
struct ExactCutJson {
    p_cut: String,
    p_uv: String,
    q_uv: String,
    pij: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCut {
    pub p_cut: Rational,
    pub pij: Pij,
}

impl ExactCut {
    pub fn p_uv(&self) -> Rational {
        self.pij.p()
    }

    pub fn q_uv(&self) -> Rational {
        self.pij.q()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ExactCutJson {
            p_cut: self.p_cut.to_string(),
            p_uv: self.p_uv().to_string(),
            q_uv: self.q_uv().to_string(),
            pij: self.pij.to_strings(),
        })
        .expect("serializes")
    }
}

fn pair_sigma(g: &Graph, q: &QuasiPerfectMatching, h: &[u8], i: usize) -> i64 {
    let p = q.pair(i);
    [(p.u, p.v), (p.v, p.u)]
        .into_iter()
        .map(|(x, partner)| {
            g.neighbors(x)
                .iter()
                .filter(|&&w| w != partner)
                .map(|&w| if h[w] != h[x] { 1 } else { -1 })
                .sum::<i64>()
        })
        .sum()
}

/// Exact probability that the E₁ edge `uv` ends up cut, averaging over every
/// stage-1 labelling. Within a labelling, `uv` is decided when both endpoint
/// pairs are stable and is a fair coin otherwise.
pub fn cut_probability_exact(
    g: &Graph,
    q: &QuasiPerfectMatching,
    (u, v): (Vertex, Vertex),
    cap: usize,
) -> Result<ExactCut, OracleError> {
    check_cap("pair count", q.num_pairs(), cap.min(30))?;
    if !edge_partition(g, q).map_err(AnalyzerError::from)?.is_e1(u, v) {
        return Err(AnalyzerError::NotE1(u, v).into());
    }
    let (pu, pv) = (q.pair_index(u), q.pair_index(v));
    let pairs = q.num_pairs();
    let mut h = vec![0u8; g.n()];
    let mut halves = 0u64;
    let mut stable = [0u64; 4];
    for bits in 0u64..1 << pairs {
        for (i, p) in q.pairs().iter().enumerate() {
            let b = (bits >> i & 1) as u8;
            h[p.u] = b;
            h[p.v] = 1 - b;
        }
        let both = pair_sigma(g, q, &h, pu) >= 0 && pair_sigma(g, q, &h, pv) >= 0;
        if both {
            stable[(2 * h[u] + h[v]) as usize] += 1;
            if h[u] != h[v] {
                halves += 2;
            }
        } else {
            halves += 1;
        }
    }
    let total = BigInt::one() << pairs;
    let per_condition = BigInt::one() << (pairs - 2);
    Ok(ExactCut {
        p_cut: Rational::new(BigInt::from(halves), total * 2),
        pij: Pij(stable.map(|c| Rational::new(BigInt::from(c), per_condition.clone()))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Fraction of `samples` full runs (runs `0..samples` under `seed`) that cut `uv`.
pub fn estimate_cut_probability(
    g: &Graph,
    q: &QuasiPerfectMatching,
    (u, v): (Vertex, Vertex),
    samples: usize,
    seed: u64,
) -> Estimate {
    let samples = samples.max(1);
    let hits = (0..samples as u64)
        .filter(|&run| {
            let r = run_once(g, q, seed, run);
            r.labeling.h(u) != r.labeling.h(v)
        })
        .count();
    let p = hits as f64 / samples as f64;
    Estimate {
        estimate: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
    }
}
